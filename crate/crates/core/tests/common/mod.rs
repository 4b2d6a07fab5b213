//! Helpers shared by the integration-test targets: small exact polynomial
//! determinants and Sylvester resultants, used as independent classical
//! oracles for the discriminant identities.
#![allow(dead_code)]

use std::collections::HashMap;

use invforge_core::poly::{Poly, VarId, VarMonomial};
use invforge_core::scalar::{rat_int, Rat};

/// Polynomial with rational coefficients in anonymous numbered variables.
pub type QPoly = Poly<VarMonomial, Rat>;

pub fn qvar(id: VarId) -> QPoly {
    Poly::var(id)
}

pub fn qconst(v: i64) -> QPoly {
    Poly::constant(rat_int(v))
}

/// Determinant of a square matrix of polynomials by Laplace expansion along
/// the top remaining row, memoized on the set of surviving columns (the row
/// to expand is determined by how many columns are already consumed).
pub fn det_poly(m: &[Vec<QPoly>]) -> QPoly {
    let n = m.len();
    assert!(n <= 16, "determinant helper is sized for small matrices");
    for row in m {
        assert_eq!(row.len(), n, "matrix must be square");
    }

    fn go(m: &[Vec<QPoly>], mask: u32, memo: &mut HashMap<u32, QPoly>) -> QPoly {
        if mask == 0 {
            return Poly::one();
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let n = m.len();
        let row = n - mask.count_ones() as usize;
        let mut acc: QPoly = Poly::zero();
        let mut negate = false;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            if !m[row][col].is_zero() {
                let minor = go(m, mask & !(1 << col), memo);
                let contrib = m[row][col].mul(&minor);
                acc = if negate { acc.sub(&contrib) } else { acc.add(&contrib) };
            }
            negate = !negate;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    let mut memo = HashMap::new();
    go(m, (1u32 << n) - 1, &mut memo)
}

/// Sylvester resultant in x of two polynomials given as degree-descending
/// coefficient lists (the coefficients may themselves be polynomials in
/// other variables).
pub fn sylvester_resultant(f: &[QPoly], g: &[QPoly]) -> QPoly {
    assert!(f.len() >= 2 && g.len() >= 2, "both inputs must have positive degree");
    let df = f.len() - 1;
    let dg = g.len() - 1;
    let size = df + dg;
    let mut mat = vec![vec![QPoly::zero(); size]; size];
    for shift in 0..dg {
        for (idx, c) in f.iter().enumerate() {
            mat[shift][shift + idx] = c.clone();
        }
    }
    for shift in 0..df {
        for (idx, c) in g.iter().enumerate() {
            mat[dg + shift][shift + idx] = c.clone();
        }
    }
    det_poly(&mat)
}

/// Coefficient list (degree-descending) of the x-derivative of the
/// polynomial with coefficient list `f`.
pub fn derivative(f: &[QPoly]) -> Vec<QPoly> {
    let deg = f.len() - 1;
    (0..deg)
        .map(|i| f[i].scale(&rat_int((deg - i) as i64)))
        .collect()
}
