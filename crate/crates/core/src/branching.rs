//! Component dimensions from symmetric-group characters.
//!
//! The dimension of the bidegree-(d, k) component of the invariant ring has
//! a closed combinatorial description: writing b(λ, μ) for the multiplicity
//! of the symmetric-group irreducible S^μ inside the restriction of the
//! general-linear irreducible V_λ of GL_d to the permutation matrices,
//!
//! - GL(n): Σ_{λ ⊢ k, ℓ(λ) ≤ min{d,n}} Σ_{μ ⊢ d} b(λ, μ)²,
//! - O(n):  Σ_{λ ⊢ 2k, ℓ(λ) ≤ min{d,n}, all rows even} b(λ, (d)),
//! - Sp(2n): Σ_{λ ⊢ 2k, ℓ(λ) ≤ min{d,2n}, all columns even} b(λ, (d)).
//!
//! b(λ, μ) is computed by exact character theory: symmetric-group characters
//! via the border-strip recurrence, GL characters at permutation eigenvalues
//! via the power-sum expansion of the Schur function, and an inner product
//! over cycle types. Everything is integer arithmetic with exactness
//! assertions on the divisions. The two character tables are memoized
//! process-wide (they are shared across d, k, and groups).

use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use num::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::partition::{partitions, Parity, Partition};
use crate::scalar::{factorial, Int};
use crate::Group;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BranchingError {
    #[error("character arguments have different sizes: |λ| = {a}, |ρ| = {b}")]
    SizeMismatch { a: u32, b: u32 },
    #[error("closed-form dimension count only implemented for GL(1) and O(1), got {0}")]
    WrongGroup(Group),
}

/// z_ν = ∏ i^{mᵢ}·mᵢ!: the centralizer order of a permutation of cycle type
/// ν. Fits in u64 comfortably for the degrees this library targets (≤ 20).
pub fn centralizer_order(nu: &Partition) -> u64 {
    assert!(nu.size() <= 20, "centralizer order would overflow u64");
    let mut z = 1u64;
    for (part, mult) in nu.multiplicities() {
        z *= (part as u64).pow(mult);
        for m in 2..=mult as u64 {
            z *= m;
        }
    }
    z
}

type CharKey = (Vec<u32>, Vec<u32>);

static SYM_CHAR_MEMO: LazyLock<Mutex<HashMap<CharKey, i64>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// χ^λ(ρ): the symmetric-group character of shape λ at cycle type ρ, by the
/// border-strip recurrence. Both arguments must partition the same number.
pub fn symmetric_character(lambda: &Partition, rho: &Partition) -> Result<i64, BranchingError> {
    if lambda.size() != rho.size() {
        return Err(BranchingError::SizeMismatch {
            a: lambda.size(),
            b: rho.size(),
        });
    }
    Ok(sym_char_inner(lambda.parts(), rho.parts()))
}

fn sym_char_inner(lambda: &[u32], rho: &[u32]) -> i64 {
    if rho.is_empty() {
        return 1; // empty shape, empty cycle type
    }
    let key = (lambda.to_vec(), rho.to_vec());
    if let Some(&v) = SYM_CHAR_MEMO.lock().unwrap().get(&key) {
        return v;
    }
    let r = rho[0];
    let rest = &rho[1..];
    let mut total = 0i64;
    // Remove a border strip of size r spanning rows i..=j: rows strictly
    // between shift up by one cell column, row j takes what remains of row i.
    for i in 0..lambda.len() {
        for j in i..lambda.len() {
            let tail = lambda[i] as i64 - r as i64 + (j as i64 - i as i64);
            if tail < 0 {
                continue;
            }
            let mut mu: Vec<u32> = Vec::with_capacity(lambda.len());
            mu.extend_from_slice(&lambda[..i]);
            for t in i..j {
                if lambda[t + 1] == 0 {
                    break;
                }
                mu.push(lambda[t + 1] - 1);
            }
            if mu.len() != j {
                continue; // a middle row hit zero: not a valid strip
            }
            mu.push(tail as u32);
            mu.extend_from_slice(&lambda[j + 1..]);
            if !mu.windows(2).all(|w| w[0] >= w[1]) {
                continue;
            }
            while mu.last() == Some(&0) {
                mu.pop();
            }
            let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
            total += sign * sym_char_inner(&mu, rest);
        }
    }
    SYM_CHAR_MEMO.lock().unwrap().insert(key, total);
    total
}

static GL_CHAR_MEMO: LazyLock<Mutex<HashMap<CharKey, Int>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The trace of a permutation of cycle type ν on the GL irreducible V_λ
/// (equivalently, the Schur function s_λ evaluated at the eigenvalues of the
/// permutation matrix). Computed through the power-sum expansion
/// s_λ = Σ_ρ χ^λ(ρ)/z_ρ · p_ρ, where p_r at a permutation of cycle type ν
/// evaluates to Σ_{s | r} s·m_s(ν). Always an integer.
pub fn gl_character(lambda: &Partition, nu: &Partition) -> Int {
    let d = nu.size();
    if lambda.len() as u32 > d {
        return Int::ZERO; // more rows than variables: the Schur function vanishes
    }
    let key = (lambda.parts().to_vec(), nu.parts().to_vec());
    if let Some(v) = GL_CHAR_MEMO.lock().unwrap().get(&key) {
        return v.clone();
    }
    let kk = lambda.size();
    let kfact = factorial(kk);
    // Power sums of the eigenvalue multiset, by exponent.
    let power_sum = |r: u32| -> i64 {
        nu.multiplicities()
            .iter()
            .filter(|&&(s, _)| r.is_multiple_of(s))
            .map(|&(s, m)| (s as i64) * (m as i64))
            .sum()
    };
    let mut total = Int::ZERO;
    for rho in partitions(kk, kk, Parity::Any, Parity::Any) {
        let chi = sym_char_inner(lambda.parts(), rho.parts());
        if chi == 0 {
            continue;
        }
        let weight = &kfact / Int::from(centralizer_order(&rho)); // k!/z_ρ, an integer
        let mut p_val = Int::from(1);
        for &r in rho.parts() {
            p_val *= Int::from(power_sum(r));
        }
        total += weight * Int::from(chi) * p_val;
    }
    assert!(
        (&total % &kfact).is_zero(),
        "GL character inner product must clear its denominator"
    );
    let result = total / kfact;
    GL_CHAR_MEMO.lock().unwrap().insert(key, result.clone());
    result
}

/// b(λ, μ): the multiplicity of S^μ in the restriction of V_λ to the
/// permutation matrices, via the character inner product
/// (1/d!) Σ_{ν ⊢ d} (d!/z_ν) · glchar(λ, ν) · χ^μ(ν).
pub fn branching_multiplicity(lambda: &Partition, mu: &Partition) -> u64 {
    let d = mu.size();
    let dfact = factorial(d);
    let mut total = Int::ZERO;
    for nu in partitions(d, d, Parity::Any, Parity::Any) {
        let glc = gl_character(lambda, &nu);
        if glc.is_zero() {
            continue;
        }
        let chi = sym_char_inner(mu.parts(), nu.parts());
        if chi == 0 {
            continue;
        }
        let weight = &dfact / Int::from(centralizer_order(&nu));
        total += weight * glc * Int::from(chi);
    }
    assert!(
        (&total % &dfact).is_zero() && !total.is_negative(),
        "branching multiplicity must be a nonnegative integer (λ = {lambda}, μ = {mu})"
    );
    (total / dfact).to_u64().expect("branching multiplicity fits u64")
}

/// Dimension of the bidegree-(d, k) component of the invariant ring.
pub fn dimension(group: &Group, d: u32, k: u32) -> u64 {
    let max_len = match group {
        Group::Gl { n } | Group::O { n } => d.min(*n),
        Group::Sp { n } => d.min(2 * n),
    };
    match group {
        Group::Gl { .. } => {
            let lambdas = partitions(k, max_len, Parity::Any, Parity::Any);
            let mus = partitions(d, d, Parity::Any, Parity::Any);
            lambdas
                .iter()
                .map(|lam| {
                    mus.iter()
                        .map(|mu| {
                            let b = branching_multiplicity(lam, mu);
                            b * b
                        })
                        .sum::<u64>()
                })
                .sum()
        }
        Group::O { .. } => partitions(2 * k, max_len, Parity::Even, Parity::Any)
            .iter()
            .map(|lam| branching_multiplicity(lam, &Partition::row(d)))
            .sum(),
        Group::Sp { .. } => partitions(2 * k, max_len, Parity::Any, Parity::Even)
            .iter()
            .map(|lam| branching_multiplicity(lam, &Partition::row(d)))
            .sum(),
    }
}

/// The full table of component dimensions for d ≤ dmax, k ≤ kmax; the
/// coefficient table of the bigraded Hilbert series.
pub fn hilbert_series(group: &Group, dmax: u32, kmax: u32) -> Vec<Vec<u64>> {
    (0..=dmax)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&d| (0..=kmax).map(|k| dimension(group, d, k)).collect())
        .collect()
}

/// Independent counts for the rank-one groups, from first principles rather
/// than character theory:
///
/// - GL(1): invariant monomials are multisets of d exponent pairs (a, b)
///   with Σa = Σb = k — counted by dynamic programming;
/// - O(1): invariant monomials are multisets of d exponents summing to 2k —
///   partitions of 2k into at most d parts.
pub fn closed_form_rank1(group: &Group, d: u32, k: u32) -> Result<u64, BranchingError> {
    match group {
        Group::Gl { n: 1 } => {
            // dp[slots][ra][rb]: multisets from the pair types enumerated so
            // far, using `slots` slots, with residual row sums (ra, rb).
            // Types are scanned in a fixed order; each contributes any
            // multiplicity, so the update is the usual unbounded-knapsack
            // sweep done once per type.
            let (d, k) = (d as usize, k as usize);
            let mut dp = vec![vec![vec![0u64; k + 1]; k + 1]; d + 1];
            dp[0][0][0] = 1;
            for a in 0..=k {
                for b in 0..=k {
                    if a == 0 && b == 0 {
                        // the (0,0) type fills leftover slots at the end
                        continue;
                    }
                    for slots in 1..=d {
                        for ra in a..=k {
                            for rb in b..=k {
                                let add = dp[slots - 1][ra - a][rb - b];
                                dp[slots][ra][rb] += add;
                            }
                        }
                    }
                }
            }
            // Any number of (0,0) pairs may pad the multiset to exactly d.
            Ok((0..=d).map(|s| dp[s][k][k]).sum())
        }
        Group::O { n: 1 } => Ok(partitions(2 * k, d, Parity::Any, Parity::Any).len() as u64),
        other => Err(BranchingError::WrongGroup(*other)),
    }
}
