//! Integer partitions: labels for symmetric group characters and for the
//! highest weights appearing in the dimension formulas.

use std::fmt;

/// A weakly decreasing sequence of positive integers. The empty partition
/// (of 0) is allowed and shows up naturally at d = 0 or k = 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

/// Parity filter for partition enumeration: `Even` keeps only partitions
/// whose row lengths (or, for the column variant, conjugate row lengths)
/// are all even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Any,
    Even,
}

impl Partition {
    /// Panics if `parts` is not weakly decreasing or contains a zero;
    /// partitions are constructed from trusted combinatorial code paths.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing"
        );
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition (d); for d = 0 this is the empty partition.
    pub fn row(d: u32) -> Self {
        if d == 0 {
            Partition::empty()
        } else {
            Partition(vec![d])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Transpose of the Young diagram: conjugate(λ)_j = #{i : λᵢ ≥ j}.
    pub fn conjugate(&self) -> Partition {
        if self.0.is_empty() {
            return Partition::empty();
        }
        let mut out = Vec::with_capacity(self.0[0] as usize);
        for j in 1..=self.0[0] {
            out.push(self.0.iter().filter(|&&p| p >= j).count() as u32);
        }
        Partition(out)
    }

    /// Part multiplicities as (value, multiplicity) pairs, decreasing values.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `size` with at most `max_length` parts, in descending
/// lexicographic order, filtered by the two parity conditions.
///
/// `row_parity = Even` keeps partitions all of whose parts are even;
/// `col_parity = Even` keeps those whose conjugate has all parts even
/// (equivalently, every part value occurs an even number of times).
pub fn partitions(size: u32, max_length: u32, row_parity: Parity, col_parity: Parity) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    gen(size, size, max_length, &mut stack, &mut out);
    out.retain(|p| match row_parity {
        Parity::Any => true,
        Parity::Even => p.parts().iter().all(|&x| x % 2 == 0),
    });
    out.retain(|p| match col_parity {
        Parity::Any => true,
        Parity::Even => p.conjugate().parts().iter().all(|&x| x % 2 == 0),
    });
    out
}

fn gen(remaining: u32, max_part: u32, slots: u32, stack: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(stack.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    // Largest feasible first part first ⇒ descending lexicographic output.
    let hi = remaining.min(max_part);
    // Even with all remaining slots at value p we must be able to reach 0.
    for p in (1..=hi).rev() {
        if p * slots < remaining {
            break;
        }
        stack.push(p);
        gen(remaining - p, p, slots - 1, stack, out);
        stack.pop();
    }
}
