//! Multi-indices α ∈ ℕ^m: exponent vectors of monomials, the index data of
//! coefficient functionals.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::{factorial, Int};

/// A fixed-length vector of naturals. |α| is `norm()`; α! is `factorial()`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(len: usize) -> Self {
        MultiIndex(vec![0; len])
    }

    /// The standard basis index ε_pos (1 in position `pos`, zero elsewhere).
    pub fn unit(len: usize, pos: usize) -> Self {
        let mut e = vec![0; len];
        e[pos] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// |α| = Σ αᵢ.
    pub fn norm(&self) -> u32 {
        self.0.iter().sum()
    }

    /// α! = Π αᵢ!, always ≥ 1.
    pub fn factorial(&self) -> Int {
        self.0.iter().map(|&a| factorial(a)).product()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}
