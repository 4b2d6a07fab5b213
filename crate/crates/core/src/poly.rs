//! Sparse multivariate polynomials over exact scalars.
//!
//! `Poly<M, C>` is generic in the monomial type so the same arithmetic core
//! serves both the symbolic x/y rings (packed variable-id monomials) and the
//! invariant ring in coefficient functionals (multisets of `CoeffVar`s, see
//! the umbral module). Terms live in a `BTreeMap` keyed by the canonical
//! monomial order, so iteration, printing, and serialization are
//! deterministic for free.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::Signed;
use num::{One, Zero};

/// Key type of a polynomial term. Implementors supply the unit monomial and
/// commutative multiplication; their `Ord` is the canonical term order.
pub trait Monomial: Ord + Clone {
    fn one() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_one(&self) -> bool;
}

pub type VarId = u32;

/// Monomial in interned variables: a sorted list of (variable-id, exponent)
/// pairs with positive exponents. Ordered by total degree first, then
/// lexicographically on the pair list (variable-id ascending breaks ties).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarMonomial {
    pairs: Vec<(VarId, u32)>,
}

impl VarMonomial {
    pub fn unit() -> Self {
        VarMonomial { pairs: Vec::new() }
    }

    pub fn var(id: VarId) -> Self {
        VarMonomial { pairs: vec![(id, 1)] }
    }

    /// Builds from possibly unsorted, possibly repeated pairs; zero
    /// exponents are dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        VarMonomial {
            pairs: map.into_iter().collect(),
        }
    }

    pub fn pairs(&self) -> &[(VarId, u32)] {
        &self.pairs
    }

    pub fn degree(&self) -> u32 {
        self.pairs.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent_of(&self, id: VarId) -> u32 {
        self.pairs
            .binary_search_by_key(&id, |&(v, _)| v)
            .map(|i| self.pairs[i].1)
            .unwrap_or(0)
    }

    pub fn to_text(&self, namer: &dyn Fn(VarId) -> String) -> String {
        if self.pairs.is_empty() {
            return String::new();
        }
        let mut parts = Vec::with_capacity(self.pairs.len());
        for &(v, e) in &self.pairs {
            if e == 1 {
                parts.push(namer(v));
            } else {
                parts.push(format!("{}^{}", namer(v), e));
            }
        }
        parts.join("*")
    }
}

impl Ord for VarMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.pairs.cmp(&other.pairs))
    }
}

impl PartialOrd for VarMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial for VarMonomial {
    fn one() -> Self {
        VarMonomial::unit()
    }

    fn mul(&self, other: &Self) -> Self {
        // Merge of two sorted pair lists.
        let mut out = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.pairs.len() && j < other.pairs.len() {
            let (va, ea) = self.pairs[i];
            let (vb, eb) = other.pairs[j];
            match va.cmp(&vb) {
                std::cmp::Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.pairs[i..]);
        out.extend_from_slice(&other.pairs[j..]);
        VarMonomial { pairs: out }
    }

    fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Sparse polynomial: monomial → nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<M: Monomial, C> {
    terms: BTreeMap<M, C>,
}

impl<M, C> Poly<M, C>
where
    M: Monomial,
    C: Zero + One + Clone + PartialEq + std::ops::Neg<Output = C>,
{
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(M::one(), c);
        }
        Poly { terms }
    }

    pub fn term(m: M, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (M, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &M) -> Option<&C> {
        self.terms.get(m)
    }

    /// Adds `c·m` in place, pruning a term that cancels to zero.
    pub fn add_term(&mut self, m: M, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Repeated multiplication with eager term collection after each factor.
    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn map_coeffs<D, F>(&self, f: F) -> Poly<M, D>
    where
        D: Zero + One + Clone + PartialEq + std::ops::Neg<Output = D>,
        F: Fn(&C) -> D,
    {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl<M, C> Poly<M, C>
where
    M: Monomial,
    C: Zero + One + Clone + PartialEq + std::ops::Neg<Output = C> + Signed + fmt::Display,
{
    /// Canonical text form: terms in descending monomial order (leading term
    /// first), coefficients in lowest terms, unit coefficients suppressed.
    pub fn to_text_with(&self, fmt_monomial: &dyn Fn(&M) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let ms = fmt_monomial(m);
            if ms.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&ms);
            } else {
                out.push_str(&format!("{mag}*{ms}"));
            }
        }
        out
    }
}

impl<C> Poly<VarMonomial, C>
where
    C: Zero + One + Clone + PartialEq + std::ops::Neg<Output = C>,
{
    pub fn var(id: VarId) -> Self {
        Self::term(VarMonomial::var(id), C::one())
    }

    /// Substitutes a polynomial for every variable.
    pub fn substitute(&self, f: &dyn Fn(VarId) -> Poly<VarMonomial, C>) -> Poly<VarMonomial, C> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for &(v, e) in m.pairs() {
                term = term.mul(&f(v).pow(e));
            }
            out = out.add(&term);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Int};

    type P = Poly<VarMonomial, Int>;

    fn x() -> P {
        P::var(0)
    }

    fn y() -> P {
        P::var(1)
    }

    #[test]
    fn additive_identities_and_cancellation() {
        let p = x().add(&y().scale(&int(3)));
        assert_eq!(P::zero().add(&p), p);
        let two_xy = P::term(VarMonomial::from_pairs([(0, 1), (1, 1)]), int(2));
        assert!(two_xy.add(&two_xy.neg()).is_zero());
        assert_eq!(x().add(&y()).add(&x().sub(&y())), x().scale(&int(2)));
    }

    #[test]
    fn multiplicative_identity_and_square() {
        let p = x().add(&y());
        assert_eq!(P::one().mul(&p), p);
        let sq = p.pow(2);
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.coeff(&VarMonomial::from_pairs([(0, 1), (1, 1)])), Some(&int(2)));
        assert_eq!(sq.coeff(&VarMonomial::from_pairs([(0, 2)])), Some(&int(1)));
    }

    #[test]
    fn distributivity_smoke() {
        let p = x().add(&y().scale(&int(2)));
        let q = x().sub(&P::one());
        let r = y().add(&x().mul(&x()));
        assert_eq!(p.add(&q).mul(&r), p.mul(&r).add(&q.mul(&r)));
    }

    #[test]
    fn graded_lex_order() {
        let m_x = VarMonomial::var(0);
        let m_y = VarMonomial::var(1);
        let m_xy = VarMonomial::from_pairs([(0, 1), (1, 1)]);
        let m_xx = VarMonomial::from_pairs([(0, 2)]);
        assert!(m_x < m_xx, "degree dominates");
        assert!(m_x < m_y, "variable id ascending");
        assert!(m_xy < m_xx, "(0,1)… before (0,2)…");
    }

    #[test]
    fn canonical_text() {
        let p = x()
            .pow(2)
            .scale(&int(4))
            .add(&x().mul(&y()).scale(&int(-2)))
            .add(&P::constant(int(1)));
        let namer = |v: VarId| if v == 0 { "x".into() } else { "y".into() };
        assert_eq!(p.to_text_with(&|m| m.to_text(&namer)), "4*x^2 - 2*x*y + 1");
        assert_eq!(P::zero().to_text_with(&|m| m.to_text(&namer)), "0");
        assert_eq!(x().neg().to_text_with(&|m| m.to_text(&namer)), "-x");
    }

    #[test]
    fn substitution_is_ring_hom() {
        // x ↦ x + y, y ↦ 2 on p = x·y + x: p ↦ (x+y)·2 + (x+y).
        let p = x().mul(&y()).add(&x());
        let image = p.substitute(&|v| {
            if v == 0 {
                x().add(&y())
            } else {
                P::constant(int(2))
            }
        });
        let expect = x().add(&y()).scale(&int(3));
        assert_eq!(image, expect);
    }
}
