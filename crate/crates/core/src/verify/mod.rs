//! Independent cross-checks of the pipeline.
//!
//! Two checks are wired together here. The rank check compares, for a
//! component (d, k), the exact rank of the graph spanning set (as a matrix
//! of integer coefficients over the monomials in coefficient functionals,
//! fraction-free elimination) with the dimension computed by character
//! theory — the two numbers come from entirely separate code paths and must
//! agree, and in the stable range the rank must also equal the number of
//! graphs. The invariance check evaluates an invariant at a concrete element
//! ψ and at g·ψ for exact rational group elements g and requires equal
//! values.

pub mod action;
pub mod matrix;
pub mod psi;

pub use action::GroupElement;
pub use matrix::{bareiss_rank, Mat};
pub use psi::{binary_form, conic, evaluate, parse_psi, substitute_coefficients, PsiElement};

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::branching::dimension;
use crate::graphs::{GraphError, DEFAULT_VERTEX_BOUND};
use crate::scalar::Int;
use crate::umbral::{spanning_set_bounded, CMonomial, Invariant, UmbralError};
use crate::Group;

#[derive(Debug, Error, PartialEq)]
pub enum VerifyError {
    #[error(transparent)]
    Umbral(#[from] UmbralError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("element belongs to {got}, expected {expected}")]
    GroupMismatch { expected: Group, got: Group },
    #[error("multi-index length {got} does not match the {expected} coordinates")]
    LengthMismatch { expected: usize, got: usize },
    #[error("matrix has shape {rows}×{cols}, expected {expect}×{expect}")]
    BadShape { rows: usize, cols: usize, expect: usize },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("matrix fails the defining equations of {0}")]
    NotInGroup(Group),
    #[error("invariants come from different components")]
    MixedComponents,
    #[error("cannot parse element: {0}")]
    Parse(String),
    #[error("rank/dimension cross-check failed: {0}")]
    DimensionMismatch(DimensionReport),
}

/// Outcome of a rank/dimension cross-check on one component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionReport {
    pub group: Group,
    pub d: u32,
    pub k: u32,
    /// Multigraphs in the class (the size of the spanning set).
    pub graph_count: usize,
    /// Exact rank of the spanning set.
    pub rank: usize,
    /// Component dimension from character theory.
    pub dimension: u64,
    /// Whether (d, k) is in the range where the spanning set is a basis.
    pub stable: bool,
}

impl fmt::Display for DimensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} d={} k={}: graphs {}, rank {}, dimension {}{}",
            self.group,
            self.d,
            self.k,
            self.graph_count,
            self.rank,
            self.dimension,
            if self.stable { ", stable" } else { "" }
        )
    }
}

/// Exact rank of a set of invariants from one component, by fraction-free
/// elimination on the integer coefficient matrix (rows: invariants, columns:
/// the monomials occurring anywhere in the set).
pub fn span_rank(invariants: &[Invariant]) -> Result<usize, VerifyError> {
    let Some(first) = invariants.first() else {
        return Ok(0);
    };
    if invariants
        .iter()
        .any(|i| !i.group().same_as(first.group()) || i.d() != first.d() || i.k() != first.k())
    {
        return Err(VerifyError::MixedComponents);
    }
    let mut cols: BTreeMap<CMonomial, usize> = BTreeMap::new();
    for inv in invariants {
        for (m, _) in inv.poly().terms() {
            let next = cols.len();
            cols.entry(m.clone()).or_insert(next);
        }
    }
    let rows: Vec<Vec<Int>> = invariants
        .iter()
        .map(|inv| {
            let mut row = vec![Int::ZERO; cols.len()];
            for (m, c) in inv.poly().terms() {
                row[cols[m]] = c.clone();
            }
            row
        })
        .collect();
    Ok(bareiss_rank(rows))
}

/// Cross-checks one component: the spanning set's rank must equal the
/// character-theoretic dimension, and in the stable range the set must be
/// linearly independent (rank = graph count). Returns the numbers on
/// success; the failure carries them too.
pub fn verify_dimension(group: &Group, d: u32, k: u32) -> Result<DimensionReport, VerifyError> {
    verify_dimension_bounded(group, d, k, DEFAULT_VERTEX_BOUND)
}

pub fn verify_dimension_bounded(
    group: &Group,
    d: u32,
    k: u32,
    bound: usize,
) -> Result<DimensionReport, VerifyError> {
    let span = spanning_set_bounded(group, d as usize, k, bound)?;
    let invs: Vec<Invariant> = span.into_iter().map(|(_, inv)| inv).collect();
    let report = DimensionReport {
        group: *group,
        d,
        k,
        graph_count: invs.len(),
        rank: span_rank(&invs)?,
        dimension: dimension(group, d, k),
        stable: group.stable_range(d, k),
    };
    if report.rank as u64 != report.dimension || (report.stable && report.graph_count != report.rank) {
        return Err(VerifyError::DimensionMismatch(report));
    }
    Ok(report)
}

/// Runs the rank/dimension cross-check over the whole rectangle d ≤ dmax,
/// k ≤ kmax, in parallel; fails on the first mismatching component.
pub fn verify_sweep(group: &Group, dmax: u32, kmax: u32) -> Result<Vec<DimensionReport>, VerifyError> {
    verify_sweep_bounded(group, dmax, kmax, DEFAULT_VERTEX_BOUND)
}

pub fn verify_sweep_bounded(
    group: &Group,
    dmax: u32,
    kmax: u32,
    bound: usize,
) -> Result<Vec<DimensionReport>, VerifyError> {
    let cells: Vec<(u32, u32)> = (0..=dmax)
        .flat_map(|d| (0..=kmax).map(move |k| (d, k)))
        .collect();
    cells
        .into_par_iter()
        .map(|(d, k)| verify_dimension_bounded(group, d, k, bound))
        .collect()
}

/// True when the invariant takes the same value at ψ and at g·ψ.
pub fn invariance_check(
    inv: &Invariant,
    psi: &PsiElement,
    g: &GroupElement,
) -> Result<bool, VerifyError> {
    let moved = g.apply(psi)?;
    Ok(evaluate(inv, psi)? == evaluate(inv, &moved)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::umbral::spanning_set;

    fn component_invariants(group: &Group, d: usize, k: u32) -> Vec<Invariant> {
        spanning_set(group, d, k)
            .unwrap()
            .into_iter()
            .map(|(_, inv)| inv)
            .collect()
    }

    #[test]
    fn rank_matches_graph_count_in_stable_range() {
        let invs = component_invariants(&Group::gl(2), 2, 2);
        assert_eq!(invs.len(), 6);
        assert_eq!(span_rank(&invs).unwrap(), 6);
    }

    #[test]
    fn rank_collapses_below_stability() {
        // GL(1), d = k = 2: six graphs but only five independent invariants.
        let report = verify_dimension(&Group::gl(1), 2, 2).unwrap();
        assert_eq!(report.graph_count, 6);
        assert_eq!(report.rank, 5);
        assert_eq!(report.dimension, 5);
        assert!(!report.stable);
    }

    #[test]
    fn mixed_components_are_rejected() {
        let mut invs = component_invariants(&Group::gl(2), 2, 2);
        invs.extend(component_invariants(&Group::gl(2), 2, 1));
        assert_eq!(span_rank(&invs), Err(VerifyError::MixedComponents));
    }

    #[test]
    fn sweep_smoke() {
        for group in [Group::gl(2), Group::o(1), Group::sp(1)] {
            let reports = verify_sweep(&group, 2, 2).unwrap();
            assert_eq!(reports.len(), 9);
        }
    }

    #[test]
    fn empty_component_passes() {
        // Sp with d = 3, k = 1 has no admissible graphs and dimension 0.
        let report = verify_dimension(&Group::sp(1), 3, 1).unwrap();
        assert_eq!(report.graph_count, 0);
        assert_eq!(report.rank, 0);
        assert_eq!(report.dimension, 0);
    }

    #[test]
    fn invariance_against_random_elements() {
        // GL: a generic element mixing both families.
        let g = Group::gl(2);
        let psi = parse_psi("x1x2d1d2 + 3x1^2 - x2d1 + 2x2^2d2^2 + 5", &g).unwrap();
        for inv in component_invariants(&g, 2, 2) {
            for seed in 0..3 {
                let elem = GroupElement::random(g, seed);
                assert!(invariance_check(&inv, &psi, &elem).unwrap());
            }
        }

        // O(2): a conic against rotations and reflections.
        let o = Group::o(2);
        let psi = conic(&[rat(1, 1), rat(-3, 1), rat(2, 1), rat(7, 2), rat(0, 1), rat(-5, 1)]);
        for inv in component_invariants(&o, 2, 2) {
            for seed in 0..3 {
                let elem = GroupElement::random(o, seed);
                assert!(invariance_check(&inv, &psi, &elem).unwrap());
            }
        }

        // Sp(1): a binary quadratic against symplectic (= unimodular) maps.
        let sp = Group::sp(1);
        let psi = binary_form(2, &[rat(2, 1), rat(3, 1), rat(-1, 2)]);
        for inv in component_invariants(&sp, 2, 2) {
            for seed in 0..3 {
                let elem = GroupElement::random(sp, seed);
                assert!(invariance_check(&inv, &psi, &elem).unwrap());
            }
        }
    }

    #[test]
    fn double_edge_invariant_is_scaled_discriminant() {
        // The two-vertex double edge gives 8·c₍₂,₀₎c₍₀,₂₎ − 2·c₍₁,₁₎², which
        // on A·x1² + B·x1·x2 + C·x2² evaluates to −2(B² − 4AC).
        let sp = Group::sp(1);
        let invs = component_invariants(&sp, 2, 2);
        assert_eq!(invs.len(), 1);
        let (a, b, c) = (rat(3, 1), rat(5, 1), rat(-2, 1));
        let psi = binary_form(2, &[a.clone(), b.clone(), c.clone()]);
        let disc = &b * &b - rat(4, 1) * &a * &c;
        assert_eq!(evaluate(&invs[0], &psi).unwrap(), rat(-2, 1) * disc);
    }
}
