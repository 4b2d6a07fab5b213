//! From multigraphs to invariants: fundamental quadratics, their graph
//! products, and the umbral substitution into coefficient functionals.
//!
//! The construction runs in two symbolic stages. First, a multigraph Γ on d
//! vertices is turned into the product s(Γ) = ∏ r_{ij}^{A_ij} of fundamental
//! quadratics — polynomials in auxiliary commuting variables x_{ℓ,j} (and
//! y_{ℓ,j} for GL), one column per vertex, one row per coordinate of the
//! defining representation. Second, the umbral operator φ collapses each
//! monomial column-by-column into a product of coefficient functionals:
//! column j with x-exponent multi-index α and y-exponent multi-index β
//! becomes α!·β!·c_{α,β}. The result is a polynomial in the c's that is
//! invariant under the group action on coefficients, and the set of all such
//! polynomials over the (d, k)-multigraph class spans the bidegree-(d, k)
//! component of the invariant ring.
//!
//! A caution on labelings in the symplectic case: relabeling the vertices of
//! Γ by σ multiplies the resulting invariant by (−1)^m, where m is the number
//! of edges σ inverts (counted with multiplicity). Graphs with a stabilizing
//! relabeling of odd inversion count therefore produce the zero polynomial;
//! the admissible graphs are exactly those producing nonzero invariants, and
//! their invariants are well-defined only up to sign unless a labeling is
//! fixed. This module computes the invariant of the labeling it is given and
//! never re-labels behind the caller's back.

use num::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{enumerate_graphs_bounded, GraphError, Multigraph, DEFAULT_VERTEX_BOUND};
use crate::multiindex::MultiIndex;
use crate::poly::{Monomial, Poly, VarId, VarMonomial};
use crate::scalar::Int;
use crate::Group;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UmbralError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("generator index pair ({i},{j}) invalid for {group}: {reason}")]
    BadIndexPair { i: u32, j: u32, group: Group, reason: &'static str },
    #[error("cannot parse invariant: {0}")]
    Parse(String),
}

// Packed variable ids for the auxiliary polynomial ring. Row ℓ and column j
// are 1-based; the y-family exists only for GL.
const Y_KIND_BIT: u32 = 1 << 20;

fn xvar(l: u32, j: u32) -> VarId {
    debug_assert!(l >= 1 && j >= 1 && l <= 1 << 10 && j <= 1 << 10);
    ((l - 1) << 10) | (j - 1)
}

fn yvar(l: u32, j: u32) -> VarId {
    Y_KIND_BIT | xvar(l, j)
}

fn decode_var(id: VarId) -> (bool, u32, u32) {
    let is_y = id & Y_KIND_BIT != 0;
    let rest = id & !Y_KIND_BIT;
    (is_y, (rest >> 10) + 1, (rest & 0x3ff) + 1)
}

/// Human-readable name of an auxiliary variable, for diagnostics.
pub fn symbolic_var_name(id: VarId) -> String {
    let (is_y, l, j) = decode_var(id);
    format!("{}[{l},{j}]", if is_y { "y" } else { "x" })
}

/// The fundamental quadratic r_{ij} attached to an edge from vertex i to
/// vertex j (1-based):
///
/// - GL(n): Σ_ℓ y_{ℓ,i}·x_{ℓ,j}, any pair including i = j;
/// - O(n): Σ_ℓ x_{ℓ,i}·x_{ℓ,j}, requires i ≤ j;
/// - Sp(2n): Σ_{ℓ=1..n} (x_{ℓ,i}·x_{ℓ+n,j} − x_{ℓ+n,i}·x_{ℓ,j}), requires
///   i < j (the pair order is the edge orientation that fixes the sign).
pub fn r_quadratic(group: &Group, i: u32, j: u32) -> Result<Poly<VarMonomial, Int>, UmbralError> {
    if i < 1 || j < 1 {
        return Err(UmbralError::BadIndexPair {
            i,
            j,
            group: *group,
            reason: "vertex indices are 1-based",
        });
    }
    let n = group.n();
    let mut p: Poly<VarMonomial, Int> = Poly::zero();
    match group {
        Group::Gl { .. } => {
            for l in 1..=n {
                p.add_term(VarMonomial::from_pairs([(yvar(l, i), 1), (xvar(l, j), 1)]), Int::from(1));
            }
        }
        Group::O { .. } => {
            if i > j {
                return Err(UmbralError::BadIndexPair {
                    i,
                    j,
                    group: *group,
                    reason: "undirected generators take i ≤ j",
                });
            }
            for l in 1..=n {
                p.add_term(VarMonomial::from_pairs([(xvar(l, i), 1), (xvar(l, j), 1)]), Int::from(1));
            }
        }
        Group::Sp { .. } => {
            if i >= j {
                return Err(UmbralError::BadIndexPair {
                    i,
                    j,
                    group: *group,
                    reason: "antisymmetric generators take i < j",
                });
            }
            for l in 1..=n {
                p.add_term(
                    VarMonomial::from_pairs([(xvar(l, i), 1), (xvar(l + n, j), 1)]),
                    Int::from(1),
                );
                p.add_term(
                    VarMonomial::from_pairs([(xvar(l + n, i), 1), (xvar(l, j), 1)]),
                    Int::from(-1),
                );
            }
        }
    }
    Ok(p)
}

/// s(Γ): the product of fundamental quadratics over the edges of Γ, with
/// multiplicities as exponents. The graph flavor must match the group.
pub fn symbolic_product(group: &Group, graph: &Multigraph) -> Result<Poly<VarMonomial, Int>, UmbralError> {
    if graph.flavor() != group.flavor() {
        return Err(GraphError::WrongFlavor {
            expected: group.flavor(),
            got: graph.flavor(),
        }
        .into());
    }
    let mut p: Poly<VarMonomial, Int> = Poly::one();
    for (i, j, m) in graph.cell_entries() {
        let r = r_quadratic(group, i as u32 + 1, j as u32 + 1)?;
        p = p.mul(&r.pow(m));
    }
    Ok(p)
}

/// One coefficient functional c_α (O, Sp) or c_{α,β} (GL): the linear
/// functional reading off a coefficient of a polynomial (-coefficient
/// differential operator) of the relevant degree. Ordered by total weight
/// |α| + |β|, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoeffVar {
    alpha: MultiIndex,
    beta: Option<MultiIndex>,
}

impl CoeffVar {
    pub fn single(alpha: MultiIndex) -> Self {
        CoeffVar { alpha, beta: None }
    }

    pub fn paired(alpha: MultiIndex, beta: MultiIndex) -> Self {
        assert_eq!(alpha.len(), beta.len(), "paired multi-indices must have equal length");
        CoeffVar { alpha, beta: Some(beta) }
    }

    pub fn alpha(&self) -> &MultiIndex {
        &self.alpha
    }

    pub fn beta(&self) -> Option<&MultiIndex> {
        self.beta.as_ref()
    }

    /// |α| + |β|: the total degree the functional inspects.
    pub fn weight(&self) -> u32 {
        self.alpha.norm() + self.beta.as_ref().map_or(0, |b| b.norm())
    }

    pub fn to_text(&self) -> String {
        match &self.beta {
            None => format!("c[{}]", self.alpha),
            Some(beta) => format!("c[{},{}]", self.alpha, beta),
        }
    }
}

impl Ord for CoeffVar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for CoeffVar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for CoeffVar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A multiset of coefficient functionals: one monomial of the invariant
/// ring. Sorted (functional, exponent) pairs; ordered by total degree, then
/// lexicographically, so polynomial printing is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CMonomial {
    factors: Vec<(CoeffVar, u32)>,
}

impl CMonomial {
    pub fn from_factors(iter: impl IntoIterator<Item = CoeffVar>) -> Self {
        let mut factors: Vec<(CoeffVar, u32)> = Vec::new();
        let mut sorted: Vec<CoeffVar> = iter.into_iter().collect();
        sorted.sort();
        for f in sorted {
            match factors.last_mut() {
                Some((g, e)) if *g == f => *e += 1,
                _ => factors.push((f, 1)),
            }
        }
        CMonomial { factors }
    }

    pub fn factors(&self) -> &[(CoeffVar, u32)] {
        &self.factors
    }

    /// Number of functionals, multiplicity counted; equals d for monomials
    /// produced by the umbral operator on d-vertex graphs.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Σ (|α| + |β|) over factors; equals 2k on the (d, k) component.
    pub fn total_weight(&self) -> u32 {
        self.factors.iter().map(|(f, e)| f.weight() * e).sum()
    }

    pub fn to_text(&self) -> String {
        self.factors
            .iter()
            .map(|(f, e)| {
                if *e == 1 {
                    f.to_text()
                } else {
                    format!("{}^{}", f.to_text(), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for CMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for CMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial for CMonomial {
    fn one() -> Self {
        CMonomial { factors: Vec::new() }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (fa, ea) = &self.factors[i];
            let (fb, eb) = &other.factors[j];
            match fa.cmp(fb) {
                std::cmp::Ordering::Less => {
                    out.push((fa.clone(), *ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((fb.clone(), *eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((fa.clone(), ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        CMonomial { factors: out }
    }

    fn is_one(&self) -> bool {
        self.factors.is_empty()
    }
}

/// The umbral operator φ applied to a polynomial of the auxiliary ring:
/// each monomial is split into its d columns; column j with x-exponents α
/// and y-exponents β (each a multi-index over the rows) contributes the
/// factor α!·β!·c_{α,β}. Isolated columns contribute c_0, the functional
/// reading the constant coefficient.
pub fn umbral_apply(group: &Group, p: &Poly<VarMonomial, Int>, d: usize) -> Poly<CMonomial, Int> {
    let m = group.index_len();
    let is_gl = group.is_gl();
    let mut out: Poly<CMonomial, Int> = Poly::zero();
    for (mono, coeff) in p.terms() {
        let mut alpha = vec![vec![0u32; m]; d];
        let mut beta = if is_gl { vec![vec![0u32; m]; d] } else { Vec::new() };
        for &(id, e) in mono.pairs() {
            let (is_y, l, j) = decode_var(id);
            assert!(
                (j as usize) <= d && (l as usize) <= m,
                "variable {} outside a {m}-row, {d}-column array",
                symbolic_var_name(id)
            );
            assert!(is_gl || !is_y, "y-variables only occur in the GL setting");
            let slot = if is_y { &mut beta[j as usize - 1] } else { &mut alpha[j as usize - 1] };
            slot[l as usize - 1] += e;
        }
        let mut scale = coeff.clone();
        let mut factors = Vec::with_capacity(d);
        for j in 0..d {
            let a = MultiIndex::new(alpha[j].clone());
            scale *= a.factorial();
            if is_gl {
                let b = MultiIndex::new(beta[j].clone());
                scale *= b.factorial();
                factors.push(CoeffVar::paired(a, b));
            } else {
                factors.push(CoeffVar::single(a));
            }
        }
        out.add_term(CMonomial::from_factors(factors), scale);
    }
    out
}

/// A polynomial in coefficient functionals, tagged with the group and the
/// bidegree (d, k) of the component it lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariant {
    group: Group,
    d: usize,
    k: u32,
    poly: Poly<CMonomial, Int>,
}

impl Invariant {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn poly(&self) -> &Poly<CMonomial, Int> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn to_text(&self) -> String {
        self.poly.to_text_with(&|m| m.to_text())
    }

    pub fn to_json(&self) -> String {
        let terms = self
            .poly
            .terms()
            .map(|(m, c)| TermJson {
                coeff: c.to_i64().unwrap_or_else(|| {
                    panic!("coefficient {c} does not fit in the 64-bit interchange format")
                }),
                factors: m
                    .factors()
                    .iter()
                    .flat_map(|(f, e)| std::iter::repeat_n(f, *e as usize))
                    .map(|f| FactorJson {
                        alpha: f.alpha().entries().to_vec(),
                        beta: f.beta().map(|b| b.entries().to_vec()),
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_string_pretty(&InvariantJson {
            group: self.group.kind_str().to_string(),
            n: self.group.n(),
            d: self.d as u32,
            k: self.k,
            terms,
        })
        .expect("invariant serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Invariant, UmbralError> {
        let parsed: InvariantJson =
            serde_json::from_str(text).map_err(|e| UmbralError::Parse(e.to_string()))?;
        let group = Group::from_kind_str(&parsed.group, parsed.n)
            .ok_or_else(|| UmbralError::Parse(format!("unknown group kind {:?}", parsed.group)))?;
        let m = group.index_len();
        let d = parsed.d as usize;
        let mut poly: Poly<CMonomial, Int> = Poly::zero();
        for term in &parsed.terms {
            if term.factors.len() != d {
                return Err(UmbralError::Parse(format!(
                    "term has {} factors, expected d = {d}",
                    term.factors.len()
                )));
            }
            let mut factors = Vec::with_capacity(d);
            for f in &term.factors {
                if f.alpha.len() != m {
                    return Err(UmbralError::Parse(format!(
                        "multi-index {:?} has length {}, expected {m}",
                        f.alpha,
                        f.alpha.len()
                    )));
                }
                let alpha = MultiIndex::new(f.alpha.clone());
                match (&f.beta, group.is_gl()) {
                    (Some(b), true) => {
                        if b.len() != m {
                            return Err(UmbralError::Parse(format!(
                                "multi-index {b:?} has length {}, expected {m}",
                                b.len()
                            )));
                        }
                        factors.push(CoeffVar::paired(alpha, MultiIndex::new(b.clone())));
                    }
                    (None, false) => factors.push(CoeffVar::single(alpha)),
                    (Some(_), false) => {
                        return Err(UmbralError::Parse(
                            "beta multi-index only valid for the GL family".into(),
                        ))
                    }
                    (None, true) => {
                        return Err(UmbralError::Parse(
                            "GL factors need both alpha and beta multi-indices".into(),
                        ))
                    }
                }
            }
            let mono = CMonomial::from_factors(factors);
            if mono.total_weight() != 2 * parsed.k {
                return Err(UmbralError::Parse(format!(
                    "term weight {} does not match 2k = {}",
                    mono.total_weight(),
                    2 * parsed.k
                )));
            }
            poly.add_term(mono, Int::from(term.coeff));
        }
        Ok(Invariant { group, d, k: parsed.k, poly })
    }
}

#[derive(Serialize, Deserialize)]
struct InvariantJson {
    group: String,
    n: u32,
    d: u32,
    k: u32,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: i64,
    factors: Vec<FactorJson>,
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    alpha: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<Vec<u32>>,
}

/// φ∘s(Γ) for the given labeled multigraph. No relabeling is performed; see
/// the module notes on the symplectic sign convention.
pub fn graph_invariant(group: &Group, graph: &Multigraph) -> Result<Invariant, UmbralError> {
    let s = symbolic_product(group, graph)?;
    Ok(Invariant {
        group: *group,
        d: graph.d(),
        k: graph.edge_count(),
        poly: umbral_apply(group, &s, graph.d()),
    })
}

/// The spanning set of the (d, k) component: the invariant of every
/// canonical multigraph in the class, paired with its graph, in enumeration
/// order. In the stable range these are linearly independent.
pub fn spanning_set(group: &Group, d: usize, k: u32) -> Result<Vec<(Multigraph, Invariant)>, UmbralError> {
    spanning_set_bounded(group, d, k, DEFAULT_VERTEX_BOUND)
}

pub fn spanning_set_bounded(
    group: &Group,
    d: usize,
    k: u32,
    bound: usize,
) -> Result<Vec<(Multigraph, Invariant)>, UmbralError> {
    let graphs = enumerate_graphs_bounded(group, d, k, bound)?;
    graphs
        .into_par_iter()
        .map(|g| graph_invariant(group, &g).map(|inv| (g, inv)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Flavor;
    use crate::scalar::int;

    fn mi(entries: &[u32]) -> MultiIndex {
        MultiIndex::new(entries.to_vec())
    }

    /// c_{α,β} as a one-factor… helper building a full d-column monomial.
    fn gl_mono(cols: &[(&[u32], &[u32])]) -> CMonomial {
        CMonomial::from_factors(cols.iter().map(|&(a, b)| CoeffVar::paired(mi(a), mi(b))))
    }

    fn single_mono(cols: &[&[u32]]) -> CMonomial {
        CMonomial::from_factors(cols.iter().map(|&a| CoeffVar::single(mi(a))))
    }

    fn gl_graph(rows: &[Vec<u32>]) -> Multigraph {
        Multigraph::from_adjacency(Flavor::DirectedLoops, rows).unwrap()
    }

    #[test]
    fn quadratic_generators() {
        // GL(2), generic edge: y_{ℓ,1}x_{ℓ,2} summed over ℓ.
        let r = r_quadratic(&Group::gl(2), 1, 2).unwrap();
        assert_eq!(r.num_terms(), 2);
        assert_eq!(
            r.coeff(&VarMonomial::from_pairs([(yvar(1, 1), 1), (xvar(1, 2), 1)])),
            Some(&int(1))
        );

        // O requires i ≤ j, Sp requires i < j.
        assert!(r_quadratic(&Group::o(2), 2, 1).is_err());
        assert!(r_quadratic(&Group::o(2), 2, 2).is_ok());
        assert!(r_quadratic(&Group::sp(1), 2, 2).is_err());

        // Sp(1): x_{1,i}x_{2,j} − x_{2,i}x_{1,j}.
        let r = r_quadratic(&Group::sp(1), 1, 2).unwrap();
        assert_eq!(
            r.coeff(&VarMonomial::from_pairs([(xvar(1, 1), 1), (xvar(2, 2), 1)])),
            Some(&int(1))
        );
        assert_eq!(
            r.coeff(&VarMonomial::from_pairs([(xvar(2, 1), 1), (xvar(1, 2), 1)])),
            Some(&int(-1))
        );
    }

    #[test]
    fn gl2_component_two_two_goldens() {
        let g = Group::gl(2);
        let e = |l: u32| -> &'static [u32] {
            if l == 1 {
                &[1, 0]
            } else {
                &[0, 1]
            }
        };
        let zero: &[u32] = &[0, 0];

        // Loops at both vertices: [x∂ₓ]² + 2[x∂ₓ][y∂_y] + [y∂_y]².
        let inv = graph_invariant(&g, &gl_graph(&[vec![1, 0], vec![0, 1]])).unwrap();
        let expect = Poly::from_terms([
            (gl_mono(&[(e(1), e(1)), (e(1), e(1))]), int(1)),
            (gl_mono(&[(e(1), e(1)), (e(2), e(2))]), int(2)),
            (gl_mono(&[(e(2), e(2)), (e(2), e(2))]), int(1)),
        ]);
        assert_eq!(inv.poly(), &expect);

        // Double loop at vertex 1: c₀·(4c_{2ε₁,2ε₁} + 2c_{(1,1),(1,1)} + 4c_{2ε₂,2ε₂}).
        let inv = graph_invariant(&g, &gl_graph(&[vec![2, 0], vec![0, 0]])).unwrap();
        let expect = Poly::from_terms([
            (gl_mono(&[(&[2, 0], &[2, 0]), (zero, zero)]), int(4)),
            (gl_mono(&[(&[1, 1], &[1, 1]), (zero, zero)]), int(2)),
            (gl_mono(&[(&[0, 2], &[0, 2]), (zero, zero)]), int(4)),
        ]);
        assert_eq!(inv.poly(), &expect);

        // Opposite arcs 1→2 and 2→1: [x∂ₓ]² + 2[x∂_y][y∂ₓ] + [y∂_y]².
        let inv = graph_invariant(&g, &gl_graph(&[vec![0, 1], vec![1, 0]])).unwrap();
        let expect = Poly::from_terms([
            (gl_mono(&[(e(1), e(1)), (e(1), e(1))]), int(1)),
            (gl_mono(&[(e(1), e(2)), (e(2), e(1))]), int(2)),
            (gl_mono(&[(e(2), e(2)), (e(2), e(2))]), int(1)),
        ]);
        assert_eq!(inv.poly(), &expect);

        // The full component: six distinct nonzero invariants of bidegree (2,2).
        let span = spanning_set(&g, 2, 2).unwrap();
        assert_eq!(span.len(), 6);
        for (graph, inv) in &span {
            assert_eq!(inv.d(), 2);
            assert_eq!(inv.k(), 2);
            assert_eq!(graph.edge_count(), 2);
            assert!(!inv.is_zero());
        }
        let polys: Vec<_> = span.iter().map(|(_, i)| i.poly().clone()).collect();
        for a in 0..polys.len() {
            for b in a + 1..polys.len() {
                assert_ne!(polys[a], polys[b]);
            }
        }
    }

    #[test]
    fn rank_four_product_and_single_monomial_image() {
        // Three vertices, edges 1→2, 2→3 (twice), 3→2, 3→3.
        let g = Group::gl(4);
        let graph = gl_graph(&[vec![0, 1, 0], vec![0, 0, 2], vec![0, 1, 1]]);
        let s = symbolic_product(&g, &graph).unwrap();
        assert_eq!(s.num_terms(), 640);

        // One monomial: x_{2,2}·x_{3,2}·x_{4,3}³·y_{2,1}·y_{4,2}²·y_{3,3}·y_{4,3}.
        let mono = VarMonomial::from_pairs([
            (xvar(2, 2), 1),
            (xvar(3, 2), 1),
            (xvar(4, 3), 3),
            (yvar(2, 1), 1),
            (yvar(4, 2), 2),
            (yvar(3, 3), 1),
            (yvar(4, 3), 1),
        ]);
        assert_eq!(s.coeff(&mono), Some(&int(1)));

        // Column extraction: α₁ = 0, β₁ = ε₂; α₂ = ε₂+ε₃, β₂ = 2ε₄;
        // α₃ = 3ε₄, β₃ = ε₃+ε₄. Scaling 0!·1!·1!·2!·3!·1! = 12.
        let image = umbral_apply(&g, &Poly::term(mono, int(1)), 3);
        let expect = Poly::term(
            gl_mono(&[
                (&[0, 0, 0, 0], &[0, 1, 0, 0]),
                (&[0, 1, 1, 0], &[0, 0, 0, 2]),
                (&[0, 0, 0, 3], &[0, 0, 1, 1]),
            ]),
            int(12),
        );
        assert_eq!(image, expect);
    }

    #[test]
    fn symplectic_triangle_with_doubled_side() {
        // Sp(2), vertices {1,2,3}, A₁₂ = 1, A₁₃ = 2, A₂₃ = 1.
        let g = Group::sp(1);
        let graph =
            Multigraph::from_edges(Flavor::UndirectedLoopless, 3, &[(1, 2, 1), (1, 3, 2), (2, 3, 1)])
                .unwrap();
        let inv = graph_invariant(&g, &graph).unwrap();
        assert_eq!(inv.k(), 4);
        let expect = Poly::from_terms([
            (single_mono(&[&[1, 2], &[1, 2], &[2, 0]]), int(16)),
            (single_mono(&[&[1, 1], &[1, 2], &[2, 1]]), int(-8)),
            (single_mono(&[&[0, 3], &[2, 0], &[2, 1]]), int(-48)),
            (single_mono(&[&[0, 2], &[2, 1], &[2, 1]]), int(16)),
            (single_mono(&[&[0, 3], &[1, 1], &[3, 0]]), int(72)),
            (single_mono(&[&[0, 2], &[1, 2], &[3, 0]]), int(-48)),
        ]);
        assert_eq!(inv.poly(), &expect);
    }

    #[test]
    fn rank_one_closed_forms() {
        // GL(1): a digraph's invariant is the single monomial
        // ∏_j indeg_j!·outdeg_j!·c_{(indeg_j),(outdeg_j)}.
        let g = Group::gl(1);
        for rows in [
            vec![vec![0, 1, 0], vec![0, 0, 2], vec![0, 1, 1]],
            vec![vec![3, 0], vec![1, 0]],
            vec![vec![2]],
        ] {
            let graph = gl_graph(&rows);
            let inv = graph_invariant(&g, &graph).unwrap();
            let ins = graph.in_degrees();
            let outs = graph.out_degrees();
            let mut scale = int(1);
            let mut factors = Vec::new();
            for j in 0..graph.d() {
                scale *= crate::scalar::factorial(ins[j]) * crate::scalar::factorial(outs[j]);
                factors.push(CoeffVar::paired(mi(&[ins[j]]), mi(&[outs[j]])));
            }
            let expect = Poly::term(CMonomial::from_factors(factors), scale);
            assert_eq!(inv.poly(), &expect, "graph {graph}");
        }

        // O(1): ∏_j deg_j!·c_{(deg_j)} with loops counted twice.
        let g = Group::o(1);
        for edges in [vec![(1u32, 2u32, 1u32), (2, 3, 2)], vec![(1, 1, 1), (1, 2, 1)]] {
            let d = 3;
            let graph = Multigraph::from_edges(Flavor::UndirectedLoops, d, &edges).unwrap();
            let inv = graph_invariant(&g, &graph).unwrap();
            let degs = graph.degrees_loops_twice();
            let mut scale = int(1);
            let mut factors = Vec::new();
            for &deg in &degs {
                scale *= crate::scalar::factorial(deg);
                factors.push(CoeffVar::single(mi(&[deg])));
            }
            assert_eq!(inv.poly(), &Poly::term(CMonomial::from_factors(factors), scale));
        }
    }

    #[test]
    fn empty_graph_and_single_loop() {
        // Empty graph on d vertices: c₀^d.
        for group in [Group::gl(2), Group::o(3), Group::sp(2)] {
            let d = 3;
            let graph = Multigraph::empty(group.flavor(), d);
            let inv = graph_invariant(&group, &graph).unwrap();
            let zero = MultiIndex::zero(group.index_len());
            let c0 = if group.is_gl() {
                CoeffVar::paired(zero.clone(), zero)
            } else {
                CoeffVar::single(zero)
            };
            let expect = Poly::term(CMonomial::from_factors(vec![c0; d]), int(1));
            assert_eq!(inv.poly(), &expect);
            assert_eq!(inv.k(), 0);
        }

        // GL(3) single loop on one vertex: Σ_ℓ c_{ε_ℓ,ε_ℓ}.
        let g = Group::gl(3);
        let inv = graph_invariant(&g, &gl_graph(&[vec![1]])).unwrap();
        assert_eq!(inv.poly().num_terms(), 3);
        for l in 0..3 {
            let unit = MultiIndex::unit(3, l);
            let mono = CMonomial::from_factors([CoeffVar::paired(unit.clone(), unit)]);
            assert_eq!(inv.poly().coeff(&mono), Some(&int(1)));
        }
    }

    #[test]
    fn inadmissible_symplectic_graphs_vanish() {
        // Over every labeled loopless graph with d ≤ 3, k ≤ 4 the invariant
        // is zero exactly when some stabilizing relabeling inverts an odd
        // number of edges.
        let g = Group::sp(1);
        for k in 0..=4u32 {
            for a12 in 0..=k {
                for a13 in 0..=k - a12 {
                    let a23 = k - a12 - a13;
                    let graph = Multigraph::from_edges(
                        Flavor::UndirectedLoopless,
                        3,
                        &[(1, 2, a12), (1, 3, a13), (2, 3, a23)],
                    )
                    .unwrap();
                    let inv = graph_invariant(&g, &graph).unwrap();
                    assert_eq!(
                        inv.is_zero(),
                        !graph.sp_admissible().unwrap(),
                        "graph {graph}"
                    );
                }
            }
        }
    }

    #[test]
    fn text_and_json_round_trip() {
        let g = Group::o(1);
        let graph = Multigraph::from_edges(Flavor::UndirectedLoops, 2, &[(1, 2, 1)]).unwrap();
        let inv = graph_invariant(&g, &graph).unwrap();
        assert_eq!(inv.to_text(), "c[(1)]^2");

        for (group, d, k) in [(Group::gl(2), 2, 2), (Group::sp(1), 3, 4), (Group::o(2), 3, 2)] {
            for (_, inv) in spanning_set(&group, d, k).unwrap() {
                let back = Invariant::from_json(&inv.to_json()).unwrap();
                assert_eq!(back, inv);
            }
        }

        assert!(Invariant::from_json("{\"group\":\"gl\"}").is_err());
        // weight mismatch: k says 1 but the factors carry weight 0
        let bad = r#"{"group":"o","n":1,"d":1,"k":1,"terms":[{"coeff":1,"factors":[{"alpha":[0]}]}]}"#;
        assert!(Invariant::from_json(bad).is_err());
    }

    #[test]
    fn spanning_sets_match_enumeration() {
        let g = Group::sp(1);
        let span = spanning_set(&g, 3, 4).unwrap();
        let graphs = crate::graphs::enumerate_graphs(&g, 3, 4).unwrap();
        assert_eq!(span.len(), graphs.len());
        for ((sg, inv), eg) in span.iter().zip(&graphs) {
            assert_eq!(sg, eg);
            assert!(!inv.is_zero(), "admissible graphs produce nonzero invariants");
            assert_eq!(inv.k(), 4);
        }
    }
}
