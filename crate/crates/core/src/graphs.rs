//! Multigraphs up to isomorphism: the index sets of the graph-invariant
//! spanning sets.
//!
//! Three flavors, one per group family: directed with loops (GL), undirected
//! with loops (O), and undirected loopless (Sp). The Sp class additionally
//! requires every stabilizing vertex permutation to invert an even number of
//! edges (counted with multiplicity) — otherwise the associated invariant
//! vanishes identically.
//!
//! Canonicalization is brute force over all d! relabelings, gated by a vertex
//! bound (default 8, the CLI can override); enumeration fills adjacency cells
//! with running-sum pruning and keeps the canonical representatives. An
//! independent Burnside orbit count cross-checks the enumeration, with a
//! (−1)^inversions weighting in the loopless flavor that counts exactly the
//! admissible classes.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Group;

/// Upper bound on vertex count for the d!-exhaustive operations.
pub const DEFAULT_VERTEX_BOUND: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    DirectedLoops,
    UndirectedLoops,
    UndirectedLoopless,
}

impl Flavor {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flavor::DirectedLoops => "directed-loops",
            Flavor::UndirectedLoops => "undirected-loops",
            Flavor::UndirectedLoopless => "undirected-loopless",
        }
    }

    pub fn from_str_name(s: &str) -> Option<Flavor> {
        match s {
            "directed-loops" => Some(Flavor::DirectedLoops),
            "undirected-loops" => Some(Flavor::UndirectedLoops),
            "undirected-loopless" => Some(Flavor::UndirectedLoopless),
            _ => None,
        }
    }

    pub fn directed(&self) -> bool {
        matches!(self, Flavor::DirectedLoops)
    }

    pub fn loops_allowed(&self) -> bool {
        !matches!(self, Flavor::UndirectedLoopless)
    }

    fn cell_count(&self, d: usize) -> usize {
        match self {
            Flavor::DirectedLoops => d * d,
            Flavor::UndirectedLoops => d * (d + 1) / 2,
            Flavor::UndirectedLoopless => d * d.saturating_sub(1) / 2,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {d} vertices, above the exhaustive-search bound {bound}")]
    VertexBoundExceeded { d: usize, bound: usize },
    #[error("operation requires flavor {expected}, got {got}")]
    WrongFlavor { expected: Flavor, got: Flavor },
    #[error("edge ({i},{j}) out of range for {d} vertices (vertices are 1-based)")]
    EdgeOutOfRange { i: u32, j: u32, d: u32 },
    #[error("loop at vertex {v} not allowed in flavor {flavor}")]
    LoopNotAllowed { v: u32, flavor: Flavor },
    #[error("cannot parse graph: {0}")]
    Parse(String),
}

/// A multigraph of one of the three flavors, stored as the flattened cell
/// vector of its adjacency data (full matrix, upper triangle with diagonal,
/// or strict upper triangle, row-major).
///
/// Vertices are 0-based in the programmatic API; the edge-list and text/JSON
/// interchange formats are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    flavor: Flavor,
    d: usize,
    cells: Vec<u32>,
}

impl Multigraph {
    pub fn empty(flavor: Flavor, d: usize) -> Self {
        Multigraph {
            flavor,
            d,
            cells: vec![0; flavor.cell_count(d)],
        }
    }

    /// Builds from a 1-based edge list `(i, j, multiplicity)`. Repeated
    /// entries accumulate; zero multiplicities are allowed and ignored.
    pub fn from_edges(flavor: Flavor, d: usize, edges: &[(u32, u32, u32)]) -> Result<Self, GraphError> {
        let mut g = Multigraph::empty(flavor, d);
        for &(i, j, m) in edges {
            if i < 1 || j < 1 || i as usize > d || j as usize > d {
                return Err(GraphError::EdgeOutOfRange { i, j, d: d as u32 });
            }
            let (a, b) = (i as usize - 1, j as usize - 1);
            if a == b && !flavor.loops_allowed() {
                return Err(GraphError::LoopNotAllowed { v: i, flavor });
            }
            if m > 0 {
                let idx = match flavor {
                    Flavor::DirectedLoops => cell_index(flavor, d, a, b),
                    _ => cell_index(flavor, d, a.min(b), a.max(b)),
                };
                g.cells[idx] += m;
            }
        }
        Ok(g)
    }

    /// Builds from a full d×d matrix. Undirected flavors require symmetry
    /// and read the upper triangle; the loopless flavor requires a zero
    /// diagonal.
    pub fn from_adjacency(flavor: Flavor, rows: &[Vec<u32>]) -> Result<Self, GraphError> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(GraphError::Parse("adjacency matrix must be square".into()));
        }
        let mut g = Multigraph::empty(flavor, d);
        for (i, row) in rows.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                match flavor {
                    Flavor::DirectedLoops => {
                        g.cells[cell_index(flavor, d, i, j)] = m;
                    }
                    Flavor::UndirectedLoops | Flavor::UndirectedLoopless => {
                        if rows[j][i] != m {
                            return Err(GraphError::Parse(format!(
                                "undirected adjacency must be symmetric (cells ({i},{j})/({j},{i}))"
                            )));
                        }
                        if i == j && flavor == Flavor::UndirectedLoopless {
                            return Err(GraphError::LoopNotAllowed { v: i as u32 + 1, flavor });
                        }
                        if i <= j {
                            g.cells[cell_index(flavor, d, i, j)] = m;
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// k: the number of edges, multiplicities summed.
    pub fn edge_count(&self) -> u32 {
        self.cells.iter().sum()
    }

    /// Multiplicity of the cell (i, j), 0-based; the order of i and j is
    /// irrelevant for undirected flavors.
    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        match self.flavor {
            Flavor::DirectedLoops => self.cells[cell_index(self.flavor, self.d, i, j)],
            Flavor::UndirectedLoopless if i == j => 0,
            _ => self.cells[cell_index(self.flavor, self.d, i.min(j), i.max(j))],
        }
    }

    /// Stored cells as (i, j, multiplicity) with m > 0, 0-based, row-major.
    pub fn cell_entries(&self) -> Vec<(usize, usize, u32)> {
        cell_pairs(self.flavor, self.d)
            .into_iter()
            .zip(&self.cells)
            .filter(|&(_, &m)| m > 0)
            .map(|((i, j), &m)| (i, j, m))
            .collect()
    }

    /// Row sums of the adjacency matrix: out-degrees in the directed flavor.
    pub fn out_degrees(&self) -> Vec<u32> {
        if !self.flavor.directed() {
            return self.degrees_loops_twice();
        }
        let mut deg = vec![0; self.d];
        for (i, _, m) in self.cell_entries() {
            deg[i] += m;
        }
        deg
    }

    /// Column sums: in-degrees in the directed flavor.
    pub fn in_degrees(&self) -> Vec<u32> {
        if !self.flavor.directed() {
            return self.degrees_loops_twice();
        }
        let mut deg = vec![0; self.d];
        for (_, j, m) in self.cell_entries() {
            deg[j] += m;
        }
        deg
    }

    /// Undirected vertex degrees with loops counted twice (so Σ deg = 2k).
    pub fn degrees_loops_twice(&self) -> Vec<u32> {
        let mut deg = vec![0; self.d];
        for (i, j, m) in self.cell_entries() {
            deg[i] += m;
            deg[j] += m; // i == j contributes twice on purpose
        }
        deg
    }

    /// Relabels vertices: vertex i of `self` becomes vertex perm[i].
    pub fn apply_perm(&self, perm: &[usize]) -> Multigraph {
        assert_eq!(perm.len(), self.d);
        let mut out = Multigraph::empty(self.flavor, self.d);
        for ((i, j), &m) in cell_pairs(self.flavor, self.d).into_iter().zip(&self.cells) {
            if m == 0 {
                continue;
            }
            let (a, b) = (perm[i], perm[j]);
            let idx = match self.flavor {
                Flavor::DirectedLoops => cell_index(self.flavor, self.d, a, b),
                _ => cell_index(self.flavor, self.d, a.min(b), a.max(b)),
            };
            out.cells[idx] += m;
        }
        out
    }

    /// The relabeling with lexicographically minimal flattened cell vector;
    /// idempotent.
    pub fn canonical_form(&self) -> Result<Multigraph, GraphError> {
        self.canonical_form_bounded(DEFAULT_VERTEX_BOUND)
    }

    pub fn canonical_form_bounded(&self, bound: usize) -> Result<Multigraph, GraphError> {
        check_bound(self.d, bound)?;
        let mut best = self.clone();
        for perm in (0..self.d).permutations(self.d) {
            let cand = self.apply_perm(&perm);
            if cand.cells < best.cells {
                best = cand;
            }
        }
        Ok(best)
    }

    pub fn is_canonical(&self) -> Result<bool, GraphError> {
        Ok(self.canonical_form()?.cells == self.cells)
    }

    /// All vertex permutations fixing the labeled adjacency data.
    pub fn stabilizer(&self) -> Result<Vec<Vec<usize>>, GraphError> {
        self.stabilizer_bounded(DEFAULT_VERTEX_BOUND)
    }

    pub fn stabilizer_bounded(&self, bound: usize) -> Result<Vec<Vec<usize>>, GraphError> {
        check_bound(self.d, bound)?;
        Ok((0..self.d)
            .permutations(self.d)
            .filter(|perm| self.apply_perm(perm).cells == self.cells)
            .collect())
    }

    /// Number of edges inverted by σ, with multiplicity:
    /// Σ_{i<j, σ(i)>σ(j)} A_ij. Loopless flavor only.
    pub fn inversion_count(&self, perm: &[usize]) -> Result<u32, GraphError> {
        if self.flavor != Flavor::UndirectedLoopless {
            return Err(GraphError::WrongFlavor {
                expected: Flavor::UndirectedLoopless,
                got: self.flavor,
            });
        }
        assert_eq!(perm.len(), self.d);
        Ok(self
            .cell_entries()
            .into_iter()
            .filter(|&(i, j, _)| perm[i] > perm[j])
            .map(|(_, _, m)| m)
            .sum())
    }

    /// True iff every stabilizing permutation inverts an even number of
    /// edges. Graphs failing this have identically zero invariants.
    pub fn sp_admissible(&self) -> Result<bool, GraphError> {
        self.sp_admissible_bounded(DEFAULT_VERTEX_BOUND)
    }

    pub fn sp_admissible_bounded(&self, bound: usize) -> Result<bool, GraphError> {
        if self.flavor != Flavor::UndirectedLoopless {
            return Err(GraphError::WrongFlavor {
                expected: Flavor::UndirectedLoopless,
                got: self.flavor,
            });
        }
        for perm in self.stabilizer_bounded(bound)? {
            if self.inversion_count(&perm)? % 2 != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// 1-based edge list, sorted, for the interchange formats.
    pub fn edge_list(&self) -> Vec<(u32, u32, u32)> {
        self.cell_entries()
            .into_iter()
            .map(|(i, j, m)| (i as u32 + 1, j as u32 + 1, m))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            flavor: self.flavor.as_str().to_string(),
            d: self.d as u32,
            edges: self.edge_list(),
        })
        .expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Multigraph, GraphError> {
        let parsed: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
        let flavor = Flavor::from_str_name(&parsed.flavor)
            .ok_or_else(|| GraphError::Parse(format!("unknown flavor {:?}", parsed.flavor)))?;
        Multigraph::from_edges(flavor, parsed.d as usize, &parsed.edges)
    }

    /// Compact text form: `1->2, 2->3:2` (directed) or `1--2, 2--3:2`
    /// (undirected), `:m` giving the multiplicity.
    pub fn to_text(&self) -> String {
        let arrow = if self.flavor.directed() { "->" } else { "--" };
        let edges = self
            .edge_list()
            .into_iter()
            .map(|(i, j, m)| {
                if m == 1 {
                    format!("{i}{arrow}{j}")
                } else {
                    format!("{i}{arrow}{j}:{m}")
                }
            })
            .join(", ");
        if edges.is_empty() {
            format!("d={};", self.d)
        } else {
            format!("d={}; {}", self.d, edges)
        }
    }

    /// Parses the compact text form. An optional `d=N;` prefix fixes the
    /// vertex count (needed for trailing isolated vertices); otherwise the
    /// largest mentioned vertex defines it.
    pub fn from_text(text: &str, flavor: Flavor) -> Result<Multigraph, GraphError> {
        let mut rest = text.trim();
        let mut d_explicit: Option<usize> = None;
        if let Some(semi) = rest.find(';') {
            let head = rest[..semi].trim();
            let Some(num) = head.strip_prefix("d=") else {
                return Err(GraphError::Parse(format!("expected `d=N;` prefix, got {head:?}")));
            };
            let n: usize = num
                .trim()
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad vertex count {num:?}")))?;
            d_explicit = Some(n);
            rest = rest[semi + 1..].trim();
        }
        let mut edges: Vec<(u32, u32, u32)> = Vec::new();
        let mut max_v = 0u32;
        let arrow = if flavor.directed() { "->" } else { "--" };
        let wrong = if flavor.directed() { "--" } else { "->" };
        for tok in rest.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            if tok.contains(wrong) {
                return Err(GraphError::Parse(format!(
                    "edge {tok:?} uses {wrong:?} but flavor {flavor} expects {arrow:?}"
                )));
            }
            let Some((lhs, rhs)) = tok.split_once(arrow) else {
                return Err(GraphError::Parse(format!("cannot parse edge {tok:?}")));
            };
            let (rhs, mult) = match rhs.split_once(':') {
                Some((r, m)) => {
                    let m: u32 = m
                        .trim()
                        .parse()
                        .map_err(|_| GraphError::Parse(format!("bad multiplicity in {tok:?}")))?;
                    (r, m)
                }
                None => (rhs, 1),
            };
            let i: u32 = lhs
                .trim()
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad vertex in {tok:?}")))?;
            let j: u32 = rhs
                .trim()
                .parse()
                .map_err(|_| GraphError::Parse(format!("bad vertex in {tok:?}")))?;
            max_v = max_v.max(i).max(j);
            edges.push((i, j, mult));
        }
        let d = d_explicit.unwrap_or(max_v as usize);
        if max_v as usize > d {
            return Err(GraphError::Parse(format!(
                "edge vertex {max_v} exceeds declared d={d}"
            )));
        }
        Multigraph::from_edges(flavor, d, &edges)
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    flavor: String,
    d: u32,
    edges: Vec<(u32, u32, u32)>,
}

fn check_bound(d: usize, bound: usize) -> Result<(), GraphError> {
    if d > bound {
        Err(GraphError::VertexBoundExceeded { d, bound })
    } else {
        Ok(())
    }
}

fn cell_index(flavor: Flavor, d: usize, i: usize, j: usize) -> usize {
    match flavor {
        Flavor::DirectedLoops => i * d + j,
        // Row-major upper triangle with diagonal: row r holds d − r cells.
        Flavor::UndirectedLoops => {
            debug_assert!(i <= j);
            i * d - (i * i - i) / 2 + (j - i)
        }
        // Strict upper triangle: row r holds d − r − 1 cells.
        Flavor::UndirectedLoopless => {
            debug_assert!(i < j);
            i * d - (i * i + i) / 2 + (j - i - 1)
        }
    }
}

/// The (i, j) pair of every cell, row-major, matching the stored order.
pub fn cell_pairs(flavor: Flavor, d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(flavor.cell_count(d));
    match flavor {
        Flavor::DirectedLoops => {
            for i in 0..d {
                for j in 0..d {
                    out.push((i, j));
                }
            }
        }
        Flavor::UndirectedLoops => {
            for i in 0..d {
                for j in i..d {
                    out.push((i, j));
                }
            }
        }
        Flavor::UndirectedLoopless => {
            for i in 0..d {
                for j in i + 1..d {
                    out.push((i, j));
                }
            }
        }
    }
    out
}

/// The graph class indexing a group's (d, k) component: all canonical
/// d-vertex, k-edge multigraphs of the group's flavor, with the evenness
/// condition applied for Sp. Ascending lexicographic order of the flattened
/// cell vectors.
pub fn enumerate_graphs(group: &Group, d: usize, k: u32) -> Result<Vec<Multigraph>, GraphError> {
    enumerate_graphs_bounded(group, d, k, DEFAULT_VERTEX_BOUND)
}

pub fn enumerate_graphs_bounded(
    group: &Group,
    d: usize,
    k: u32,
    bound: usize,
) -> Result<Vec<Multigraph>, GraphError> {
    let flavor = group.flavor();
    enumerate_flavor(flavor, d, k, flavor == Flavor::UndirectedLoopless, bound)
}

fn enumerate_flavor(
    flavor: Flavor,
    d: usize,
    k: u32,
    admissible_only: bool,
    bound: usize,
) -> Result<Vec<Multigraph>, GraphError> {
    check_bound(d, bound)?;
    let n_cells = flavor.cell_count(d);
    if n_cells == 0 {
        // No cells to put edges in (d ≤ 1 loopless, or d = 0).
        return Ok(if k == 0 {
            vec![Multigraph::empty(flavor, d)]
        } else {
            Vec::new()
        });
    }

    // For each permutation, a table mapping destination cell → source cell,
    // so relabeled cell vectors can be compared without materializing them.
    let pairs = cell_pairs(flavor, d);
    let perm_tables: Vec<Vec<usize>> = (0..d)
        .permutations(d)
        .map(|perm| {
            let mut table = vec![0; n_cells];
            for (pos, &(i, j)) in pairs.iter().enumerate() {
                let (a, b) = (perm[i], perm[j]);
                let dst = match flavor {
                    Flavor::DirectedLoops => cell_index(flavor, d, a, b),
                    _ => cell_index(flavor, d, a.min(b), a.max(b)),
                };
                table[dst] = pos;
            }
            table
        })
        .collect();

    let is_canonical = |cells: &[u32]| -> bool {
        'perms: for table in &perm_tables {
            for pos in 0..n_cells {
                let relabeled = cells[table[pos]];
                if relabeled < cells[pos] {
                    return false; // a strictly smaller relabeling exists
                }
                if relabeled > cells[pos] {
                    continue 'perms;
                }
            }
        }
        true
    };

    let mut out = Vec::new();
    let mut cells = vec![0u32; n_cells];
    let mut emit = |cells: &[u32]| -> Result<(), GraphError> {
        if !is_canonical(cells) {
            return Ok(());
        }
        let g = Multigraph {
            flavor,
            d,
            cells: cells.to_vec(),
        };
        if !admissible_only || g.sp_admissible_bounded(bound)? {
            out.push(g);
        }
        Ok(())
    };
    fill_cells(&mut cells, 0, k, &mut emit)?;
    Ok(out)
}

fn fill_cells(
    cells: &mut Vec<u32>,
    pos: usize,
    remaining: u32,
    emit: &mut dyn FnMut(&[u32]) -> Result<(), GraphError>,
) -> Result<(), GraphError> {
    if pos + 1 == cells.len() {
        cells[pos] = remaining;
        emit(cells)?;
        cells[pos] = 0;
        return Ok(());
    }
    for v in 0..=remaining {
        cells[pos] = v;
        fill_cells(cells, pos + 1, remaining - v, emit)?;
    }
    cells[pos] = 0;
    Ok(())
}

/// Independent class count via Burnside's lemma: average over σ ∈ 𝔖_d of the
/// number of adjacency arrays fixed by σ with entries summing to k. A fixed
/// array is constant on σ's cell orbits, so an orbit of size s contributes a
/// generating-function factor 1/(1 − ε t^s), where ε = 1 except in the
/// loopless flavor, where ε = (−1)^{inverted cells in the orbit}. The signed
/// version counts exactly the admissible classes: each admissible class
/// averages to 1 over its labelings and each non-admissible class to 0.
pub fn count_graphs_burnside(flavor: Flavor, d: usize, k: u32) -> u64 {
    let n_cells = flavor.cell_count(d);
    let pairs = cell_pairs(flavor, d);
    let kk = k as usize;
    let mut total: i128 = 0;
    let mut n_perms: i128 = 0;
    for perm in (0..d).permutations(d) {
        n_perms += 1;
        let mut visited = vec![false; n_cells];
        let mut dp = vec![0i128; kk + 1];
        dp[0] = 1;
        for start in 0..n_cells {
            if visited[start] {
                continue;
            }
            let mut size = 0usize;
            let mut inverted = 0u32;
            let mut pos = start;
            loop {
                visited[pos] = true;
                size += 1;
                let (i, j) = pairs[pos];
                let (a, b) = (perm[i], perm[j]);
                if flavor == Flavor::UndirectedLoopless && a > b {
                    inverted += 1;
                }
                let next = match flavor {
                    Flavor::DirectedLoops => cell_index(flavor, d, a, b),
                    _ => cell_index(flavor, d, a.min(b), a.max(b)),
                };
                if next == start {
                    break;
                }
                pos = next;
            }
            let eps: i128 = if flavor == Flavor::UndirectedLoopless && inverted % 2 == 1 {
                -1
            } else {
                1
            };
            // dp ← dp · (1 + ε t^s + ε² t^{2s} + …), truncated at degree k.
            let mut next_dp = dp.clone();
            let mut weight: i128 = 1;
            let mut shift = size;
            while shift <= kk {
                weight *= eps;
                for t in shift..=kk {
                    next_dp[t] += weight * dp[t - shift];
                }
                shift += size;
            }
            dp = next_dp;
        }
        total += dp[kk];
    }
    assert!(
        total % n_perms == 0 && total / n_perms >= 0,
        "Burnside count must be a nonnegative integer (got {total}/{n_perms})"
    );
    (total / n_perms) as u64
}
