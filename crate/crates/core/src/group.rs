//! The three classical group families and their rank bookkeeping.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graphs::Flavor;

/// One of the classical groups, together with its rank parameter `n`.
///
/// `Sp { n }` acts on a 2n-dimensional space; the other two act on an
/// n-dimensional one. The rank drives the length of the multi-indices
/// appearing in coefficient functionals: `n` for GL and O, `2n` for Sp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "lowercase")]
pub enum Group {
    Gl { n: u32 },
    O { n: u32 },
    Sp { n: u32 },
}

impl Group {
    pub fn gl(n: u32) -> Self {
        assert!(n >= 1, "group rank must be at least 1");
        Group::Gl { n }
    }

    pub fn o(n: u32) -> Self {
        assert!(n >= 1, "group rank must be at least 1");
        Group::O { n }
    }

    pub fn sp(n: u32) -> Self {
        assert!(n >= 1, "group rank must be at least 1");
        Group::Sp { n }
    }

    pub fn n(&self) -> u32 {
        match *self {
            Group::Gl { n } | Group::O { n } | Group::Sp { n } => n,
        }
    }

    /// Dimension of the defining representation: n for GL and O, 2n for Sp.
    pub fn dim_v(&self) -> u32 {
        match *self {
            Group::Gl { n } | Group::O { n } => n,
            Group::Sp { n } => 2 * n,
        }
    }

    /// Length of the multi-indices in coefficient functionals (equals
    /// `dim_v`; GL carries a second multi-index of the same length).
    pub fn index_len(&self) -> usize {
        self.dim_v() as usize
    }

    pub fn is_gl(&self) -> bool {
        matches!(self, Group::Gl { .. })
    }

    /// The graph flavor whose multigraphs index this group's invariants.
    pub fn flavor(&self) -> Flavor {
        match self {
            Group::Gl { .. } => Flavor::DirectedLoops,
            Group::O { .. } => Flavor::UndirectedLoops,
            Group::Sp { .. } => Flavor::UndirectedLoopless,
        }
    }

    /// Stable range test: graph invariants of bidegree (d, k) are linearly
    /// independent when n ≥ min{d, k} (GL, O) or n ≥ min{⌊d/2⌋, ⌊k/2⌋} (Sp).
    pub fn stable_range(&self, d: u32, k: u32) -> bool {
        match *self {
            Group::Gl { n } | Group::O { n } => n >= d.min(k),
            Group::Sp { n } => n >= (d / 2).min(k / 2),
        }
    }

    /// Short name as used by the CLI: "gl", "o", "sp".
    pub fn kind_str(&self) -> &'static str {
        match self {
            Group::Gl { .. } => "gl",
            Group::O { .. } => "o",
            Group::Sp { .. } => "sp",
        }
    }

    pub fn from_kind_str(kind: &str, n: u32) -> Option<Self> {
        match kind.to_ascii_lowercase().as_str() {
            "gl" => Some(Group::gl(n)),
            "o" => Some(Group::o(n)),
            "sp" => Some(Group::sp(n)),
            _ => None,
        }
    }

    /// Same group kind, same rank.
    pub fn same_as(&self, other: &Group) -> bool {
        self == other
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Group::Gl { n } => write!(f, "GL({n})"),
            Group::O { n } => write!(f, "O({n})"),
            Group::Sp { n } => write!(f, "Sp({n})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_range_matches_inequalities() {
        assert!(Group::gl(4).stable_range(3, 5)); // n ≥ d
        assert!(!Group::gl(1).stable_range(2, 2));
        assert!(Group::sp(1).stable_range(2, 7)); // ⌊d/2⌋ = 1
        assert!(Group::o(2).stable_range(5, 2));
        assert!(!Group::sp(1).stable_range(4, 5)); // min{2,2} = 2 > 1
    }

    #[test]
    fn index_lengths() {
        assert_eq!(Group::gl(3).index_len(), 3);
        assert_eq!(Group::o(2).index_len(), 2);
        assert_eq!(Group::sp(2).index_len(), 4);
    }

    #[test]
    fn kind_round_trip() {
        for g in [Group::gl(2), Group::o(3), Group::sp(1)] {
            assert_eq!(Group::from_kind_str(g.kind_str(), g.n()), Some(g));
        }
        assert_eq!(Group::from_kind_str("so", 2), None);
    }
}
