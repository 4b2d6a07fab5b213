//! Exact computation in the polynomial invariant rings of the classical
//! groups GL_n, O_n, Sp_2n.
//!
//! The pipeline: multigraphs up to isomorphism index products of fundamental
//! quadratics; an umbral-style operator turns each product into a polynomial
//! in coefficient functionals, giving a spanning set (a basis in the stable
//! range) of each bigraded component of the invariant ring. A separate
//! dimension engine computes the same component dimensions from symmetric
//! group characters and branching multiplicities, and a verification layer
//! cross-checks the two by exact rank computation and invariance tests at
//! rational group points.
//!
//! Everything is exact: arbitrary-precision integers in the combinatorial
//! pipeline, rationals in evaluation. No floating point anywhere.

pub mod branching;
pub mod graphs;
pub mod group;
pub mod multiindex;
pub mod partition;
pub mod poly;
pub mod scalar;
pub mod umbral;
pub mod verify;

pub use group::Group;
