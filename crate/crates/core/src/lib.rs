//! Exact decision procedures around walk matrices of simple graphs.
//!
//! The crate decides isomorphism of controllable graphs (graphs whose walk
//! matrix `[1, A·1, ..., A^{n-1}·1]` is invertible) by matching rows of
//! extended walk matrices, and implements the surrounding equivalences:
//! walk-equivalence, (generalized) cospectrality, color refinement,
//! fractional isomorphism and two-variable counting logic.

pub mod algebra;
pub mod c2;
pub mod graph;
pub mod iso;
pub mod refine;
pub mod walk;

pub use algebra::{AlgebraError, IntMatrix, IntPoly, RatMatrix, RatPoly};
pub use graph::{
    enumerate_graphs, parse_graph6, random_graph, write_graph6, Graph, GraphError, Permutation,
    SplitMix64,
};
pub use iso::{decide_isomorphism, IsoError, IsoVerdict, Reason, VerdictKind};
