//! Dense exact linear algebra over the integers and the rationals.
//!
//! Nothing in here touches floating point: ranks, inverses and
//! characteristic polynomials are computed with fraction-free elimination
//! or exact rational arithmetic.

mod int_matrix;
mod poly;
mod rat_matrix;

use thiserror::Error;

pub use int_matrix::IntMatrix;
pub use poly::{IntPoly, RatPoly};
pub use rat_matrix::RatMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is singular")]
    Singular,
    #[error("empty matrix")]
    Empty,
}

/// `det(tI - m)`.
pub fn char_poly(m: &IntMatrix) -> Result<IntPoly, AlgebraError> {
    m.char_poly()
}

pub fn rank(m: &IntMatrix) -> usize {
    m.rank()
}

pub fn rat_inverse(m: &RatMatrix) -> Result<RatMatrix, AlgebraError> {
    m.inverse()
}

pub fn is_doubly_stochastic(m: &RatMatrix) -> bool {
    m.is_doubly_stochastic()
}
