//! Exact arithmetic substrate: rationals, generator symbols, sparse
//! commutative polynomials and dense rational matrices.
//!
//! Every class handled by the crate lives in even cohomological degree, so
//! the polynomial algebra here is plain commutative with no sign rules.

mod matrix;
mod poly;
mod rational;
mod symbol;

pub use matrix::RatMatrix;
pub use poly::{Polynomial, RingId};
pub use rational::{int, rat, Rational};
pub use symbol::{GenSymbol, Monomial};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingId, right: RingId },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
}
