//! Exact arithmetic for polynomials over finite-dimensional associative
//! unital algebras presented by structure constants.
//!
//! An algebra of dimension `n` over the rationals is given by an `n x n x n`
//! table `C` with `e_i * e_j = sum_k C[i][j][k] e_k` and a distinguished
//! two-sided unit. On top of that this crate provides:
//!
//! * [`algebra`]: validated algebras, their elements, left/right
//!   multiplication operators, and zero-divisor analysis with explicit
//!   witnesses.
//! * [`tensor`]: dense coordinate tensors of arity `k + 1` representing the
//!   degree-`k` maps `x -> sum a_0 x a_1 x ... x a_k`, with the contraction
//!   product, operator matrices, and exact inversion of nonsingular arity-2
//!   tensors.
//! * [`poly`]: polynomials in one noncommuting indeterminate as graded lists
//!   of coefficient tensors, and division-style reduction by degree-1
//!   polynomials.
//! * [`builtin`]: ready-made algebras (full matrix algebras, quaternions,
//!   complex and dual numbers, direct sums) and a dense-matrix oracle used to
//!   cross-check structure-constant arithmetic.
//! * [`shift`]: banded operators on a countable basis, including the one-sided
//!   shift pair whose composition is the identity in one order only.
//! * [`linalg`]: the exact elimination kernel everything above relies on.
//!
//! Every computation is exact; there is no floating point anywhere.

// Multi-index tensor kernels read best as explicit index loops; iterator
// rewrites obscure the slot arithmetic.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod builtin;
mod error;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod shift;
pub mod tensor;

pub use algebra::{Algebra, Element, ZeroDivisorCheck};
pub use error::Error;
pub use linalg::{LinearOutcome, OperatorMatrix};
pub use poly::{Polynomial, ReductionResult};
pub use scalar::{format_scalar, parse_scalar, Scalar};
pub use tensor::{LinearEquation, LinearSolution, Tensor};

/// Which side of a product an operation or a law refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}
