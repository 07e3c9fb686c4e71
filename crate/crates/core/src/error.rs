use crate::scalar::{format_scalar, Scalar};
use crate::Side;
use std::fmt;

/// Everything that can go wrong in this crate.
///
/// Errors carry enough data to be actionable: validation failures name the
/// offending indices and the two sides of the law that disagreed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A dimension or length did not match what the operation requires.
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    /// `(e_i e_j) e_k` and `e_i (e_j e_k)` disagree in coordinate `m`.
    AssociativityViolation {
        i: usize,
        j: usize,
        k: usize,
        m: usize,
        left_sum: Box<Scalar>,
        right_sum: Box<Scalar>,
    },
    /// The declared unit fails `unit * e_j = e_j` (left) or `e_j * unit = e_j`
    /// (right) in coordinate `k`.
    UnitViolation { side: Side, j: usize, k: usize },
    /// Operands live in different algebras.
    AlgebraMismatch,
    /// The operation is undefined on the zero element.
    ZeroInput,
    /// A basis or matrix index is out of bounds.
    IndexOutOfRange { index: usize, bound: usize },
    /// Text that does not parse as `p` or `p/q` with `q > 0`.
    InvalidRational { text: String },
    /// Malformed algebra description file.
    InvalidAlgebraFile { message: String },
    /// Malformed tensor or polynomial serialization.
    InvalidTensorFile { message: String },
    /// A tensor had the wrong arity for the operation.
    ArityMismatch { expected: usize, got: usize },
    /// The operation would build a tensor above the configured arity cap.
    ArityCapExceeded { arity: usize, max_arity: usize },
    /// Coefficient `degree` of a polynomial must have arity `degree + 1`.
    ArityLadderViolation {
        degree: usize,
        expected_arity: usize,
        got_arity: usize,
    },
    /// The arity-2 tensor has a singular operator matrix.
    SingularTensor,
    /// The inverse operator exists but is not of the form
    /// `x -> sum c^{pq} e_p x e_q` for any coefficients `c`.
    NotRepresentable,
    /// A forced solve against a singular system had no solution.
    NoSolution,
    /// Composition would exceed the configured band width for band operators.
    BandOverflow { width: i64, max_width: i64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ShapeMismatch { what, expected, got } => {
                write!(f, "shape mismatch: {what} expected {expected}, got {got}")
            }
            Error::AssociativityViolation { i, j, k, m, left_sum, right_sum } => write!(
                f,
                "associativity fails at (i,j,k)=({i},{j},{k}), coordinate {m}: \
                 (e_i e_j) e_k gives {}, e_i (e_j e_k) gives {}",
                format_scalar(left_sum),
                format_scalar(right_sum)
            ),
            Error::UnitViolation { side, j, k } => write!(
                f,
                "declared unit is not a {side} unit: product with e_{j} is wrong in coordinate {k}"
            ),
            Error::AlgebraMismatch => write!(f, "operands belong to different algebras"),
            Error::ZeroInput => write!(f, "operation is undefined on the zero element"),
            Error::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range (bound {bound})")
            }
            Error::InvalidRational { text } => {
                write!(f, "invalid rational literal {text:?} (expected p or p/q with q > 0)")
            }
            Error::InvalidAlgebraFile { message } => write!(f, "invalid algebra file: {message}"),
            Error::InvalidTensorFile { message } => write!(f, "invalid tensor data: {message}"),
            Error::ArityMismatch { expected, got } => {
                write!(f, "tensor arity mismatch: expected {expected}, got {got}")
            }
            Error::ArityCapExceeded { arity, max_arity } => {
                write!(f, "tensor arity {arity} exceeds the configured cap {max_arity}")
            }
            Error::ArityLadderViolation { degree, expected_arity, got_arity } => write!(
                f,
                "coefficient at degree {degree} must have arity {expected_arity}, got {got_arity}"
            ),
            Error::SingularTensor => write!(f, "tensor has a singular operator matrix"),
            Error::NotRepresentable => write!(
                f,
                "inverse operator is not representable as x -> sum c^pq e_p x e_q"
            ),
            Error::NoSolution => write!(f, "linear system has no solution"),
            Error::BandOverflow { width, max_width } => {
                write!(f, "band width {width} exceeds the configured maximum {max_width}")
            }
        }
    }
}

impl std::error::Error for Error {}
