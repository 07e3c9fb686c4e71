//! Associative unital algebras presented by structure constants, and their
//! elements.
//!
//! An [`Algebra`] owns a dense table `C` with `e_i * e_j = sum_k C[i][j][k] e_k`,
//! a distinguished two-sided unit, and display names for the basis. Validation
//! at construction is exhaustive: associativity is checked on every basis
//! triple and the unit law on every basis element, so a value of this type is
//! always an actual associative unital algebra.
//!
//! [`Element`]s are coordinate vectors tied to their algebra via a shared
//! handle. Zero-divisor analysis works through the left/right multiplication
//! operators: `a` is a left zero divisor exactly when `L(a)` is singular, and
//! the reported witness is the deterministic kernel vector of that matrix.

use crate::linalg::OperatorMatrix;
use crate::scalar::{format_scalar, parse_scalar, Scalar};
use crate::{Error, Side};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Default cap on tensor arity (degree + 1); guards `dim^arity` memory.
pub const DEFAULT_MAX_ARITY: usize = 6;

/// A finite-dimensional associative unital algebra over the rationals.
#[derive(Clone)]
pub struct Algebra {
    dim: usize,
    /// Dense structure constants, `constants[(i*n + j)*n + k] = C^k_ij`.
    constants: Vec<Scalar>,
    unit: Vec<Scalar>,
    names: Vec<String>,
    max_arity: usize,
    /// Nonzero `C^k_ij` grouped by the left factor: `by_left[i]` holds `(j, k, c)`.
    by_left: Vec<Vec<(usize, usize, Scalar)>>,
    /// Nonzero `C^k_ij` grouped by the right factor: `by_right[j]` holds `(i, k, c)`.
    by_right: Vec<Vec<(usize, usize, Scalar)>>,
}

impl PartialEq for Algebra {
    /// Mathematical identity: dimension, structure constants and unit.
    /// Display names and the arity cap are presentation, not identity.
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.constants == other.constants && self.unit == other.unit
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {}, basis [{}])", self.dim, self.names.join(", "))
    }
}

/// On-disk form: all rationals as strings, `table[i][j]` the coordinates of
/// `e_i * e_j`.
#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    dim: usize,
    basis: Vec<String>,
    unit: Vec<String>,
    table: Vec<Vec<Vec<String>>>,
}

impl Algebra {
    /// Builds and validates an algebra.
    ///
    /// `constants[i][j]` are the coordinates of `e_i * e_j`; `unit` the
    /// coordinates of the two-sided unit; `names` the basis display names
    /// (pass an empty vector for the default `e1..en`). Fails with
    /// `ShapeMismatch`, `AssociativityViolation` (with the offending triple,
    /// coordinate, and both sums) or `UnitViolation`.
    pub fn new(
        dim: usize,
        constants: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        names: Vec<String>,
    ) -> Result<Arc<Algebra>, Error> {
        if dim == 0 {
            return Err(Error::ShapeMismatch { what: "algebra dimension", expected: 1, got: 0 });
        }
        if constants.len() != dim {
            return Err(Error::ShapeMismatch {
                what: "structure constant rows",
                expected: dim,
                got: constants.len(),
            });
        }
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for row in &constants {
            if row.len() != dim {
                return Err(Error::ShapeMismatch {
                    what: "structure constant columns",
                    expected: dim,
                    got: row.len(),
                });
            }
            for cell in row {
                if cell.len() != dim {
                    return Err(Error::ShapeMismatch {
                        what: "structure constant coordinates",
                        expected: dim,
                        got: cell.len(),
                    });
                }
                flat.extend(cell.iter().cloned());
            }
        }
        Self::from_flat(dim, flat, unit, names)
    }

    /// Same as [`Algebra::new`]: the multiplication table `table[i][j] =
    /// coordinates of e_i * e_j` *is* the structure constant table.
    pub fn from_multiplication_table(
        dim: usize,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
        names: Vec<String>,
    ) -> Result<Arc<Algebra>, Error> {
        Self::new(dim, table, unit, names)
    }

    fn from_flat(
        dim: usize,
        constants: Vec<Scalar>,
        unit: Vec<Scalar>,
        names: Vec<String>,
    ) -> Result<Arc<Algebra>, Error> {
        let n = dim;
        if unit.len() != n {
            return Err(Error::ShapeMismatch { what: "unit coordinates", expected: n, got: unit.len() });
        }
        let names = if names.is_empty() {
            (1..=n).map(|i| format!("e{i}")).collect()
        } else {
            if names.len() != n {
                return Err(Error::ShapeMismatch { what: "basis names", expected: n, got: names.len() });
            }
            names
        };

        let mut by_left: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); n];
        let mut by_right: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = &constants[(i * n + j) * n + k];
                    if !c.is_zero() {
                        by_left[i].push((j, k, c.clone()));
                        by_right[j].push((i, k, c.clone()));
                    }
                }
            }
        }

        let alg = Algebra {
            dim: n,
            constants,
            unit,
            names,
            max_arity: DEFAULT_MAX_ARITY,
            by_left,
            by_right,
        };
        alg.validate_associativity()?;
        alg.validate_unit()?;
        Ok(Arc::new(alg))
    }

    /// `(e_i e_j) e_k = e_i (e_j e_k)` on every basis triple.
    fn validate_associativity(&self) -> Result<(), Error> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.product_slice(i, j).to_vec();
                for k in 0..n {
                    let mut left = vec![Scalar::zero(); n];
                    for (p, w) in ij.iter().enumerate() {
                        if w.is_zero() {
                            continue;
                        }
                        for (m, c) in self.product_slice(p, k).iter().enumerate() {
                            if !c.is_zero() {
                                left[m] += w * c;
                            }
                        }
                    }
                    let mut right = vec![Scalar::zero(); n];
                    for (p, w) in self.product_slice(j, k).iter().enumerate() {
                        if w.is_zero() {
                            continue;
                        }
                        for (m, c) in self.product_slice(i, p).iter().enumerate() {
                            if !c.is_zero() {
                                right[m] += w * c;
                            }
                        }
                    }
                    for m in 0..n {
                        if left[m] != right[m] {
                            return Err(Error::AssociativityViolation {
                                i,
                                j,
                                k,
                                m,
                                left_sum: Box::new(left[m].clone()),
                                right_sum: Box::new(right[m].clone()),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `unit * e_j = e_j` and `e_j * unit = e_j` for every basis element.
    fn validate_unit(&self) -> Result<(), Error> {
        let n = self.dim;
        for j in 0..n {
            let mut left = vec![Scalar::zero(); n];
            for (i, u) in self.unit.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                for (k, c) in self.product_slice(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        left[k] += u * c;
                    }
                }
            }
            for k in 0..n {
                let expected = if k == j { Scalar::one() } else { Scalar::zero() };
                if left[k] != expected {
                    return Err(Error::UnitViolation { side: Side::Left, j, k });
                }
            }
            let mut right = vec![Scalar::zero(); n];
            for (u_idx, u) in self.unit.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                for (k, c) in self.product_slice(j, u_idx).iter().enumerate() {
                    if !c.is_zero() {
                        right[k] += u * c;
                    }
                }
            }
            for k in 0..n {
                let expected = if k == j { Scalar::one() } else { Scalar::zero() };
                if right[k] != expected {
                    return Err(Error::UnitViolation { side: Side::Right, j, k });
                }
            }
        }
        Ok(())
    }

    /// Coordinates of `e_i * e_j` as a slice of the dense table.
    pub(crate) fn product_slice(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim;
        &self.constants[(i * n + j) * n..(i * n + j) * n + n]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `C^k_ij`: the `e_k` coordinate of `e_i * e_j`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn unit_coords(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Index of the basis element with the given display name.
    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Cap on tensor arity over this algebra (degree + 1).
    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    /// The same algebra with a different arity cap. The cap bounds
    /// `dim^arity` memory; it is configuration, not mathematical identity.
    pub fn with_max_arity(self: &Arc<Self>, max_arity: usize) -> Arc<Algebra> {
        let mut alg = (**self).clone();
        alg.max_arity = max_arity;
        Arc::new(alg)
    }

    pub(crate) fn by_left(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.by_left[i]
    }

    pub(crate) fn by_right(&self, j: usize) -> &[(usize, usize, Scalar)] {
        &self.by_right[j]
    }

    /// Coordinates of the product of two coordinate vectors.
    pub(crate) fn mul_coords(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        self.mul_coords_into(a, b, &mut out);
        out
    }

    pub(crate) fn mul_coords_into(&self, a: &[Scalar], b: &[Scalar], out: &mut [Scalar]) {
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, k, c) in &self.by_left[i] {
                if !b[*j].is_zero() {
                    out[*k] += ai * &b[*j] * c;
                }
            }
        }
    }

    /// Serializes to the canonical JSON description (all rationals as
    /// strings); `from_json` of the output reproduces the algebra exactly.
    pub fn to_json(&self) -> String {
        let n = self.dim;
        let file = AlgebraFile {
            dim: n,
            basis: self.names.clone(),
            unit: self.unit.iter().map(format_scalar).collect(),
            table: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| self.product_slice(i, j).iter().map(format_scalar).collect())
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("algebra serialization cannot fail")
    }

    /// Parses and validates the JSON description produced by [`Algebra::to_json`].
    pub fn from_json(text: &str) -> Result<Arc<Algebra>, Error> {
        let file: AlgebraFile = serde_json::from_str(text)
            .map_err(|e| Error::InvalidAlgebraFile { message: e.to_string() })?;
        let unit = file.unit.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>, _>>()?;
        let table = file
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| cell.iter().map(|s| parse_scalar(s)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if file.basis.len() != file.dim {
            return Err(Error::ShapeMismatch {
                what: "basis names",
                expected: file.dim,
                got: file.basis.len(),
            });
        }
        Self::new(file.dim, table, unit, file.basis)
    }
}

/// True when both handles denote the same algebra (cheap pointer check first,
/// then mathematical identity).
pub(crate) fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An element of an [`Algebra`]: a coordinate vector over the basis.
#[derive(Clone)]
pub struct Element {
    algebra: Arc<Algebra>,
    coords: Vec<Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.coords == other.coords
    }
}

impl Eq for Element {}

impl fmt::Display for Element {
    /// Linear combination over the basis names: `2 E11 - 1/3 E12`, `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Scalar::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !abs.is_one() {
                write!(f, "{} ", format_scalar(&abs))?;
            }
            write!(f, "{}", self.algebra.name(i))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

/// Verdict of a zero-divisor test: a concrete witness or a proof of absence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroDivisorCheck {
    /// A nonzero `b` with `a * b = 0` (left test) or `b * a = 0` (right test).
    Witness(Element),
    NotZeroDivisor,
}

impl ZeroDivisorCheck {
    pub fn is_zero_divisor(&self) -> bool {
        matches!(self, ZeroDivisorCheck::Witness(_))
    }

    pub fn witness(&self) -> Option<&Element> {
        match self {
            ZeroDivisorCheck::Witness(w) => Some(w),
            ZeroDivisorCheck::NotZeroDivisor => None,
        }
    }
}

impl Element {
    pub fn new(algebra: &Arc<Algebra>, coords: Vec<Scalar>) -> Result<Element, Error> {
        if coords.len() != algebra.dim() {
            return Err(Error::ShapeMismatch {
                what: "element coordinates",
                expected: algebra.dim(),
                got: coords.len(),
            });
        }
        Ok(Element { algebra: Arc::clone(algebra), coords })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(algebra: &Arc<Algebra>, coords: &[i64]) -> Result<Element, Error> {
        Self::new(algebra, coords.iter().map(|&c| crate::scalar::int(c)).collect())
    }

    pub fn zero(algebra: &Arc<Algebra>) -> Element {
        Element { algebra: Arc::clone(algebra), coords: vec![Scalar::zero(); algebra.dim()] }
    }

    pub fn unit(algebra: &Arc<Algebra>) -> Element {
        Element { algebra: Arc::clone(algebra), coords: algebra.unit_coords().to_vec() }
    }

    pub fn basis(algebra: &Arc<Algebra>, i: usize) -> Result<Element, Error> {
        if i >= algebra.dim() {
            return Err(Error::IndexOutOfRange { index: i, bound: algebra.dim() });
        }
        let mut coords = vec![Scalar::zero(); algebra.dim()];
        coords[i] = Scalar::one();
        Ok(Element { algebra: Arc::clone(algebra), coords })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    fn check_same(&self, other: &Element) -> Result<(), Error> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, Error> {
        self.check_same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Element { algebra: Arc::clone(&self.algebra), coords })
    }

    pub fn sub(&self, other: &Element) -> Result<Element, Error> {
        self.check_same(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(Element { algebra: Arc::clone(&self.algebra), coords })
    }

    pub fn neg(&self) -> Element {
        Element {
            algebra: Arc::clone(&self.algebra),
            coords: self.coords.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element {
            algebra: Arc::clone(&self.algebra),
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    /// Product in the algebra: `(ab)^k = sum_{i,j} a^i b^j C^k_ij`.
    pub fn mul(&self, other: &Element) -> Result<Element, Error> {
        self.check_same(other)?;
        Ok(Element {
            algebra: Arc::clone(&self.algebra),
            coords: self.algebra.mul_coords(&self.coords, &other.coords),
        })
    }

    /// Matrix of `x -> self * x` on coordinates: `L^k_j = sum_i a^i C^k_ij`.
    pub fn left_mul_matrix(&self) -> OperatorMatrix {
        let n = self.algebra.dim();
        let mut m = OperatorMatrix::zero(n);
        for (i, ai) in self.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, k, c) in self.algebra.by_left(i) {
                *m.at_mut(*k, *j) += ai * c;
            }
        }
        m
    }

    /// Matrix of `x -> x * self` on coordinates: `R^k_i = sum_j a^j C^k_ij`.
    pub fn right_mul_matrix(&self) -> OperatorMatrix {
        let n = self.algebra.dim();
        let mut m = OperatorMatrix::zero(n);
        for (j, aj) in self.coords.iter().enumerate() {
            if aj.is_zero() {
                continue;
            }
            for (i, k, c) in self.algebra.by_right(j) {
                *m.at_mut(*k, *i) += aj * c;
            }
        }
        m
    }

    /// Left zero-divisor test with witness: a nonzero `b` with `self * b = 0`
    /// exists iff `L(self)` is singular (kernel dimension counts the missing
    /// rank exactly). Errors with `ZeroInput` on the zero element.
    pub fn left_zero_divisor(&self) -> Result<ZeroDivisorCheck, Error> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        match self.left_mul_matrix().kernel_vector() {
            Some(coords) => {
                let witness = Element { algebra: Arc::clone(&self.algebra), coords };
                debug_assert!(self.mul(&witness).unwrap().is_zero());
                Ok(ZeroDivisorCheck::Witness(witness))
            }
            None => Ok(ZeroDivisorCheck::NotZeroDivisor),
        }
    }

    /// Right zero-divisor test with witness: a nonzero `c` with `c * self = 0`.
    pub fn right_zero_divisor(&self) -> Result<ZeroDivisorCheck, Error> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        match self.right_mul_matrix().kernel_vector() {
            Some(coords) => {
                let witness = Element { algebra: Arc::clone(&self.algebra), coords };
                debug_assert!(witness.mul(self).unwrap().is_zero());
                Ok(ZeroDivisorCheck::Witness(witness))
            }
            None => Ok(ZeroDivisorCheck::NotZeroDivisor),
        }
    }
}
