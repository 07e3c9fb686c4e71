//! Coefficient tensors for polynomial maps on an algebra.
//!
//! A tensor of arity `r` over an `n`-dimensional algebra stores `n^r` dense
//! rational coordinates, slot-major (the last slot varies fastest). It
//! represents the homogeneous map
//!
//! ```text
//! t(x) = sum over (i1..ir) of  t[i1,..,ir] * e_i1 * x * e_i2 * x * ... * x * e_ir
//! ```
//!
//! of degree `r - 1` in `x` (arity 1 encodes a constant). Multiplying two
//! such maps pointwise corresponds to [`Tensor::contract_product`], which
//! fuses the last slot of the left factor with the first slot of the right
//! factor through the structure constants. Arity-2 tensors are linear maps;
//! they expose an explicit [`OperatorMatrix`], singularity tests and an
//! inverse-map representative.
//!
//! When a tensor is built from decomposable summands (`a (x) b (x) c` terms)
//! the presentation is kept alongside the dense coordinates so results can be
//! reported in the same shape they were constructed in. The presentation is
//! display metadata: equality compares coordinates only.

use crate::algebra::{same_algebra, Algebra, Element};
use crate::linalg::{LinearOutcome, OperatorMatrix};
use crate::scalar::{format_scalar, parse_scalar, Scalar};
use crate::Error;
use num::Zero;
use serde_json::Value;
use std::fmt;
use std::sync::Arc;

/// Sums keep their decomposable presentation up to this many terms; beyond
/// it only dense coordinates survive.
const PRESENTATION_CAP: usize = 64;

/// Dense coefficient tensor of a homogeneous polynomial map.
#[derive(Clone)]
pub struct Tensor {
    algebra: Arc<Algebra>,
    arity: usize,
    /// `n^arity` coordinates, slot-major: index `((i1*n + i2)*n + ..)*n + ir`.
    coords: Vec<Scalar>,
    /// Decomposable presentation (sum of pure tensors), when one is known.
    presentation: Option<Vec<Vec<Element>>>,
}

impl PartialEq for Tensor {
    /// Coordinates are the identity; a remembered presentation is not.
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && same_algebra(&self.algebra, &other.algebra)
            && self.coords == other.coords
    }
}

impl Eq for Tensor {}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor(arity {}, {self})", self.arity)
    }
}

impl fmt::Display for Tensor {
    /// Decomposable presentation when known (`a (x) b + c (x) d`), otherwise
    /// the nonzero coordinates (`[0,1]: 2, ..`); `0` when zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(terms) = &self.presentation {
            if terms.is_empty() {
                return write!(f, "0");
            }
            for (t, term) in terms.iter().enumerate() {
                if t > 0 {
                    write!(f, " + ")?;
                }
                for (i, factor) in term.iter().enumerate() {
                    if i > 0 {
                        write!(f, " (x) ")?;
                    }
                    let s = factor.to_string();
                    if s.contains(' ') || s.starts_with('-') {
                        write!(f, "({s})")?;
                    } else {
                        write!(f, "{s}")?;
                    }
                }
            }
            return Ok(());
        }
        let n = self.algebra.dim();
        let mut first = true;
        for (flat, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            let mut idx = vec![0usize; self.arity];
            let mut rest = flat;
            for slot in (0..self.arity).rev() {
                idx[slot] = rest % n;
                rest /= n;
            }
            let idx_text: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
            write!(f, "[{}]: {}", idx_text.join(","), format_scalar(c))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Tensor {
    fn check_arity_bounds(algebra: &Algebra, arity: usize) -> Result<usize, Error> {
        if arity == 0 {
            return Err(Error::ShapeMismatch { what: "tensor arity", expected: 1, got: 0 });
        }
        if arity > algebra.max_arity() {
            return Err(Error::ArityCapExceeded { arity, max_arity: algebra.max_arity() });
        }
        algebra
            .dim()
            .checked_pow(arity as u32)
            .ok_or(Error::ArityCapExceeded { arity, max_arity: algebra.max_arity() })
    }

    /// The zero tensor of the given arity. Its presentation is the empty sum.
    pub fn zero(algebra: &Arc<Algebra>, arity: usize) -> Result<Tensor, Error> {
        let len = Self::check_arity_bounds(algebra, arity)?;
        Ok(Tensor {
            algebra: Arc::clone(algebra),
            arity,
            coords: vec![Scalar::zero(); len],
            presentation: Some(Vec::new()),
        })
    }

    /// `1 (x) 1`: the arity-2 tensor of the identity map `x -> x`.
    pub fn identity(algebra: &Arc<Algebra>) -> Result<Tensor, Error> {
        Self::decomposable(vec![Element::unit(algebra), Element::unit(algebra)])
    }

    /// A single pure tensor `f1 (x) f2 (x) .. (x) fr`.
    pub fn decomposable(factors: Vec<Element>) -> Result<Tensor, Error> {
        let algebra = match factors.first() {
            Some(f) => Arc::clone(f.algebra()),
            None => {
                return Err(Error::ShapeMismatch {
                    what: "decomposable factors",
                    expected: 1,
                    got: 0,
                })
            }
        };
        Self::from_decomposables(&algebra, vec![factors])
    }

    /// A sum of pure tensors; every term must list the same number of
    /// factors, all from `algebra`. The presentation is remembered.
    pub fn from_decomposables(
        algebra: &Arc<Algebra>,
        terms: Vec<Vec<Element>>,
    ) -> Result<Tensor, Error> {
        let arity = match terms.first() {
            Some(t) => t.len(),
            None => {
                return Err(Error::ShapeMismatch { what: "decomposable terms", expected: 1, got: 0 })
            }
        };
        let len = Self::check_arity_bounds(algebra, arity)?;
        let n = algebra.dim();
        for term in &terms {
            if term.len() != arity {
                return Err(Error::ShapeMismatch {
                    what: "decomposable factors",
                    expected: arity,
                    got: term.len(),
                });
            }
            for factor in term {
                if !same_algebra(factor.algebra(), algebra) {
                    return Err(Error::AlgebraMismatch);
                }
            }
        }
        let mut coords = vec![Scalar::zero(); len];
        for term in &terms {
            // iterated outer product over the nonzero coordinates
            let mut acc: Vec<(usize, Scalar)> = term[0]
                .coords()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect();
            for factor in &term[1..] {
                let mut next = Vec::with_capacity(acc.len());
                for (idx, v) in &acc {
                    for (j, c) in factor.coords().iter().enumerate() {
                        if !c.is_zero() {
                            next.push((idx * n + j, v * c));
                        }
                    }
                }
                acc = next;
            }
            for (idx, v) in acc {
                coords[idx] += v;
            }
        }
        let mut kept = terms;
        kept.retain(|term| term.iter().all(|f| !f.is_zero()));
        Ok(Tensor { algebra: Arc::clone(algebra), arity, coords, presentation: Some(kept) })
    }

    /// A tensor from raw slot-major coordinates (`n^arity` of them).
    pub fn from_dense(
        algebra: &Arc<Algebra>,
        arity: usize,
        coords: Vec<Scalar>,
    ) -> Result<Tensor, Error> {
        let len = Self::check_arity_bounds(algebra, arity)?;
        if coords.len() != len {
            return Err(Error::ShapeMismatch {
                what: "tensor coordinates",
                expected: len,
                got: coords.len(),
            });
        }
        Ok(Tensor { algebra: Arc::clone(algebra), arity, coords, presentation: None })
    }

    /// Internal zero tensor for arities already known to be in bounds
    /// (at or below the arity of an existing tensor).
    pub(crate) fn zero_unchecked(algebra: &Arc<Algebra>, arity: usize) -> Tensor {
        let len = algebra.dim().pow(arity as u32);
        Tensor {
            algebra: Arc::clone(algebra),
            arity,
            coords: vec![Scalar::zero(); len],
            presentation: Some(Vec::new()),
        }
    }

    /// Internal constructor for coordinates produced by validated arithmetic.
    pub(crate) fn from_raw(
        algebra: &Arc<Algebra>,
        arity: usize,
        coords: Vec<Scalar>,
        presentation: Option<Vec<Vec<Element>>>,
    ) -> Tensor {
        debug_assert_eq!(coords.len(), algebra.dim().pow(arity as u32));
        Tensor { algebra: Arc::clone(algebra), arity, coords, presentation }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// Coordinate at a multi-index (one index per slot).
    pub fn at(&self, indices: &[usize]) -> &Scalar {
        assert_eq!(indices.len(), self.arity, "index arity mismatch");
        let n = self.algebra.dim();
        let mut flat = 0usize;
        for &i in indices {
            assert!(i < n, "slot index out of range");
            flat = flat * n + i;
        }
        &self.coords[flat]
    }

    /// The decomposable presentation, when one was constructed or preserved.
    pub fn presentation(&self) -> Option<&[Vec<Element>]> {
        self.presentation.as_deref()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    fn check_same(&self, other: &Tensor) -> Result<(), Error> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor, Error> {
        self.check_same(other)?;
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got: other.arity });
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        let presentation = match (&self.presentation, &other.presentation) {
            (Some(a), Some(b)) if a.len() + b.len() <= PRESENTATION_CAP => {
                let mut terms = a.clone();
                terms.extend(b.iter().cloned());
                Some(terms)
            }
            _ => None,
        };
        Ok(Tensor { algebra: Arc::clone(&self.algebra), arity: self.arity, coords, presentation })
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Tensor {
        self.scale(&-num::one::<Scalar>())
    }

    pub fn scale(&self, s: &Scalar) -> Tensor {
        let coords = self.coords.iter().map(|c| c * s).collect();
        let presentation = if s.is_zero() {
            Some(Vec::new())
        } else {
            self.presentation.as_ref().map(|terms| {
                terms
                    .iter()
                    .map(|term| {
                        let mut scaled = term.clone();
                        scaled[0] = scaled[0].scale(s);
                        scaled
                    })
                    .collect()
            })
        };
        Tensor { algebra: Arc::clone(&self.algebra), arity: self.arity, coords, presentation }
    }

    /// Evaluates the map at `x` by folding slots from the right:
    /// each round replaces the last remaining slot `j` and the `x` before it
    /// with the element `e_j * (x * previous)`.
    pub fn apply(&self, x: &Element) -> Result<Element, Error> {
        if !same_algebra(&self.algebra, x.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let n = self.algebra.dim();
        let mut table = self.coords.clone();
        for _ in 1..self.arity {
            let out_chunks = table.len() / (n * n);
            let mut next = vec![Scalar::zero(); out_chunks * n];
            for p in 0..out_chunks {
                for j in 0..n {
                    let chunk = &table[(p * n + j) * n..(p * n + j) * n + n];
                    if chunk.iter().all(Scalar::is_zero) {
                        continue;
                    }
                    let y = self.algebra.mul_coords(x.coords(), chunk);
                    for (right, k, c) in self.algebra.by_left(j) {
                        if !y[*right].is_zero() {
                            next[p * n + k] += &y[*right] * c;
                        }
                    }
                }
            }
            table = next;
        }
        Element::new(&self.algebra, table)
    }

    /// The tensor of the pointwise product of two maps:
    /// `(self * other)(x) = self(x) * other(x)`. The last slot of `self`
    /// fuses with the first slot of `other` through the structure constants;
    /// arities combine as `p + q - 1`.
    pub fn contract_product(&self, other: &Tensor) -> Result<Tensor, Error> {
        self.check_same(other)?;
        let n = self.algebra.dim();
        let p = self.arity;
        let q = other.arity;
        let arity = p + q - 1;
        Self::check_arity_bounds(&self.algebra, arity)?;
        let i_count = n.pow((p - 1) as u32);
        let j_count = n.pow((q - 1) as u32);

        // stage 1: fuse[I, m, t] = sum_s self[I, s] * C^m_st
        let mut fuse = vec![Scalar::zero(); i_count * n * n];
        for big_i in 0..i_count {
            for s in 0..n {
                let a = &self.coords[big_i * n + s];
                if a.is_zero() {
                    continue;
                }
                for (t, m, c) in self.algebra.by_left(s) {
                    fuse[(big_i * n + m) * n + t] += a * c;
                }
            }
        }

        // stage 2: out[I, m, J] = sum_t fuse[I, m, t] * other[t, J]
        let mut coords = vec![Scalar::zero(); i_count * n * j_count];
        for big_i in 0..i_count {
            for m in 0..n {
                let out_base = (big_i * n + m) * j_count;
                for t in 0..n {
                    let w = &fuse[(big_i * n + m) * n + t];
                    if w.is_zero() {
                        continue;
                    }
                    let other_base = t * j_count;
                    for jj in 0..j_count {
                        let bv = &other.coords[other_base + jj];
                        if !bv.is_zero() {
                            coords[out_base + jj] += w * bv;
                        }
                    }
                }
            }
        }

        // pure tensors multiply term by term: the adjacent factors fuse
        let presentation = match (&self.presentation, &other.presentation) {
            (Some(a_terms), Some(b_terms))
                if a_terms.len().saturating_mul(b_terms.len()) <= PRESENTATION_CAP =>
            {
                let mut terms = Vec::with_capacity(a_terms.len() * b_terms.len());
                for at in a_terms {
                    for bt in b_terms {
                        let mut factors = at[..p - 1].to_vec();
                        factors.push(at[p - 1].mul(&bt[0])?);
                        factors.extend_from_slice(&bt[1..]);
                        terms.push(factors);
                    }
                }
                terms.retain(|term| term.iter().all(|f| !f.is_zero()));
                Some(terms)
            }
            _ => None,
        };

        Ok(Tensor { algebra: Arc::clone(&self.algebra), arity, coords, presentation })
    }

    fn require_arity_two(&self) -> Result<(), Error> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch { expected: 2, got: self.arity });
        }
        Ok(())
    }

    /// The matrix of the linear map of an arity-2 tensor:
    /// `M[k][j]` is the `e_k` coordinate of `sum_{i,l} t[i,l] e_i e_j e_l`.
    pub fn operator_matrix(&self) -> Result<OperatorMatrix, Error> {
        self.require_arity_two()?;
        let n = self.algebra.dim();
        let mut mat = OperatorMatrix::zero(n);
        for i in 0..n {
            for l in 0..n {
                let w = &self.coords[i * n + l];
                if w.is_zero() {
                    continue;
                }
                for j in 0..n {
                    for (p, v) in self.algebra.product_slice(i, j).iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        for (k, c) in self.algebra.product_slice(p, l).iter().enumerate() {
                            if !c.is_zero() {
                                *mat.at_mut(k, j) += w * v * c;
                            }
                        }
                    }
                }
            }
        }
        Ok(mat)
    }

    /// Whether the linear map of an arity-2 tensor is invertible.
    pub fn is_nonsingular(&self) -> Result<bool, Error> {
        Ok(!self.operator_matrix()?.determinant().is_zero())
    }

    /// Whether the linear map of an arity-2 tensor is the zero map. Nonzero
    /// coordinates can still give the zero map (`eps (x) eps` over the dual
    /// numbers kills every `x`), so this tests the operator, not the
    /// coordinates.
    pub fn vanishes_identically(&self) -> Result<bool, Error> {
        Ok(self.operator_matrix()?.is_zero())
    }

    /// A tensor whose map inverts this one's: applies undo each other on
    /// every element. Fails with `SingularTensor` when the map has no
    /// inverse, and `NotRepresentable` when the inverse map exists but no
    /// tensor over this algebra produces it. When several tensors produce
    /// the inverse map, a deterministic representative is returned.
    pub fn invert(&self) -> Result<Tensor, Error> {
        let m = self.operator_matrix()?;
        let minv = m.inverse().ok_or(Error::SingularTensor)?;
        let n = self.algebra.dim();
        let size = n * n;
        // g[(k,j), (p,q)] = e_k coordinate of e_p e_j e_q: the linear system
        // expressing "operator_matrix(c) = minv" in the unknown coordinates c
        let mut g = OperatorMatrix::zero(size);
        for j in 0..n {
            for p in 0..n {
                for (mm, c1) in self.algebra.product_slice(p, j).iter().enumerate() {
                    if c1.is_zero() {
                        continue;
                    }
                    for q in 0..n {
                        for (k, c2) in self.algebra.product_slice(mm, q).iter().enumerate() {
                            if !c2.is_zero() {
                                *g.at_mut(k * n + j, p * n + q) += c1 * c2;
                            }
                        }
                    }
                }
            }
        }
        let rhs: Vec<Scalar> = (0..size).map(|r| minv.at(r / n, r % n).clone()).collect();
        let coords = match g.solve(&rhs) {
            LinearOutcome::Unique(v) => v,
            LinearOutcome::Underdetermined { particular } => particular,
            LinearOutcome::Inconsistent => return Err(Error::NotRepresentable),
        };
        let inv =
            Tensor { algebra: Arc::clone(&self.algebra), arity: 2, coords, presentation: None };
        debug_assert_eq!(inv.operator_matrix().unwrap(), minv);
        Ok(inv)
    }

    /// Serializes to canonical JSON: nested slot-major arrays of rational
    /// strings, outermost array indexed by the first slot.
    pub fn to_json(&self) -> String {
        let v = serde_json::json!({
            "dim": self.algebra.dim(),
            "arity": self.arity,
            "coords": coords_to_value(&self.coords, self.arity, self.algebra.dim()),
        });
        serde_json::to_string_pretty(&v).expect("tensor serialization cannot fail")
    }

    /// Parses the JSON produced by [`Tensor::to_json`] against an algebra.
    pub fn from_json(algebra: &Arc<Algebra>, text: &str) -> Result<Tensor, Error> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| Error::InvalidTensorFile { message: e.to_string() })?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::InvalidTensorFile { message: "expected an object".into() })?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidTensorFile { message: "missing dim".into() })?
            as usize;
        if dim != algebra.dim() {
            return Err(Error::ShapeMismatch {
                what: "tensor dimension",
                expected: algebra.dim(),
                got: dim,
            });
        }
        let arity = obj
            .get("arity")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidTensorFile { message: "missing arity".into() })?
            as usize;
        let len = Self::check_arity_bounds(algebra, arity)?;
        let coords_value = obj
            .get("coords")
            .ok_or_else(|| Error::InvalidTensorFile { message: "missing coords".into() })?;
        let mut coords = Vec::with_capacity(len);
        coords_from_value(coords_value, arity, algebra.dim(), &mut coords)?;
        Self::from_dense(algebra, arity, coords)
    }
}

/// Slot-major coordinates as nested JSON arrays of rational strings.
pub(crate) fn coords_to_value(coords: &[Scalar], arity: usize, n: usize) -> Value {
    if arity == 1 {
        Value::Array(coords.iter().map(|c| Value::String(format_scalar(c))).collect())
    } else {
        let chunk = coords.len() / n;
        Value::Array(
            (0..n)
                .map(|i| coords_to_value(&coords[i * chunk..(i + 1) * chunk], arity - 1, n))
                .collect(),
        )
    }
}

/// Inverse of [`coords_to_value`]: checks every axis has exactly `n` entries.
pub(crate) fn coords_from_value(
    v: &Value,
    arity: usize,
    n: usize,
    out: &mut Vec<Scalar>,
) -> Result<(), Error> {
    let arr = v.as_array().ok_or_else(|| Error::InvalidTensorFile {
        message: "coords must be nested arrays".into(),
    })?;
    if arr.len() != n {
        return Err(Error::InvalidTensorFile {
            message: format!("expected {} entries per axis, found {}", n, arr.len()),
        });
    }
    for entry in arr {
        if arity == 1 {
            let s = entry.as_str().ok_or_else(|| Error::InvalidTensorFile {
                message: "coordinates must be rational strings".into(),
            })?;
            out.push(parse_scalar(s)?);
        } else {
            coords_from_value(entry, arity - 1, n, out)?;
        }
    }
    Ok(())
}

/// A linear equation `t(x) = rhs` for an arity-2 tensor `t`.
pub struct LinearEquation {
    operator: Tensor,
    rhs: Element,
}

/// Full solution classification for [`LinearEquation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Element),
    NoSolution,
    /// Solutions form an affine subspace; a deterministic representative is
    /// reported.
    Underdetermined { particular: Element },
}

impl LinearEquation {
    pub fn new(operator: Tensor, rhs: Element) -> Result<LinearEquation, Error> {
        if operator.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, got: operator.arity() });
        }
        if !same_algebra(operator.algebra(), rhs.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(LinearEquation { operator, rhs })
    }

    pub fn operator(&self) -> &Tensor {
        &self.operator
    }

    pub fn rhs(&self) -> &Element {
        &self.rhs
    }

    /// The unique solution; errors with `SingularTensor` when the operator
    /// is singular (use [`LinearEquation::solve_allowing_singular`] then).
    pub fn solve(&self) -> Result<Element, Error> {
        match self.solve_allowing_singular()? {
            LinearSolution::Unique(x) => Ok(x),
            LinearSolution::NoSolution | LinearSolution::Underdetermined { .. } => {
                Err(Error::SingularTensor)
            }
        }
    }

    /// Classifies the solution set even for singular operators.
    pub fn solve_allowing_singular(&self) -> Result<LinearSolution, Error> {
        let m = self.operator.operator_matrix()?;
        Ok(match m.solve(self.rhs.coords()) {
            LinearOutcome::Unique(v) => {
                LinearSolution::Unique(Element::new(self.operator.algebra(), v)?)
            }
            LinearOutcome::Inconsistent => LinearSolution::NoSolution,
            LinearOutcome::Underdetermined { particular } => LinearSolution::Underdetermined {
                particular: Element::new(self.operator.algebra(), particular)?,
            },
        })
    }
}
