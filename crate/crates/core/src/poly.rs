//! Polynomials in one noncommuting variable over an algebra.
//!
//! A [`Polynomial`] is a ladder of coefficient [`Tensor`]s: the degree-`k`
//! part has arity `k + 1` (its slots interleave with `k` copies of the
//! variable). Addition and scaling work degreewise; multiplication is the
//! convolution of tensor contractions, so `(p * q)(x) = p(x) * q(x)` holds
//! exactly, and degrees can genuinely drop when coefficient contractions
//! vanish (over the dual numbers, `(x * eps) * (eps * x)` is the zero
//! polynomial).
//!
//! The centerpiece is reduction by an affine divisor `d(x) = p0 + p1(x)`
//! whose linear part `p1` is nonsingular: [`Polynomial::reduce_by_linear_affine`]
//! rewrites any `r` as
//!
//! ```text
//! r(x) = remainder + sum over terms of  u(x) * d(x) * v    (Side::Right)
//! r(x) = remainder + sum over terms of  v * d(x) * u(x)    (Side::Left)
//! ```
//!
//! with a constant remainder, constant outer factors `v`, and polynomial
//! cofactors `u`. The algorithm substitutes the inverse of `p1` for one
//! occurrence of the variable at a time; affine divisors feed the leftover
//! `p0`-carry back in at one degree lower, so the rewriting terminates.

use crate::algebra::{same_algebra, Algebra, Element};
use crate::linalg::OperatorMatrix;
use crate::scalar::Scalar;
use crate::tensor::{coords_from_value, coords_to_value, Tensor};
use crate::{Error, Side};
use num::Zero;
use serde_json::Value;
use std::fmt;
use std::sync::Arc;

/// A polynomial in one noncommuting variable, stored as a coefficient
/// ladder: `coeffs[k]` is the arity-`k+1` tensor of the degree-`k` part.
/// The ladder is trimmed (the last entry is nonzero); the zero polynomial
/// has an empty ladder.
#[derive(Clone)]
pub struct Polynomial {
    algebra: Arc<Algebra>,
    coeffs: Vec<Tensor>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.coeffs == other.coeffs
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    /// Degree parts joined by ` + `. Decomposable parts print as words
    /// (`E11 x E22`, unit factors elided); dense parts fall back to a
    /// coordinate listing tagged with their degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let unit = Element::unit(&self.algebra);
        let mut first = true;
        for (k, t) in self.coeffs.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            match t.presentation() {
                Some(terms) if !terms.is_empty() => {
                    for term in terms {
                        if !first {
                            write!(f, " + ")?;
                        }
                        first = false;
                        let mut parts: Vec<String> = Vec::new();
                        for (slot, factor) in term.iter().enumerate() {
                            if term.len() == 1 || *factor != unit {
                                let s = factor.to_string();
                                if s.contains(' ') || s.starts_with('-') {
                                    parts.push(format!("({s})"));
                                } else {
                                    parts.push(s);
                                }
                            }
                            if slot + 1 < term.len() {
                                parts.push("x".to_string());
                            }
                        }
                        write!(f, "{}", parts.join(" "))?;
                    }
                }
                _ if k == 0 => {
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    let c = self.constant_part();
                    let s = c.to_string();
                    if s.contains(" + ") || s.starts_with('-') {
                        write!(f, "({s})")?;
                    } else {
                        write!(f, "{s}")?;
                    }
                }
                _ => {
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    write!(f, "[deg {k}] {t}")?;
                }
            }
        }
        Ok(())
    }
}

impl Polynomial {
    pub fn zero(algebra: &Arc<Algebra>) -> Polynomial {
        Polynomial { algebra: Arc::clone(algebra), coeffs: Vec::new() }
    }

    /// The constant polynomial with value `c`.
    pub fn constant(c: &Element) -> Polynomial {
        let algebra = Arc::clone(c.algebra());
        if c.is_zero() {
            return Self::zero(&algebra);
        }
        let t = Tensor::from_raw(&algebra, 1, c.coords().to_vec(), Some(vec![vec![c.clone()]]));
        Polynomial { algebra, coeffs: vec![t] }
    }

    /// The variable itself: `p(x) = x`, coefficient tensor `1 (x) 1`.
    pub fn x(algebra: &Arc<Algebra>) -> Result<Polynomial, Error> {
        Ok(Self::homogeneous(Tensor::identity(algebra)?))
    }

    /// The homogeneous polynomial of degree `t.arity() - 1` with coefficient
    /// tensor `t`.
    pub fn homogeneous(t: Tensor) -> Polynomial {
        let algebra = Arc::clone(t.algebra());
        if t.is_zero() {
            return Self::zero(&algebra);
        }
        let mut coeffs: Vec<Tensor> =
            (1..t.arity()).map(|a| Tensor::zero_unchecked(&algebra, a)).collect();
        coeffs.push(t);
        Polynomial { algebra, coeffs }
    }

    /// Builds a polynomial from explicit per-degree tensors; `coeffs[k]`
    /// must have arity `k + 1`.
    pub fn from_coeffs(algebra: &Arc<Algebra>, coeffs: Vec<Tensor>) -> Result<Polynomial, Error> {
        for (k, t) in coeffs.iter().enumerate() {
            if !same_algebra(t.algebra(), algebra) {
                return Err(Error::AlgebraMismatch);
            }
            if t.arity() != k + 1 {
                return Err(Error::ArityLadderViolation {
                    degree: k,
                    expected_arity: k + 1,
                    got_arity: t.arity(),
                });
            }
        }
        let mut p = Polynomial { algebra: Arc::clone(algebra), coeffs };
        p.trim();
        Ok(p)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Tensor::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Option<&Tensor> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[Tensor] {
        &self.coeffs
    }

    /// The constant term as an element (zero when absent).
    pub fn constant_part(&self) -> Element {
        match self.coeffs.first() {
            Some(t) => Element::new(&self.algebra, t.coords().to_vec())
                .expect("arity-1 coefficient has dim coordinates"),
            None => Element::zero(&self.algebra),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), Error> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_same(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            let t = match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a.add(b)?,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            coeffs.push(t);
        }
        let mut p = Polynomial { algebra: Arc::clone(&self.algebra), coeffs };
        p.trim();
        Ok(p)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().map(Tensor::neg).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        if s.is_zero() {
            return Self::zero(&self.algebra);
        }
        Polynomial {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().map(|t| t.scale(s)).collect(),
        }
    }

    /// The ring product: convolution of coefficient contractions, so
    /// `(p * q)(x) = p(x) * q(x)` for every `x`. Fails with
    /// `ArityCapExceeded` when the result's top arity would pass the
    /// algebra's cap.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.algebra));
        }
        let da = self.coeffs.len() - 1;
        let db = other.coeffs.len() - 1;
        // fail before allocating the ladder: the top contraction needs
        // arity da + db + 1 even if its coordinates turn out zero
        if da + db + 1 > self.algebra.max_arity() {
            return Err(Error::ArityCapExceeded {
                arity: da + db + 1,
                max_arity: self.algebra.max_arity(),
            });
        }
        let mut coeffs: Vec<Tensor> =
            (0..=da + db).map(|k| Tensor::zero_unchecked(&self.algebra, k + 1)).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a.contract_product(b)?;
                coeffs[i + j] = coeffs[i + j].add(&prod)?;
            }
        }
        let mut p = Polynomial { algebra: Arc::clone(&self.algebra), coeffs };
        p.trim();
        Ok(p)
    }

    /// Repeated multiplication; `pow(0)` is the constant one.
    pub fn pow(&self, e: u32) -> Result<Polynomial, Error> {
        let mut acc = Polynomial::constant(&Element::unit(&self.algebra));
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Evaluates the polynomial at `x` (sum of the coefficient maps).
    pub fn eval(&self, x: &Element) -> Result<Element, Error> {
        let mut acc = Element::zero(&self.algebra);
        for t in &self.coeffs {
            if !t.is_zero() {
                acc = acc.add(&t.apply(x)?)?;
            }
        }
        Ok(acc)
    }

    /// Reduction by a homogeneous linear divisor `d(x) = p1(x)`.
    pub fn reduce_by_linear_homogeneous(
        &self,
        p1: &Tensor,
        side: Side,
    ) -> Result<ReductionResult, Error> {
        self.reduce_by_linear_affine(&Element::zero(&self.algebra), p1, side)
    }

    /// Rewrites this polynomial as `remainder + sum of u * d * v`
    /// (`Side::Right`) or `remainder + sum of v * d * u` (`Side::Left`) for
    /// the affine divisor `d(x) = p0 + p1(x)`, where each `v` is a constant
    /// and each `u` a polynomial cofactor.
    ///
    /// Requires `p1` to be an arity-2 tensor whose linear map is invertible
    /// with a tensor-representable inverse (`SingularTensor` /
    /// `NotRepresentable` otherwise). The construction substitutes
    /// `x = sum_s c'_s * p1(x) * c''_s` (from a rank factorization of the
    /// inverse tensor) for the outermost variable occurrence of every
    /// monomial, then recurses on the `p0`-carry, whose degree is strictly
    /// smaller.
    pub fn reduce_by_linear_affine(
        &self,
        p0: &Element,
        p1: &Tensor,
        side: Side,
    ) -> Result<ReductionResult, Error> {
        if !same_algebra(p0.algebra(), &self.algebra) || !same_algebra(p1.algebra(), &self.algebra)
        {
            return Err(Error::AlgebraMismatch);
        }
        if p1.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, got: p1.arity() });
        }
        let n = self.algebra.dim();
        let c = p1.invert()?;
        let cmat = OperatorMatrix::from_fn(n, |p, q| c.coords()[p * n + q].clone());
        let factor_pairs = cmat.rank_factorization();
        let outer: Vec<Element> = factor_pairs
            .iter()
            .map(|(col, _)| Element::new(&self.algebra, col.clone()))
            .collect::<Result<_, _>>()?;
        let inner: Vec<Element> = factor_pairs
            .iter()
            .map(|(_, row)| Element::new(&self.algebra, row.clone()))
            .collect::<Result<_, _>>()?;
        // Right side folds the outer factor into the slot before the last
        // variable (right multiplication); Left side folds the inner factor
        // into the slot after the first variable (left multiplication).
        let fold_mats: Vec<OperatorMatrix> = match side {
            Side::Right => outer.iter().map(Element::right_mul_matrix).collect(),
            Side::Left => inner.iter().map(Element::left_mul_matrix).collect(),
        };

        let mut terms: Vec<(Polynomial, Element)> = Vec::new();
        let mut remainder = Element::zero(&self.algebra);
        let mut acc = self.clone();
        loop {
            remainder = remainder.add(&acc.constant_part())?;
            let Some(top) = acc.degree().filter(|d| *d > 0) else { break };
            let mut carry = Polynomial::zero(&self.algebra);
            for k in 1..=top {
                let rk = &acc.coeffs[k];
                if rk.is_zero() {
                    continue;
                }
                let heads = n.pow((k - 1) as u32);
                for s in 0..factor_pairs.len() {
                    let fold = &fold_mats[s];
                    for slot in 0..n {
                        // the fixed basis index in the outermost slot
                        let v = match side {
                            Side::Right => inner[s].mul(&Element::basis(&self.algebra, slot)?)?,
                            Side::Left => Element::basis(&self.algebra, slot)?.mul(&outer[s])?,
                        };
                        if v.is_zero() {
                            continue;
                        }
                        let mut u_coords = vec![Scalar::zero(); heads * n];
                        match side {
                            Side::Right => {
                                // u[head, j] = sum_t rk[head, t, slot] * fold[j][t]
                                for head in 0..heads {
                                    for t in 0..n {
                                        let r = &rk.coords()[(head * n + t) * n + slot];
                                        if r.is_zero() {
                                            continue;
                                        }
                                        for j in 0..n {
                                            let m = fold.at(j, t);
                                            if !m.is_zero() {
                                                u_coords[head * n + j] += r * m;
                                            }
                                        }
                                    }
                                }
                            }
                            Side::Left => {
                                // u[j, tail] = sum_t fold[j][t] * rk[slot, t, tail]
                                for t in 0..n {
                                    let base = (slot * n + t) * heads;
                                    for tail in 0..heads {
                                        let r = &rk.coords()[base + tail];
                                        if r.is_zero() {
                                            continue;
                                        }
                                        for j in 0..n {
                                            let m = fold.at(j, t);
                                            if !m.is_zero() {
                                                u_coords[j * heads + tail] += r * m;
                                            }
                                        }
                                    }
                                }
                            }
                        }
                        if u_coords.iter().all(Scalar::is_zero) {
                            continue;
                        }
                        let u = Polynomial::homogeneous(Tensor::from_raw(
                            &self.algebra,
                            k,
                            u_coords,
                            None,
                        ));
                        // d = p0 + p1 means an extra -u * (p0 v) (Right) or
                        // -(v p0) * u (Left) one degree down
                        let carry_term = match side {
                            Side::Right => u.mul(&Polynomial::constant(&p0.mul(&v)?))?,
                            Side::Left => Polynomial::constant(&v.mul(p0)?).mul(&u)?,
                        };
                        carry = carry.sub(&carry_term)?;
                        terms.push((u, v));
                    }
                }
            }
            acc = carry;
        }

        let terms = merge_terms(terms)?;
        Ok(ReductionResult {
            divisor_constant: p0.clone(),
            divisor_tensor: p1.clone(),
            side,
            remainder,
            terms,
        })
    }

    /// Whether reduction by `d(x) = p0 + p1(x)` leaves remainder zero, i.e.
    /// the polynomial lies in the one-sided span of `d`.
    pub fn is_reducible_to_zero(
        &self,
        p0: &Element,
        p1: &Tensor,
        side: Side,
    ) -> Result<bool, Error> {
        Ok(self.reduce_by_linear_affine(p0, p1, side)?.remainder().is_zero())
    }

    /// Serializes as `{dim, coeffs}` with one nested slot-major array per
    /// degree.
    pub fn to_json(&self) -> String {
        let n = self.algebra.dim();
        let coeffs: Vec<Value> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, t)| coords_to_value(t.coords(), k + 1, n))
            .collect();
        let v = serde_json::json!({ "dim": n, "coeffs": coeffs });
        serde_json::to_string_pretty(&v).expect("polynomial serialization cannot fail")
    }

    /// Parses the JSON produced by [`Polynomial::to_json`].
    pub fn from_json(algebra: &Arc<Algebra>, text: &str) -> Result<Polynomial, Error> {
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
                what: "polynomial dimension",
                expected: algebra.dim(),
                got: dim,
            });
        }
        let coeff_values = obj
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidTensorFile { message: "missing coeffs".into() })?;
        let mut coeffs = Vec::with_capacity(coeff_values.len());
        for (k, cv) in coeff_values.iter().enumerate() {
            let mut coords = Vec::new();
            coords_from_value(cv, k + 1, dim, &mut coords)?;
            coeffs.push(Tensor::from_dense(algebra, k + 1, coords)?);
        }
        Self::from_coeffs(algebra, coeffs)
    }
}

/// Combines reduction terms that share a polynomial cofactor (summing the
/// constants), then terms that share a constant (summing the polynomials),
/// and drops vanished terms. Order follows first appearance, so the output
/// is deterministic.
fn merge_terms(
    terms: Vec<(Polynomial, Element)>,
) -> Result<Vec<(Polynomial, Element)>, Error> {
    let mut by_u: Vec<(Polynomial, Element)> = Vec::new();
    for (u, v) in terms {
        if let Some(entry) = by_u.iter_mut().find(|(eu, _)| *eu == u) {
            entry.1 = entry.1.add(&v)?;
        } else {
            by_u.push((u, v));
        }
    }
    let mut by_v: Vec<(Polynomial, Element)> = Vec::new();
    for (u, v) in by_u {
        if let Some(entry) = by_v.iter_mut().find(|(_, ev)| *ev == v) {
            entry.0 = entry.0.add(&u)?;
        } else {
            by_v.push((u, v));
        }
    }
    by_v.retain(|(u, v)| !u.is_zero() && !v.is_zero());
    Ok(by_v)
}

/// The outcome of reducing a polynomial by an affine linear divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    divisor_constant: Element,
    divisor_tensor: Tensor,
    side: Side,
    remainder: Element,
    terms: Vec<(Polynomial, Element)>,
}

impl ReductionResult {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn remainder(&self) -> &Element {
        &self.remainder
    }

    /// The `(u, v)` pairs: the rewriting reads `sum of u(x) * d(x) * v` on
    /// `Side::Right` and `sum of v * d(x) * u(x)` on `Side::Left`.
    pub fn terms(&self) -> &[(Polynomial, Element)] {
        &self.terms
    }

    /// The divisor `d(x) = p0 + p1(x)` as a polynomial.
    pub fn divisor(&self) -> Polynomial {
        Polynomial::constant(&self.divisor_constant)
            .add(&Polynomial::homogeneous(self.divisor_tensor.clone()))
            .expect("same algebra by construction")
    }

    /// Evaluates the right-hand side of the rewriting at `x`.
    pub fn combined(&self, x: &Element) -> Result<Element, Error> {
        let d = self.divisor().eval(x)?;
        let mut acc = self.remainder.clone();
        for (u, v) in &self.terms {
            let ux = u.eval(x)?;
            let term = match self.side {
                Side::Right => ux.mul(&d)?.mul(v)?,
                Side::Left => v.mul(&d)?.mul(&ux)?,
            };
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Checks the rewriting against the original polynomial at one point.
    pub fn holds_at(&self, original: &Polynomial, x: &Element) -> Result<bool, Error> {
        Ok(original.eval(x)? == self.combined(x)?)
    }
}
