//! Exact dense linear algebra over rational scalars.
//!
//! Determinants and kernels go through fraction-free (Bareiss) elimination on
//! denominator-cleared integer matrices; solves and inverses use rational
//! Gauss-Jordan. Pivoting is always "first nonzero from the top", never by
//! magnitude, so every routine is deterministic.

use crate::scalar::{format_scalar, Scalar};
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use std::fmt;

/// A square matrix of exact rationals acting on coordinate vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    size: usize,
    entries: Vec<Scalar>, // row-major, size * size
}

/// Outcome of solving `M x = b` when `M` may be singular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearOutcome {
    Unique(Vec<Scalar>),
    Inconsistent,
    /// Solutions form an affine space; the representative sets every free
    /// variable (in elimination order) to zero.
    Underdetermined { particular: Vec<Scalar> },
}

impl OperatorMatrix {
    pub fn zero(size: usize) -> Self {
        OperatorMatrix { size, entries: vec![Scalar::zero(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                entries.push(f(r, c));
            }
        }
        OperatorMatrix { size, entries }
    }

    /// Builds from rows; panics unless the rows form a square matrix.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "rows must form a square matrix");
        OperatorMatrix { size, entries: rows.into_iter().flatten().collect() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn at(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.size + col]
    }

    pub fn at_mut(&mut self, row: usize, col: usize) -> &mut Scalar {
        &mut self.entries[row * self.size + col]
    }

    pub fn row(&self, row: usize) -> &[Scalar] {
        &self.entries[row * self.size..(row + 1) * self.size]
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size, "matrix sizes must agree");
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        OperatorMatrix { size: self.size, entries }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        OperatorMatrix { size: self.size, entries: self.entries.iter().map(|a| a * s).collect() }
    }

    /// Matrix product `self * other`: composition, `other` applied first.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size, "matrix sizes must agree");
        let n = self.size;
        let mut out = Self::zero(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    *out.at_mut(r, c) += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.size, "vector length must match matrix size");
        let n = self.size;
        let mut out = vec![Scalar::zero(); n];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for r in 0..n {
                let a = self.at(r, c);
                if !a.is_zero() {
                    out[r] += a * x;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.size).all(|r| {
            (0..self.size).all(|c| {
                if r == c {
                    self.at(r, c).is_one()
                } else {
                    self.at(r, c).is_zero()
                }
            })
        })
    }

    /// Exact determinant via fraction-free elimination.
    pub fn determinant(&self) -> Scalar {
        let n = self.size;
        if n == 0 {
            return Scalar::one();
        }
        let (mut m, multipliers) = self.cleared_rows();
        let (pivots, sign) = bareiss_echelon(&mut m);
        if pivots.len() < n {
            return Scalar::zero();
        }
        let det_int = m[n - 1][n - 1].clone();
        let mut denom = BigInt::one();
        for f in multipliers {
            denom *= f;
        }
        let signed = if sign < 0 { -det_int } else { det_int };
        Scalar::new(signed, denom)
    }

    pub fn rank(&self) -> usize {
        let (mut m, _) = self.cleared_rows();
        bareiss_echelon(&mut m).0.len()
    }

    /// A deterministic nonzero kernel vector, or `None` when nonsingular.
    ///
    /// Elimination is fraction-free with first-nonzero pivoting; the returned
    /// vector is the kernel basis vector for the first pivot-free column,
    /// scaled to integers with content 1 and a positive leading nonzero entry.
    pub fn kernel_vector(&self) -> Option<Vec<Scalar>> {
        let n = self.size;
        if n == 0 {
            return None;
        }
        let (mut m, _) = self.cleared_rows();
        let (pivots, _) = bareiss_echelon(&mut m);
        let free = (0..n).find(|c| !pivots.iter().any(|&(_, pc)| pc == *c))?;
        let mut x = vec![Scalar::zero(); n];
        x[free] = Scalar::one();
        // echelon rows have zeros left of their pivot, so back-substitution in
        // decreasing pivot-column order only ever reads already-known entries
        for &(r, c) in pivots.iter().rev() {
            let mut acc = Scalar::zero();
            for j in c + 1..n {
                if !x[j].is_zero() && !m[r][j].is_zero() {
                    acc += Scalar::from_integer(m[r][j].clone()) * &x[j];
                }
            }
            x[c] = -acc / Scalar::from_integer(m[r][c].clone());
        }
        Some(normalize_integer_direction(&x))
    }

    /// Exact inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<OperatorMatrix> {
        let n = self.size;
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| {
                    if c == r {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                }));
                row
            })
            .collect();
        let pivots = rref(&mut aug, n);
        if pivots.len() < n {
            return None;
        }
        Some(OperatorMatrix::from_fn(n, |r, c| aug[r][n + c].clone()))
    }

    /// Solves `self * x = rhs`, reporting singular outcomes distinctly.
    pub fn solve(&self, rhs: &[Scalar]) -> LinearOutcome {
        let n = self.size;
        assert_eq!(rhs.len(), n, "right-hand side length must match matrix size");
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(rhs[r].clone());
                row
            })
            .collect();
        let pivots = rref(&mut aug, n);
        // a nonzero entry in the augmented column of a pivot-free row means
        // the system is inconsistent
        for r in pivots.len()..n {
            if !aug[r][n].is_zero() {
                return LinearOutcome::Inconsistent;
            }
        }
        let mut x = vec![Scalar::zero(); n];
        for &(r, c) in &pivots {
            x[c] = aug[r][n].clone();
        }
        if pivots.len() == n {
            LinearOutcome::Unique(x)
        } else {
            LinearOutcome::Underdetermined { particular: x }
        }
    }

    /// Writes the matrix as a sum of outer products `col * row`, one pair per
    /// pivot of the reduced row echelon form (a rank factorization). The zero
    /// matrix yields no pairs.
    pub fn rank_factorization(&self) -> Vec<(Vec<Scalar>, Vec<Scalar>)> {
        let n = self.size;
        let mut m: Vec<Vec<Scalar>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let pivots = rref(&mut m, n);
        pivots
            .iter()
            .map(|&(r, c)| {
                let col: Vec<Scalar> = (0..n).map(|i| self.at(i, c).clone()).collect();
                (col, m[r].clone())
            })
            .collect()
    }

    /// Per-row denominator clearing; returns integer rows and the multiplier
    /// applied to each row.
    fn cleared_rows(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let n = self.size;
        let mut rows = Vec::with_capacity(n);
        let mut multipliers = Vec::with_capacity(n);
        for r in 0..n {
            let mut l = BigInt::one();
            for c in 0..n {
                l = l.lcm(self.at(r, c).denom());
            }
            let row: Vec<BigInt> = (0..n)
                .map(|c| {
                    let s = self.at(r, c);
                    s.numer() * (&l / s.denom())
                })
                .collect();
            rows.push(row);
            multipliers.push(l);
        }
        (rows, multipliers)
    }
}

impl fmt::Debug for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "OperatorMatrix({}x{}) [", self.size, self.size)?;
        for r in 0..self.size {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Fraction-free row echelon form in place. Returns the pivot list
/// `(row, col)` in elimination order and the sign of the row permutation.
///
/// Divisions in the Bareiss update are exact by Sylvester's identity, so all
/// intermediate entries stay integral.
fn bareiss_echelon(m: &mut [Vec<BigInt>]) -> (Vec<(usize, usize)>, i8) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = &m[i][j] * &m[r][c] - &m[i][c] * &m[r][j];
                m[i][j] = t / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push((r, c));
        r += 1;
    }
    (pivots, sign)
}

/// Rational reduced row echelon form in place over rectangular rows.
/// Only the first `pivot_cols` columns are eligible for pivots; elimination
/// spans the full width. Returns pivots `(row, col)` in elimination order.
fn rref(m: &mut [Vec<Scalar>], pivot_cols: usize) -> Vec<(usize, usize)> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        let pivot = m[r][c].clone();
        for j in c..cols {
            let v = std::mem::replace(&mut m[r][j], Scalar::zero());
            m[r][j] = v / &pivot;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone();
            for j in c..cols {
                let sub = &factor * &m[r][j];
                m[i][j] -= sub;
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// Scales a rational vector to integers with content 1 and a positive first
/// nonzero entry. The zero vector is returned unchanged.
fn normalize_integer_direction(x: &[Scalar]) -> Vec<Scalar> {
    let mut l = BigInt::one();
    for v in x {
        l = l.lcm(v.denom());
    }
    let mut ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&l / v.denom())).collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if g.is_zero() {
        return x.to_vec();
    }
    for v in &mut ints {
        *v = &*v / &g;
    }
    if let Some(first) = ints.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            for v in &mut ints {
                *v = -v.clone();
            }
        }
    }
    ints.into_iter().map(Scalar::from_integer).collect()
}
