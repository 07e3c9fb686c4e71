//! Banded operators on one-sided scalar sequences.
//!
//! A [`BandOperator`] acts on sequences `s(0), s(1), ..` by
//!
//! ```text
//! (B s)(i) = sum over offsets d of  band_d(i) * s(i + d)
//! ```
//!
//! where each band coefficient [`DiagonalSequence`] is eventually constant
//! (a finite prefix followed by a repeating tail), so every operator is a
//! finite exact description of an infinite banded matrix.
//!
//! Values are kept canonical: for a negative offset `d` the first `-d`
//! coefficients multiply entries left of the sequence start and are forced
//! to zero, and vanished bands are dropped. Structural equality therefore
//! coincides with equality as operators, which makes exact non-truncated
//! identity checks possible.
//!
//! [`BandOperator::compose`] takes pipeline order: `a.compose(&b)` is "run
//! `a`, then run `b`". With the down shift `f` (prepends a zero), the up
//! shift `g` (drops the head) and the head projector `p`, the expected
//! one-sided shift relations hold exactly: `f` then `g` is the identity,
//! `f` then `p` and `p` then `g` vanish, while `g` then `f` only multiplies
//! by `0, 1, 1, ..`.

use crate::linalg::OperatorMatrix;
use crate::scalar::{format_scalar, Scalar};
use crate::Error;
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Largest allowed band offset magnitude; composition past it errors with
/// `BandOverflow` instead of growing without bound.
pub const MAX_BAND_WIDTH: i64 = 64;

/// An eventually-constant sequence of rationals: explicit `prefix` values,
/// then `tail` forever. Kept canonical (no trailing prefix entry equals the
/// tail), so structural equality is pointwise equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSequence {
    prefix: Vec<Scalar>,
    tail: Scalar,
}

impl DiagonalSequence {
    pub fn new(mut prefix: Vec<Scalar>, tail: Scalar) -> DiagonalSequence {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        DiagonalSequence { prefix, tail }
    }

    pub fn constant(tail: Scalar) -> DiagonalSequence {
        DiagonalSequence { prefix: Vec::new(), tail }
    }

    pub fn zero() -> DiagonalSequence {
        Self::constant(Scalar::zero())
    }

    pub fn at(&self, i: usize) -> &Scalar {
        self.prefix.get(i).unwrap_or(&self.tail)
    }

    pub fn prefix(&self) -> &[Scalar] {
        &self.prefix
    }

    pub fn tail(&self) -> &Scalar {
        &self.tail
    }

    pub fn is_zero(&self) -> bool {
        self.tail.is_zero() && self.prefix.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &DiagonalSequence) -> DiagonalSequence {
        let len = self.prefix.len().max(other.prefix.len());
        let prefix = (0..len).map(|i| self.at(i) + other.at(i)).collect();
        Self::new(prefix, &self.tail + &other.tail)
    }

    pub fn scale(&self, s: &Scalar) -> DiagonalSequence {
        Self::new(self.prefix.iter().map(|v| v * s).collect(), &self.tail * s)
    }

    fn mul_pointwise(&self, other: &DiagonalSequence) -> DiagonalSequence {
        let len = self.prefix.len().max(other.prefix.len());
        let prefix = (0..len).map(|i| self.at(i) * other.at(i)).collect();
        Self::new(prefix, &self.tail * &other.tail)
    }

    /// The sequence `i -> self(i + by)`, reading zero left of the start.
    fn shifted(&self, by: i64) -> DiagonalSequence {
        if by >= 0 {
            let by = by as usize;
            let prefix = self.prefix.iter().skip(by).cloned().collect();
            Self::new(prefix, self.tail.clone())
        } else {
            let m = (-by) as usize;
            let mut prefix = vec![Scalar::zero(); m];
            prefix.extend(self.prefix.iter().cloned());
            Self::new(prefix, self.tail.clone())
        }
    }

    /// Forces the first `m` values to zero (entries that would multiply
    /// nonexistent sequence positions).
    fn zero_head(&mut self, m: usize) {
        if self.prefix.len() < m {
            self.prefix.resize(m, self.tail.clone());
        }
        for v in &mut self.prefix[..m] {
            *v = Scalar::zero();
        }
        let tail = self.tail.clone();
        while self.prefix.last() == Some(&tail) {
            self.prefix.pop();
        }
    }
}

impl fmt::Display for DiagonalSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() {
            return write!(f, "constant {}", format_scalar(&self.tail));
        }
        let parts: Vec<String> = self.prefix.iter().map(format_scalar).collect();
        write!(f, "[{}] then constant {}", parts.join(", "), format_scalar(&self.tail))
    }
}

/// A banded operator on one-sided sequences: finitely many offsets, each
/// with an eventually-constant coefficient sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandOperator {
    bands: BTreeMap<i64, DiagonalSequence>,
}

fn normalize(bands: &mut BTreeMap<i64, DiagonalSequence>) {
    let offsets: Vec<i64> = bands.keys().copied().collect();
    for d in offsets {
        let seq = bands.get_mut(&d).expect("key just listed");
        if d < 0 {
            seq.zero_head((-d) as usize);
        }
        if seq.is_zero() {
            bands.remove(&d);
        }
    }
}

fn check_width(bands: &BTreeMap<i64, DiagonalSequence>) -> Result<(), Error> {
    if let Some(d) = bands.keys().find(|d| d.abs() > MAX_BAND_WIDTH) {
        return Err(Error::BandOverflow { width: *d, max_width: MAX_BAND_WIDTH });
    }
    Ok(())
}

impl BandOperator {
    pub fn zero() -> BandOperator {
        BandOperator { bands: BTreeMap::new() }
    }

    pub fn identity() -> BandOperator {
        BandOperator::diagonal(DiagonalSequence::constant(Scalar::one()))
    }

    /// Multiplication by a coefficient sequence (a single offset-0 band).
    pub fn diagonal(seq: DiagonalSequence) -> BandOperator {
        let mut bands = BTreeMap::new();
        bands.insert(0, seq);
        normalize(&mut bands);
        BandOperator { bands }
    }

    /// The down shift `f`: `(f s) = 0, s(0), s(1), ..`.
    pub fn down_shift() -> BandOperator {
        let mut bands = BTreeMap::new();
        bands.insert(-1, DiagonalSequence::constant(Scalar::one()));
        normalize(&mut bands);
        BandOperator { bands }
    }

    /// The up shift `g`: `(g s) = s(1), s(2), ..`.
    pub fn up_shift() -> BandOperator {
        let mut bands = BTreeMap::new();
        bands.insert(1, DiagonalSequence::constant(Scalar::one()));
        BandOperator { bands }
    }

    /// The head projector `p`: `(p s) = s(0), 0, 0, ..`.
    pub fn head_projector() -> BandOperator {
        BandOperator::diagonal(DiagonalSequence::new(vec![Scalar::one()], Scalar::zero()))
    }

    /// General constructor from `(offset, coefficients)` pairs. Pairs with
    /// equal offsets are summed; canonicalization and the width cap apply.
    pub fn from_bands(pairs: Vec<(i64, DiagonalSequence)>) -> Result<BandOperator, Error> {
        let mut bands: BTreeMap<i64, DiagonalSequence> = BTreeMap::new();
        for (d, seq) in pairs {
            match bands.entry(d) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let merged = e.get().add(&seq);
                    e.insert(merged);
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(seq);
                }
            }
        }
        normalize(&mut bands);
        check_width(&bands)?;
        Ok(BandOperator { bands })
    }

    pub fn bands(&self) -> &BTreeMap<i64, DiagonalSequence> {
        &self.bands
    }

    pub fn is_zero(&self) -> bool {
        self.bands.is_empty()
    }

    pub fn add(&self, other: &BandOperator) -> BandOperator {
        let mut bands = self.bands.clone();
        for (d, seq) in &other.bands {
            match bands.entry(*d) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let merged = e.get().add(seq);
                    e.insert(merged);
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(seq.clone());
                }
            }
        }
        normalize(&mut bands);
        BandOperator { bands }
    }

    pub fn neg(&self) -> BandOperator {
        self.scale(&-Scalar::one())
    }

    pub fn sub(&self, other: &BandOperator) -> BandOperator {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> BandOperator {
        let mut bands: BTreeMap<i64, DiagonalSequence> =
            self.bands.iter().map(|(d, seq)| (*d, seq.scale(s))).collect();
        normalize(&mut bands);
        BandOperator { bands }
    }

    /// Pipeline composition: `self` runs first, `then` runs second. The
    /// offset-`e` coefficient of the result at position `i` is
    /// `sum over db of then_db(i) * self_(e-db)(i + db)`. Errors with
    /// `BandOverflow` when a surviving offset passes [`MAX_BAND_WIDTH`].
    pub fn compose(&self, then: &BandOperator) -> Result<BandOperator, Error> {
        let mut bands: BTreeMap<i64, DiagonalSequence> = BTreeMap::new();
        for (db, bseq) in &then.bands {
            for (da, aseq) in &self.bands {
                let contrib = bseq.mul_pointwise(&aseq.shifted(*db));
                if contrib.is_zero() {
                    continue;
                }
                let e = da + db;
                match bands.entry(e) {
                    std::collections::btree_map::Entry::Occupied(mut entry) => {
                        let merged = entry.get().add(&contrib);
                        entry.insert(merged);
                    }
                    std::collections::btree_map::Entry::Vacant(entry) => {
                        entry.insert(contrib);
                    }
                }
            }
        }
        normalize(&mut bands);
        check_width(&bands)?;
        Ok(BandOperator { bands })
    }

    /// The `n x n` upper-left corner as a matrix acting on column vectors:
    /// entry `(i, j)` is the offset-`(j - i)` coefficient at position `i`.
    pub fn truncation(&self, n: usize) -> OperatorMatrix {
        OperatorMatrix::from_fn(n, |i, j| {
            let d = j as i64 - i as i64;
            self.bands.get(&d).map_or_else(Scalar::zero, |seq| seq.at(i).clone())
        })
    }

    pub fn equal_on_truncation(&self, other: &BandOperator, n: usize) -> bool {
        self.truncation(n) == other.truncation(n)
    }

    pub fn is_zero_on_truncation(&self, n: usize) -> bool {
        self.truncation(n).is_zero()
    }

    /// Applies the operator to a finite sequence, reading zero past its end
    /// and producing the first `out_len` output positions.
    pub fn apply_truncated(&self, input: &[Scalar], out_len: usize) -> Vec<Scalar> {
        (0..out_len)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (d, seq) in &self.bands {
                    let j = i as i64 + d;
                    if j < 0 {
                        continue;
                    }
                    if let Some(v) = input.get(j as usize) {
                        if !v.is_zero() {
                            acc += seq.at(i) * v;
                        }
                    }
                }
                acc
            })
            .collect()
    }
}

impl fmt::Display for BandOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bands.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, seq) in &self.bands {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "offset {d}: {seq}")?;
        }
        Ok(())
    }
}
