//! Ready-made algebras: full matrix algebras, quaternions, complex numbers,
//! dual numbers, and direct sums, plus an independent dense-matrix oracle
//! for cross-checking matrix-algebra computations.

use crate::algebra::{Algebra, Element};
use crate::poly::Polynomial;
use crate::scalar::{int, Scalar};
use crate::tensor::Tensor;
use crate::Error;
use num::{One, Zero};
use std::sync::Arc;

fn zero_vec(dim: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); dim]
}

fn basis_vec(dim: usize, idx: usize) -> Vec<Scalar> {
    let mut v = zero_vec(dim);
    v[idx] = Scalar::one();
    v
}

fn scaled_basis_vec(dim: usize, idx: usize, s: i64) -> Vec<Scalar> {
    let mut v = zero_vec(dim);
    v[idx] = int(s);
    v
}

/// The algebra of `m x m` rational matrices, basis `E11, E12, .., Emm` in
/// row-major order with `E_ij * E_kl = [j == k] E_il`.
pub fn matrix_algebra(m: usize) -> Arc<Algebra> {
    assert!(m >= 1, "matrix algebra needs a positive side");
    let dim = m * m;
    let mut table = Vec::with_capacity(dim);
    for i in 0..m {
        for j in 0..m {
            let mut row = Vec::with_capacity(dim);
            for k in 0..m {
                for l in 0..m {
                    row.push(if j == k { basis_vec(dim, i * m + l) } else { zero_vec(dim) });
                }
            }
            table.push(row);
        }
    }
    let mut unit = zero_vec(dim);
    for i in 0..m {
        unit[i * m + i] = Scalar::one();
    }
    let names = (1..=m).flat_map(|i| (1..=m).map(move |j| format!("E{i}{j}"))).collect();
    Algebra::new(dim, table, unit, names).expect("matrix algebra is associative and unital")
}

/// Side length of a matrix algebra from its dimension, when it is a square.
fn matrix_side(dim: usize) -> Option<usize> {
    let mut m = 0usize;
    while m * m < dim {
        m += 1;
    }
    (m * m == dim).then_some(m)
}

/// The basis matrix unit `E_ij` (1-based row and column) of a matrix algebra.
pub fn matrix_unit(algebra: &Arc<Algebra>, i: usize, j: usize) -> Result<Element, Error> {
    let m = matrix_side(algebra.dim())
        .ok_or(Error::IndexOutOfRange { index: algebra.dim(), bound: algebra.dim() })?;
    if i == 0 || i > m {
        return Err(Error::IndexOutOfRange { index: i, bound: m });
    }
    if j == 0 || j > m {
        return Err(Error::IndexOutOfRange { index: j, bound: m });
    }
    Element::basis(algebra, (i - 1) * m + (j - 1))
}

/// The degree-1 polynomial `p(x) = E_ii * x * E_kk` over a matrix algebra.
/// Over `m x m` matrices it picks out the `(i,k)` entry: `p(X) = X_ik E_ik`.
pub fn matrix_unit_sandwich(
    algebra: &Arc<Algebra>,
    i: usize,
    k: usize,
) -> Result<Polynomial, Error> {
    let left = matrix_unit(algebra, i, i)?;
    let right = matrix_unit(algebra, k, k)?;
    Ok(Polynomial::homogeneous(Tensor::decomposable(vec![left, right])?))
}

/// The quaternions: basis `one, i, j, k` with `i^2 = j^2 = k^2 = -1`,
/// `ij = k`, `jk = i`, `ki = j`.
pub fn quaternions() -> Arc<Algebra> {
    let b = |idx| basis_vec(4, idx);
    let s = |idx, sign| scaled_basis_vec(4, idx, sign);
    let table = vec![
        vec![b(0), b(1), b(2), b(3)],
        vec![b(1), s(0, -1), b(3), s(2, -1)],
        vec![b(2), s(3, -1), s(0, -1), b(1)],
        vec![b(3), b(2), s(1, -1), s(0, -1)],
    ];
    let names = ["one", "i", "j", "k"].map(String::from).to_vec();
    Algebra::new(4, table, basis_vec(4, 0), names).expect("quaternions are associative")
}

/// The complex numbers as a 2-dimensional algebra: basis `one, i`, `i^2 = -1`.
pub fn complex_algebra() -> Arc<Algebra> {
    let table = vec![
        vec![basis_vec(2, 0), basis_vec(2, 1)],
        vec![basis_vec(2, 1), scaled_basis_vec(2, 0, -1)],
    ];
    let names = ["one", "i"].map(String::from).to_vec();
    Algebra::new(2, table, basis_vec(2, 0), names).expect("complex numbers are associative")
}

/// The dual numbers: basis `one, eps` with `eps^2 = 0`.
pub fn dual_numbers() -> Arc<Algebra> {
    let table = vec![
        vec![basis_vec(2, 0), basis_vec(2, 1)],
        vec![basis_vec(2, 1), zero_vec(2)],
    ];
    let names = ["one", "eps"].map(String::from).to_vec();
    Algebra::new(2, table, basis_vec(2, 0), names).expect("dual numbers are associative")
}

/// The direct sum `A (+) B`: componentwise products, cross products zero,
/// unit `(1_A, 1_B)`. Basis names get suffixes `1` and `2`.
pub fn direct_sum(a: &Arc<Algebra>, b: &Arc<Algebra>) -> Result<Arc<Algebra>, Error> {
    let na = a.dim();
    let nb = b.dim();
    let dim = na + nb;
    let mut table = vec![vec![zero_vec(dim); dim]; dim];
    for i in 0..na {
        for j in 0..na {
            for k in 0..na {
                table[i][j][k] = a.constant(i, j, k).clone();
            }
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            for k in 0..nb {
                table[na + i][na + j][na + k] = b.constant(i, j, k).clone();
            }
        }
    }
    let mut unit = zero_vec(dim);
    unit[..na].clone_from_slice(a.unit_coords());
    unit[na..].clone_from_slice(b.unit_coords());
    let names = a
        .names()
        .iter()
        .map(|n| format!("{n}1"))
        .chain(b.names().iter().map(|n| format!("{n}2")))
        .collect();
    Algebra::new(dim, table, unit, names)
}

/// Resolves a builtin algebra by its command-line name.
pub fn by_name(name: &str) -> Option<Arc<Algebra>> {
    match name {
        "dual" => Some(dual_numbers()),
        "complex" => Some(complex_algebra()),
        "quaternions" => Some(quaternions()),
        _ => {
            let m: usize = name.strip_prefix("matrix")?.parse().ok()?;
            (1..=9).contains(&m).then(|| matrix_algebra(m))
        }
    }
}

/// Textbook dense-matrix arithmetic on `Vec<Vec<Scalar>>`, independent of
/// the structure-constant machinery, for cross-checking matrix algebras.
pub struct MatrixOracle {
    m: usize,
}

impl MatrixOracle {
    pub fn new(m: usize) -> MatrixOracle {
        MatrixOracle { m }
    }

    pub fn side(&self) -> usize {
        self.m
    }

    pub fn zero(&self) -> Vec<Vec<Scalar>> {
        vec![vec![Scalar::zero(); self.m]; self.m]
    }

    pub fn identity(&self) -> Vec<Vec<Scalar>> {
        let mut mat = self.zero();
        for i in 0..self.m {
            mat[i][i] = Scalar::one();
        }
        mat
    }

    /// Reads an element of the matrix algebra as a dense matrix
    /// (coordinates are row-major by construction).
    pub fn to_matrix(&self, e: &Element) -> Result<Vec<Vec<Scalar>>, Error> {
        if e.coords().len() != self.m * self.m {
            return Err(Error::ShapeMismatch {
                what: "matrix coordinates",
                expected: self.m * self.m,
                got: e.coords().len(),
            });
        }
        Ok((0..self.m)
            .map(|i| (0..self.m).map(|j| e.coords()[i * self.m + j].clone()).collect())
            .collect())
    }

    pub fn from_matrix(
        &self,
        algebra: &Arc<Algebra>,
        mat: &[Vec<Scalar>],
    ) -> Result<Element, Error> {
        if mat.len() != self.m || mat.iter().any(|row| row.len() != self.m) {
            return Err(Error::ShapeMismatch {
                what: "matrix rows",
                expected: self.m,
                got: mat.len(),
            });
        }
        let coords = mat.iter().flat_map(|row| row.iter().cloned()).collect();
        Element::new(algebra, coords)
    }

    pub fn add(&self, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        (0..self.m)
            .map(|i| (0..self.m).map(|j| &a[i][j] + &b[i][j]).collect())
            .collect()
    }

    pub fn scale(&self, a: &[Vec<Scalar>], s: &Scalar) -> Vec<Vec<Scalar>> {
        (0..self.m).map(|i| (0..self.m).map(|j| &a[i][j] * s).collect()).collect()
    }

    pub fn mul(&self, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        let mut out = self.zero();
        for i in 0..self.m {
            for k in 0..self.m {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..self.m {
                    if !b[k][j].is_zero() {
                        out[i][j] += &a[i][k] * &b[k][j];
                    }
                }
            }
        }
        out
    }

    /// `f1 * x * f2 * x * .. * x * fr`: one decomposable term evaluated at
    /// `x`, entirely in dense matrix arithmetic.
    pub fn sandwich(&self, factors: &[Vec<Vec<Scalar>>], x: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
        assert!(!factors.is_empty(), "a sandwich needs at least one factor");
        let mut acc = factors[0].clone();
        for f in &factors[1..] {
            acc = self.mul(&self.mul(&acc, x), f);
        }
        acc
    }
}
