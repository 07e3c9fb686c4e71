//! Property tests for multilinear forms: the contraction product is the
//! pointwise product of the induced maps, contraction is associative and
//! bilinear, the arity-2 operator matrix reproduces application, and
//! inverses found by linear solving actually invert.

use std::sync::{Arc, OnceLock};

use algpoly::builtin;
use algpoly::scalar::int;
use algpoly::{Algebra, Element, OperatorMatrix, Scalar, Tensor};
use proptest::prelude::*;

fn m2() -> Arc<Algebra> {
    static CELL: OnceLock<Arc<Algebra>> = OnceLock::new();
    CELL.get_or_init(|| builtin::matrix_algebra(2)).clone()
}

fn duals() -> Arc<Algebra> {
    static CELL: OnceLock<Arc<Algebra>> = OnceLock::new();
    CELL.get_or_init(builtin::dual_numbers).clone()
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=3).prop_map(|(p, q)| Scalar::new(p.into(), q.into()))
}

fn element_of(algebra: Arc<Algebra>) -> impl Strategy<Value = Element> {
    prop::collection::vec(small_scalar(), algebra.dim())
        .prop_map(move |coords| Element::new(&algebra, coords).unwrap())
}

fn tensor_of(algebra: Arc<Algebra>, arity: usize) -> impl Strategy<Value = Tensor> {
    let len = algebra.dim().pow(arity as u32);
    prop::collection::vec(-3i64..=3, len).prop_map(move |entries| {
        Tensor::from_dense(&algebra, arity, entries.into_iter().map(int).collect()).unwrap()
    })
}

fn tensor_pair(algebra: Arc<Algebra>) -> impl Strategy<Value = (Tensor, Tensor)> {
    (1usize..=3, 1usize..=3).prop_flat_map(move |(ra, rb)| {
        (tensor_of(algebra.clone(), ra), tensor_of(algebra.clone(), rb))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contraction_evaluates_to_the_pointwise_product(
        (a, b) in tensor_pair(m2()),
        x in element_of(m2()),
    ) {
        let product = a.contract_product(&b).unwrap();
        let expected = a.apply(&x).unwrap().mul(&b.apply(&x).unwrap()).unwrap();
        prop_assert_eq!(product.apply(&x).unwrap(), expected);
    }

    #[test]
    fn contraction_is_associative(
        a in tensor_of(m2(), 2),
        b in tensor_of(m2(), 2),
        c in tensor_of(m2(), 2),
    ) {
        let left = a.contract_product(&b).unwrap().contract_product(&c).unwrap();
        let right = a.contract_product(&b.contract_product(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn contraction_is_bilinear(
        a in tensor_of(m2(), 2),
        b in tensor_of(m2(), 2),
        c in tensor_of(m2(), 2),
        s in small_scalar(),
    ) {
        let dist_left = a.add(&b).unwrap().contract_product(&c).unwrap();
        let dist_right = a.contract_product(&c).unwrap().add(&b.contract_product(&c).unwrap()).unwrap();
        prop_assert_eq!(dist_left, dist_right);

        let dist_left = c.contract_product(&a.add(&b).unwrap()).unwrap();
        let dist_right = c.contract_product(&a).unwrap().add(&c.contract_product(&b).unwrap()).unwrap();
        prop_assert_eq!(dist_left, dist_right);

        let scaled = a.scale(&s).contract_product(&b).unwrap();
        prop_assert_eq!(&scaled, &a.contract_product(&b).unwrap().scale(&s));
        prop_assert_eq!(&scaled, &a.contract_product(&b.scale(&s)).unwrap());
    }

    #[test]
    fn application_is_linear_in_the_tensor(
        (a, b) in (1usize..=3).prop_flat_map(|r| (tensor_of(duals(), r), tensor_of(duals(), r))),
        x in element_of(duals()),
        s in small_scalar(),
    ) {
        let sum = a.add(&b).unwrap().apply(&x).unwrap();
        prop_assert_eq!(sum, a.apply(&x).unwrap().add(&b.apply(&x).unwrap()).unwrap());
        prop_assert_eq!(a.scale(&s).apply(&x).unwrap(), a.apply(&x).unwrap().scale(&s));
    }

    #[test]
    fn operator_matrix_reproduces_application(
        t in tensor_of(m2(), 2),
        x in element_of(m2()),
    ) {
        let matrix = t.operator_matrix().unwrap();
        let image = t.apply(&x).unwrap();
        prop_assert_eq!(matrix.apply(x.coords()), image.coords());
    }

    #[test]
    fn inverse_tensor_round_trips(t in tensor_of(m2(), 2), x in element_of(m2())) {
        prop_assume!(t.is_nonsingular().unwrap());
        let inv = t.invert().unwrap();
        let m = t.operator_matrix().unwrap();
        let minv = inv.operator_matrix().unwrap();
        prop_assert!(m.matmul(&minv).is_identity());
        prop_assert!(minv.matmul(&m).is_identity());
        prop_assert_eq!(inv.apply(&t.apply(&x).unwrap()).unwrap(), x);
    }
}

/// Decides whether the map `x -> e_i x e_k` coincides with left
/// multiplication by `e_i e_k` by comparing operator matrices.
fn sandwich_is_left_multiplication(algebra: &Arc<Algebra>, i: usize, k: usize) -> bool {
    let ei = Element::basis(algebra, i).unwrap();
    let ek = Element::basis(algebra, k).unwrap();
    let sandwich = Tensor::decomposable(vec![ei.clone(), ek.clone()]).unwrap();
    let left = ei.mul(&ek).unwrap().left_mul_matrix();
    sandwich.operator_matrix().unwrap() == left
}

/// The same decision made pointwise on basis arguments, as a cross-check.
fn sandwich_is_left_multiplication_pointwise(algebra: &Arc<Algebra>, i: usize, k: usize) -> bool {
    let ei = Element::basis(algebra, i).unwrap();
    let ek = Element::basis(algebra, k).unwrap();
    let c = ei.mul(&ek).unwrap();
    (0..algebra.dim()).all(|j| {
        let x = Element::basis(algebra, j).unwrap();
        ei.mul(&x).unwrap().mul(&ek).unwrap() == c.mul(&x).unwrap()
    })
}

// Two-sided sandwich maps collapse to one-sided multiplications exactly
// when the algebra lets the right factor slide past the argument: over the
// commutative dual numbers every basis sandwich is a left multiplication,
// over 2x2 matrices some are not.
#[test]
fn sandwich_maps_need_both_sides_on_matrices() {
    let duals = duals();
    let m2 = m2();
    for algebra in [&duals, &m2] {
        for i in 0..algebra.dim() {
            for k in 0..algebra.dim() {
                assert_eq!(
                    sandwich_is_left_multiplication(algebra, i, k),
                    sandwich_is_left_multiplication_pointwise(algebra, i, k),
                    "operator and pointwise verdicts disagree at ({i}, {k})"
                );
            }
        }
    }
    let pairs = |algebra: &Arc<Algebra>| {
        (0..algebra.dim())
            .flat_map(|i| (0..algebra.dim()).map(move |k| (i, k)))
            .filter(|&(i, k)| sandwich_is_left_multiplication(algebra, i, k))
            .count()
    };
    assert_eq!(pairs(&duals), duals.dim() * duals.dim());
    assert!(pairs(&m2) < m2.dim() * m2.dim());
}

// The trace map x -> tr(x) 1 on 2x2 matrices is sum_{i,j} E_ij x E_ji.
// Any presentation sum_s u_s (x) v_s makes the coordinate matrix a sum of
// rank-one outer products, so its rank bounds the number of terms from
// below; rank 4 means no presentation with fewer than four terms exists.
#[test]
fn trace_map_needs_dimension_many_terms() {
    let m2 = m2();
    let mut terms = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            terms.push(vec![
                builtin::matrix_unit(&m2, i, j).unwrap(),
                builtin::matrix_unit(&m2, j, i).unwrap(),
            ]);
        }
    }
    let trace_map = Tensor::from_decomposables(&m2, terms).unwrap();
    assert_eq!(trace_map.presentation().unwrap().len(), 4);

    let n = m2.dim();
    let coefficient_matrix =
        OperatorMatrix::from_fn(n, |p, q| trace_map.coords()[p * n + q].clone());
    assert_eq!(coefficient_matrix.rank(), 4);

    // And it really is the trace: tr(E_ii) = 1, tr(E_ij) = 0 off the diagonal.
    for i in 0..n {
        let image = trace_map.apply(&Element::basis(&m2, i).unwrap()).unwrap();
        let is_diagonal = m2.name(i) == "E11" || m2.name(i) == "E22";
        let expected = if is_diagonal { Element::unit(&m2) } else { Element::zero(&m2) };
        assert_eq!(image, expected);
    }
}
