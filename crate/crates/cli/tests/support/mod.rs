//! Helpers shared by the integration test targets: seeded random inputs,
//! a degree-budgeted expression generator, and binding tables.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use algpoly::{Algebra, Element, Polynomial, Scalar, Tensor};
use algpoly_cli::ast::Expr;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=3).into())
}

pub fn random_element(rng: &mut ChaCha8Rng, algebra: &Arc<Algebra>) -> Element {
    let coords = (0..algebra.dim()).map(|_| random_scalar(rng)).collect();
    Element::new(algebra, coords).expect("coordinate count matches")
}

pub fn random_nonzero_element(rng: &mut ChaCha8Rng, algebra: &Arc<Algebra>) -> Element {
    loop {
        let e = random_element(rng, algebra);
        if !e.is_zero() {
            return e;
        }
    }
}

/// A random polynomial whose coefficients are sums of at most
/// `max_terms` decomposable terms, so every coefficient carries a
/// presentation usable by matrix oracles.
pub fn random_sparse_poly(
    rng: &mut ChaCha8Rng,
    algebra: &Arc<Algebra>,
    max_deg: usize,
    max_terms: usize,
) -> Polynomial {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs = (0..=deg)
        .map(|k| {
            let terms = rng.gen_range(1..=max_terms);
            let terms = (0..terms)
                .map(|_| (0..=k).map(|_| random_element(rng, algebra)).collect())
                .collect();
            Tensor::from_decomposables(algebra, terms).expect("arities in bounds")
        })
        .collect();
    Polynomial::from_coeffs(algebra, coeffs).expect("ladder is well formed")
}

/// A random dense arity-2 tensor with small integer coordinates.
pub fn random_dense_arity2(rng: &mut ChaCha8Rng, algebra: &Arc<Algebra>) -> Tensor {
    let n = algebra.dim();
    let coords = (0..n * n)
        .map(|_| Scalar::from_integer(rng.gen_range(-3i64..=3).into()))
        .collect();
    Tensor::from_dense(algebra, 2, coords).expect("coordinate count matches")
}

/// Binding table mapping every identifier-shaped basis name to its basis
/// element, the same table the command layer builds.
pub fn basis_bindings(algebra: &Arc<Algebra>) -> BTreeMap<String, Element> {
    let mut map = BTreeMap::new();
    for (idx, name) in algebra.names().iter().enumerate() {
        map.insert(name.clone(), Element::basis(algebra, idx).expect("index in range"));
    }
    map
}

fn gen_leaf(rng: &mut ChaCha8Rng, names: &[String], budget: usize) -> Expr {
    match rng.gen_range(0..3) {
        0 if budget >= 1 => Expr::Var,
        1 => Expr::Const(names[rng.gen_range(0..names.len())].clone()),
        _ => Expr::Scalar(random_scalar(rng)),
    }
}

/// A random expression whose lowering has degree at most `budget`, so the
/// tensor arity cap is never hit when `budget + 1` is within the cap.
pub fn gen_expr(rng: &mut ChaCha8Rng, names: &[String], depth: u32, budget: usize) -> Expr {
    if depth == 0 {
        return gen_leaf(rng, names, budget);
    }
    match rng.gen_range(0..10) {
        0 | 1 => gen_leaf(rng, names, budget),
        2 => Expr::Sum(
            Box::new(gen_expr(rng, names, depth - 1, budget)),
            Box::new(gen_expr(rng, names, depth - 1, budget)),
        ),
        3 => Expr::Diff(
            Box::new(gen_expr(rng, names, depth - 1, budget)),
            Box::new(gen_expr(rng, names, depth - 1, budget)),
        ),
        4 => Expr::Neg(Box::new(gen_expr(rng, names, depth - 1, budget))),
        5 => Expr::Paren(Box::new(gen_expr(rng, names, depth - 1, budget))),
        6 | 7 => {
            let count = rng.gen_range(2..=3);
            let mut remaining = budget;
            let mut factors = Vec::new();
            for idx in 0..count {
                let share = if idx + 1 == count {
                    remaining
                } else {
                    rng.gen_range(0..=remaining)
                };
                remaining -= share;
                factors.push(gen_expr(rng, names, depth - 1, share));
            }
            Expr::Product(factors)
        }
        8 => {
            let exponent = rng.gen_range(0..=3u32);
            let inner = if exponent == 0 { 0 } else { budget / exponent as usize };
            Expr::Power(Box::new(gen_expr(rng, names, depth - 1, inner)), exponent)
        }
        _ => {
            if budget >= 1 {
                Expr::Var
            } else {
                gen_leaf(rng, names, budget)
            }
        }
    }
}
