//! Lowering from expression trees to ring polynomials, plus a direct
//! interpreter used as an independent oracle: lowering must agree with
//! interpretation at every point.

use std::collections::BTreeMap;
use std::sync::Arc;

use algpoly::{Algebra, Element, Error, Polynomial};

use crate::ast::Expr;

fn bound<'b>(bindings: &'b BTreeMap<String, Element>, name: &str) -> &'b Element {
    bindings
        .get(name)
        .unwrap_or_else(|| panic!("identifier `{name}` was bound at parse time"))
}

/// Lowers an expression to a polynomial by folding ring operations, so a
/// written monomial `a x b` becomes the decomposable coefficient `a (x) b`
/// with adjacent constants merged and unit coefficients around bare `x`.
pub fn lower(
    expr: &Expr,
    algebra: &Arc<Algebra>,
    bindings: &BTreeMap<String, Element>,
) -> Result<Polynomial, Error> {
    match expr {
        Expr::Scalar(s) => Ok(Polynomial::constant(&Element::unit(algebra).scale(s))),
        Expr::Const(name) => Ok(Polynomial::constant(bound(bindings, name))),
        Expr::Var => Polynomial::x(algebra),
        Expr::Sum(a, b) => lower(a, algebra, bindings)?.add(&lower(b, algebra, bindings)?),
        Expr::Diff(a, b) => lower(a, algebra, bindings)?.sub(&lower(b, algebra, bindings)?),
        Expr::Neg(e) => Ok(lower(e, algebra, bindings)?.neg()),
        Expr::Product(factors) => {
            let mut acc = Polynomial::constant(&Element::unit(algebra));
            for f in factors {
                acc = acc.mul(&lower(f, algebra, bindings)?)?;
            }
            Ok(acc)
        }
        Expr::Power(base, e) => lower(base, algebra, bindings)?.pow(*e),
        Expr::Paren(e) => lower(e, algebra, bindings),
    }
}

/// Evaluates the expression directly at `x`, without building polynomial
/// coefficients.
pub fn interpret(
    expr: &Expr,
    x: &Element,
    bindings: &BTreeMap<String, Element>,
) -> Result<Element, Error> {
    let algebra = x.algebra();
    match expr {
        Expr::Scalar(s) => Ok(Element::unit(algebra).scale(s)),
        Expr::Const(name) => Ok(bound(bindings, name).clone()),
        Expr::Var => Ok(x.clone()),
        Expr::Sum(a, b) => interpret(a, x, bindings)?.add(&interpret(b, x, bindings)?),
        Expr::Diff(a, b) => interpret(a, x, bindings)?.sub(&interpret(b, x, bindings)?),
        Expr::Neg(e) => Ok(interpret(e, x, bindings)?.neg()),
        Expr::Product(factors) => {
            let mut acc = Element::unit(algebra);
            for f in factors {
                acc = acc.mul(&interpret(f, x, bindings)?)?;
            }
            Ok(acc)
        }
        Expr::Power(base, e) => {
            let value = interpret(base, x, bindings)?;
            let mut acc = Element::unit(algebra);
            for _ in 0..*e {
                acc = acc.mul(&value)?;
            }
            Ok(acc)
        }
        Expr::Paren(e) => interpret(e, x, bindings),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;
    use algpoly::builtin;

    fn setup() -> (Arc<Algebra>, BTreeMap<String, Element>) {
        let m2 = builtin::matrix_algebra(2);
        let mut bindings = BTreeMap::new();
        for (idx, name) in m2.names().iter().enumerate() {
            bindings.insert(name.clone(), Element::basis(&m2, idx).unwrap());
        }
        (m2, bindings)
    }

    #[test]
    fn monomials_become_decomposable_coefficients() {
        let (m2, bindings) = setup();
        let ast = parse_expr("E11 x E22", &bindings).unwrap();
        let p = lower(&ast, &m2, &bindings).unwrap();
        assert_eq!(p.degree(), Some(1));
        let terms = p.coeff(1).unwrap().presentation().unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].len(), 2);
    }

    #[test]
    fn adjacent_constants_merge() {
        let (m2, bindings) = setup();
        let ast = parse_expr("E11 E12 x", &bindings).unwrap();
        let p = lower(&ast, &m2, &bindings).unwrap();
        // E11 E12 = E12, so the coefficient is the single term E12 (x) 1.
        let terms = p.coeff(1).unwrap().presentation().unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0][0], Element::basis(&m2, 1).unwrap());
        assert_eq!(terms[0][1], Element::unit(&m2));
    }

    #[test]
    fn cancellation_reaches_the_zero_polynomial() {
        let (m2, bindings) = setup();
        let ast = parse_expr("2*x - x - x", &bindings).unwrap();
        assert!(lower(&ast, &m2, &bindings).unwrap().is_zero());
    }

    #[test]
    fn binomial_product_expands_exactly() {
        let (m2, bindings) = setup();
        let e = |text: &str| parse_expr(text, &bindings).unwrap();
        let expanded = lower(&e("(E11 x + E12)(E21 x + E22)"), &m2, &bindings).unwrap();
        let by_hand = lower(
            &e("E11 x E21 x + E11 x E22 + E12 E21 x + E12 E22"),
            &m2,
            &bindings,
        )
        .unwrap();
        assert_eq!(expanded, by_hand);
        assert_eq!(expanded.degree(), Some(2));
    }

    #[test]
    fn lowering_agrees_with_interpretation() {
        let (m2, bindings) = setup();
        let ast = parse_expr("(E11 x + 1/2)^2 - E12 x E21 + 3", &bindings).unwrap();
        let p = lower(&ast, &m2, &bindings).unwrap();
        for coords in [[1, 2, 3, 4], [0, -1, 5, 2], [7, 0, 0, -3]] {
            let x = Element::from_i64(&m2, &coords).unwrap();
            assert_eq!(p.eval(&x).unwrap(), interpret(&ast, &x, &bindings).unwrap());
        }
    }

    // Monomial spellings are not unique: over the commutative duals the
    // three placements of eps in a degree-2 monomial have different dense
    // coefficient tensors but evaluate identically everywhere.
    #[test]
    fn written_rearrangements_agree_pointwise_even_when_tensors_differ() {
        let d = builtin::dual_numbers();
        let mut bindings = BTreeMap::new();
        for (idx, name) in d.names().iter().enumerate() {
            bindings.insert(name.clone(), Element::basis(&d, idx).unwrap());
        }
        let spellings = ["eps x 1 x 1", "1 x eps x 1", "1 x 1 x eps"];
        let lowered: Vec<Polynomial> = spellings
            .iter()
            .map(|text| lower(&parse_expr(text, &bindings).unwrap(), &d, &bindings).unwrap())
            .collect();
        assert_ne!(lowered[0].coeff(2).unwrap().coords(), lowered[1].coeff(2).unwrap().coords());
        assert_ne!(lowered[1].coeff(2).unwrap().coords(), lowered[2].coeff(2).unwrap().coords());
        for coords in [[1, 2], [0, 3], [-2, 5], [7, -1]] {
            let x = Element::from_i64(&d, &coords).unwrap();
            let values: Vec<Element> =
                lowered.iter().map(|p| p.eval(&x).unwrap()).collect();
            assert_eq!(values[0], values[1]);
            assert_eq!(values[1], values[2]);
        }
    }

    #[test]
    fn power_zero_is_the_unit_constant() {
        let (m2, bindings) = setup();
        let ast = parse_expr("x^0", &bindings).unwrap();
        let p = lower(&ast, &m2, &bindings).unwrap();
        assert_eq!(p, Polynomial::constant(&Element::unit(&m2)));
        let x = Element::from_i64(&m2, &[3, 1, 4, 1]).unwrap();
        assert_eq!(interpret(&ast, &x, &bindings).unwrap(), Element::unit(&m2));
    }
}
