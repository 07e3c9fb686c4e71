//! Expression syntax trees for noncommutative polynomials in one
//! indeterminate `x`, with a pretty-printer whose output reparses to the
//! same tree.

use std::fmt;

use algpoly::scalar::format_scalar;
use algpoly::Scalar;
use num::Signed;

/// A parsed expression. Products keep their written left-to-right order;
/// `Paren` records parentheses present in the source so that printing and
/// reparsing preserve the tree exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Scalar(Scalar),
    Const(String),
    Var,
    Sum(Box<Expr>, Box<Expr>),
    Diff(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
    Paren(Box<Expr>),
}

/// Binding strength, used to decide where the printer must add parentheses
/// for trees built programmatically. Printed parentheses become `Paren`
/// nodes on reparse, so printing is stable from the second round on.
fn precedence(expr: &Expr) -> u8 {
    match expr {
        Expr::Sum(..) | Expr::Diff(..) => 1,
        Expr::Neg(_) => 2,
        Expr::Scalar(s) if s.is_negative() => 2,
        Expr::Product(_) => 3,
        Expr::Power(..) => 4,
        _ => 5,
    }
}

fn write_expr(expr: &Expr, min_prec: u8, out: &mut String) {
    if precedence(expr) < min_prec {
        out.push('(');
        write_expr(expr, 0, out);
        out.push(')');
        return;
    }
    match expr {
        Expr::Scalar(s) => out.push_str(&format_scalar(s)),
        Expr::Const(name) => out.push_str(name),
        Expr::Var => out.push('x'),
        Expr::Sum(a, b) => {
            write_expr(a, 1, out);
            out.push_str(" + ");
            write_expr(b, 2, out);
        }
        Expr::Diff(a, b) => {
            write_expr(a, 1, out);
            out.push_str(" - ");
            write_expr(b, 2, out);
        }
        Expr::Neg(e) => {
            out.push('-');
            write_expr(e, 3, out);
        }
        Expr::Product(factors) => {
            for (i, f) in factors.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                write_expr(f, 4, out);
            }
        }
        Expr::Power(base, e) => {
            write_expr(base, 5, out);
            out.push('^');
            out.push_str(&e.to_string());
        }
        Expr::Paren(e) => {
            out.push('(');
            write_expr(e, 0, out);
            out.push(')');
        }
    }
}

impl Expr {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        write_expr(self, 0, &mut out);
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
