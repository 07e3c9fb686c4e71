//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ('-')? factor (('*')? factor)*
//! factor := atom ('^' uint)?
//! atom   := rational | ident | 'x' | '(' expr ')'
//! ```
//! Juxtaposition is the (noncommutative) product and `*` is optional.
//! Rationals are written `p` or `p/q` with no spaces around the slash.

use std::collections::BTreeMap;
use std::fmt;

use algpoly::{Element, Scalar};
use num::BigInt;

use crate::ast::Expr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { offset: usize, message: String },
    UnboundIdentifier { offset: usize, name: String },
    NegativeExponent { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnboundIdentifier { offset, .. }
            | ParseError::NegativeExponent { offset } => *offset,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { offset, message } => {
                write!(f, "syntax error at byte {offset}: {message}")
            }
            ParseError::UnboundIdentifier { offset, name } => {
                write!(f, "unbound identifier `{name}` at byte {offset}")
            }
            ParseError::NegativeExponent { offset } => {
                write!(f, "negative exponent at byte {offset}; exponents must be nonnegative")
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    /// A rational literal; the flag records whether it was written without
    /// a slash, which is required for exponents.
    Number(Scalar, bool),
    Ident(String),
    Var,
    End,
}

struct Spanned {
    tok: Tok,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let offset = pos;
        let c = bytes[pos];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => {
                pos += 1;
                Tok::Plus
            }
            b'-' => {
                pos += 1;
                Tok::Minus
            }
            b'*' => {
                pos += 1;
                Tok::Star
            }
            b'^' => {
                pos += 1;
                Tok::Caret
            }
            b'(' => {
                pos += 1;
                Tok::LParen
            }
            b')' => {
                pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let numer: BigInt = text[start..pos].parse().expect("digits");
                if pos < bytes.len() && bytes[pos] == b'/' {
                    let slash = pos;
                    pos += 1;
                    let dstart = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if dstart == pos {
                        return Err(ParseError::Syntax {
                            offset: slash,
                            message: "expected digits after `/` in rational".into(),
                        });
                    }
                    let denom: BigInt = text[dstart..pos].parse().expect("digits");
                    if denom == BigInt::from(0) {
                        return Err(ParseError::Syntax {
                            offset: dstart,
                            message: "zero denominator".into(),
                        });
                    }
                    Tok::Number(Scalar::new(numer, denom), false)
                } else {
                    Tok::Number(Scalar::new(numer, BigInt::from(1)), true)
                }
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = pos;
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                let name = &text[start..pos];
                if name == "x" {
                    Tok::Var
                } else {
                    Tok::Ident(name.to_string())
                }
            }
            other => {
                return Err(ParseError::Syntax {
                    offset,
                    message: format!("unexpected character `{}`", other as char),
                })
            }
        };
        toks.push(Spanned { tok, offset });
    }
    toks.push(Spanned { tok: Tok::End, offset: bytes.len() });
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    cursor: usize,
    bindings: &'a BTreeMap<String, Element>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.cursor].tok
    }

    fn peek_offset(&self) -> usize {
        self.toks[self.cursor].offset
    }

    fn advance(&mut self) -> (Tok, usize) {
        let s = &self.toks[self.cursor];
        let out = (s.tok.clone(), s.offset);
        self.cursor += 1;
        out
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.cursor += 1;
            true
        } else {
            false
        }
    }

    fn starts_atom(tok: &Tok) -> bool {
        matches!(tok, Tok::Number(..) | Tok::Ident(_) | Tok::Var | Tok::LParen)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut node = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                node = Expr::Sum(Box::new(node), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                node = Expr::Diff(Box::new(node), Box::new(self.term()?));
            } else {
                return Ok(node);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let negated = self.eat(&Tok::Minus);
        let mut factors = vec![self.factor()?];
        // `*` is optional: juxtaposed factors multiply.
        while self.eat(&Tok::Star) || Self::starts_atom(self.peek()) {
            factors.push(self.factor()?);
        }
        let product = if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            Expr::Product(factors)
        };
        Ok(if negated { Expr::Neg(Box::new(product)) } else { product })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let (tok, offset) = self.advance();
        match tok {
            Tok::Number(value, true) => {
                let exponent = u32::try_from(value.to_integer()).map_err(|_| {
                    ParseError::Syntax { offset, message: "exponent too large".into() }
                })?;
                Ok(Expr::Power(Box::new(base), exponent))
            }
            Tok::Number(..) => Err(ParseError::Syntax {
                offset,
                message: "exponent must be a plain integer".into(),
            }),
            Tok::Minus => Err(ParseError::NegativeExponent { offset }),
            _ => Err(ParseError::Syntax { offset, message: "expected integer exponent".into() }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let (tok, offset) = self.advance();
        match tok {
            Tok::Number(value, _) => Ok(Expr::Scalar(value)),
            Tok::Var => Ok(Expr::Var),
            Tok::Ident(name) => {
                if self.bindings.contains_key(&name) {
                    Ok(Expr::Const(name))
                } else {
                    Err(ParseError::UnboundIdentifier { offset, name })
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let (close, close_offset) = self.advance();
                if close != Tok::RParen {
                    return Err(ParseError::Syntax {
                        offset: close_offset,
                        message: "expected `)`".into(),
                    });
                }
                Ok(Expr::Paren(Box::new(inner)))
            }
            _ => Err(ParseError::Syntax { offset, message: "expected expression".into() }),
        }
    }
}

/// Parses `text` against a table of named constants. Every identifier must
/// be bound; `x` is always the indeterminate and cannot be rebound.
pub fn parse_expr(
    text: &str,
    bindings: &BTreeMap<String, Element>,
) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, cursor: 0, bindings };
    let expr = parser.expr()?;
    if parser.peek() != &Tok::End {
        return Err(ParseError::Syntax {
            offset: parser.peek_offset(),
            message: "unexpected trailing input".into(),
        });
    }
    Ok(expr)
}
