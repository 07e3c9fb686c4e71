//! Command-line front end for the polynomial algebra library: an expression
//! parser, lowering to ring polynomials with an interpreter oracle, output
//! rendering, and the subcommand implementations.

pub mod app;
pub mod ast;
pub mod demos;
pub mod lower;
pub mod parser;
pub mod render;
