//! Flag parsing, algebra loading, binding tables, and one function per
//! subcommand. Every success path returns the full stdout text, so command
//! output is a pure function of the arguments.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use algpoly::scalar::parse_scalar;
use algpoly::tensor::LinearSolution;
use algpoly::{builtin, Algebra, Element, Error, LinearEquation, Polynomial, Side, Tensor};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::demos;
use crate::lower::{interpret, lower};
use crate::parser::{parse_expr, ParseError};
use crate::render;

/// Seed used by randomized self-checks when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    /// 2 for usage and expression-parse problems, 1 for domain errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({ "error": { "kind": "usage", "message": m } }),
            CliError::Parse(e) => {
                let kind = match e {
                    ParseError::Syntax { .. } => "syntax",
                    ParseError::UnboundIdentifier { .. } => "unbound-identifier",
                    ParseError::NegativeExponent { .. } => "negative-exponent",
                };
                json!({ "error": { "kind": kind, "message": e.to_string(), "offset": e.offset() } })
            }
            CliError::Domain(e) => {
                json!({ "error": { "kind": "domain", "message": e.to_string() } })
            }
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "algpoly",
    version,
    about = "Exact arithmetic for polynomials over finite-dimensional algebras"
)]
pub struct Cli {
    /// Algebra to work in: path to an algebra JSON file, or a built-in name
    /// (dual, complex, quaternions, matrix1..matrix9)
    #[arg(long, global = true, value_name = "PATH|NAME")]
    pub algebra: Option<String>,

    /// Bind a named constant: NAME=c0,c1,... with one rational per basis
    /// element; repeatable. Basis names are bound automatically.
    #[arg(long = "bind", global = true, value_name = "NAME=COORDS")]
    pub bind: Vec<String>,

    /// Print results as JSON on stdout and errors as JSON on stderr
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for randomized self-checks (demos)
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Cap on tensor arity (maximum polynomial degree + 1)
    #[arg(long = "max-arity", global = true, value_name = "K")]
    pub max_arity: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check associativity and unit laws of an algebra file
    Validate { path: PathBuf },
    /// Evaluate an expression at a point
    Eval {
        expr: String,
        /// Coordinates of x: comma-separated rationals
        #[arg(long, value_name = "COORDS")]
        at: String,
    },
    /// Add two polynomial expressions
    Add { lhs: String, rhs: String },
    /// Multiply two polynomial expressions (noncommutative, in this order)
    Mul { lhs: String, rhs: String },
    /// Rewrite an expression as a remainder plus one-sided multiples of an
    /// affine degree-one divisor
    Reduce {
        expr: String,
        /// Divisor expression; must lower to degree exactly one
        #[arg(long, value_name = "EXPR")]
        by: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Report left/right zero-divisor status of a constant expression
    Zerodiv { expr: String },
    /// Invert the coefficient tensor of a homogeneous degree-one expression
    Invtensor { expr: String },
    /// Solve t(x) = rhs where t is the coefficient tensor of a homogeneous
    /// degree-one expression
    Solve {
        expr: String,
        #[arg(long, value_name = "EXPR")]
        rhs: String,
    },
    /// Run a named demonstration (e12e23, exe, shift)
    Demo {
        #[arg(value_enum)]
        name: DemoName,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    E12e23,
    Exe,
    Shift,
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            if cli.json {
                eprintln!(
                    "{}",
                    serde_json::to_string_pretty(&err.to_json()).expect("error serializes")
                );
            } else {
                eprintln!("error: {err}");
            }
            ExitCode::from(err.exit_code())
        }
    }
}

/// Runs one parsed command line and returns the stdout text.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Validate { path } => cmd_validate(cli, path),
        Command::Eval { expr, at } => cmd_eval(cli, expr, at),
        Command::Add { lhs, rhs } => cmd_add_mul(cli, lhs, rhs, false),
        Command::Mul { lhs, rhs } => cmd_add_mul(cli, lhs, rhs, true),
        Command::Reduce { expr, by, side } => cmd_reduce(cli, expr, by, (*side).into()),
        Command::Zerodiv { expr } => cmd_zerodiv(cli, expr),
        Command::Invtensor { expr } => cmd_invtensor(cli, expr),
        Command::Solve { expr, rhs } => cmd_solve(cli, expr, rhs),
        Command::Demo { name } => match name {
            DemoName::E12e23 => demos::demo_e12e23(cli.json),
            DemoName::Exe => demos::demo_exe(cli.json, cli.seed),
            DemoName::Shift => demos::demo_shift(cli.json, cli.seed),
        },
    }
}

struct Context {
    algebra: Arc<Algebra>,
    bindings: BTreeMap<String, Element>,
}

fn load_algebra(cli: &Cli) -> Result<Arc<Algebra>, CliError> {
    let spec = cli
        .algebra
        .as_deref()
        .ok_or_else(|| CliError::Usage("missing --algebra (file path or built-in name)".into()))?;
    let algebra = if Path::new(spec).is_file() {
        let text = fs::read_to_string(spec)
            .map_err(|e| CliError::Usage(format!("cannot read `{spec}`: {e}")))?;
        Algebra::from_json(&text)?
    } else if let Some(a) = builtin::by_name(spec) {
        a
    } else {
        return Err(CliError::Usage(format!(
            "`{spec}` is neither an algebra file nor a built-in algebra name"
        )));
    };
    match cli.max_arity {
        Some(0) => Err(CliError::Usage("--max-arity must be at least 1".into())),
        Some(k) => Ok(algebra.with_max_arity(k)),
        None => Ok(algebra),
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_coords(text: &str, algebra: &Arc<Algebra>) -> Result<Element, CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != algebra.dim() {
        return Err(CliError::Usage(format!(
            "expected {} comma-separated rationals, got {}",
            algebra.dim(),
            parts.len()
        )));
    }
    let coords = parts
        .iter()
        .map(|p| parse_scalar(p.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Element::new(algebra, coords)?)
}

fn context(cli: &Cli) -> Result<Context, CliError> {
    let algebra = load_algebra(cli)?;
    let mut bindings = BTreeMap::new();
    for (idx, name) in algebra.names().iter().enumerate() {
        if is_identifier(name) && name != "x" {
            bindings
                .insert(name.clone(), Element::basis(&algebra, idx).expect("index in range"));
        }
    }
    for spec in &cli.bind {
        let (name, rest) = spec.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("--bind expects NAME=COORDS, got `{spec}`"))
        })?;
        if !is_identifier(name) || name == "x" {
            return Err(CliError::Usage(format!("`{name}` is not a bindable identifier")));
        }
        let element = parse_coords(rest, &algebra)?;
        bindings.insert(name.to_string(), element);
    }
    Ok(Context { algebra, bindings })
}

fn lowered(ctx: &Context, text: &str) -> Result<Polynomial, CliError> {
    let ast = parse_expr(text, &ctx.bindings)?;
    Ok(lower(&ast, &ctx.algebra, &ctx.bindings)?)
}

/// Lowers and insists on a constant, returning it as an element.
fn constant_of(ctx: &Context, text: &str) -> Result<Element, CliError> {
    let p = lowered(ctx, text)?;
    if p.degree().unwrap_or(0) > 0 {
        return Err(CliError::Usage(format!(
            "`{text}` must be constant, but has degree {}",
            p.degree().expect("nonzero degree")
        )));
    }
    Ok(p.constant_part())
}

/// Lowers and insists on a homogeneous degree-one expression, returning its
/// arity-2 coefficient tensor.
fn linear_tensor_of(ctx: &Context, text: &str) -> Result<Tensor, CliError> {
    let p = lowered(ctx, text)?;
    if p.degree() != Some(1) || !p.constant_part().is_zero() {
        return Err(CliError::Usage(format!(
            "`{text}` must be homogeneous of degree one"
        )));
    }
    Ok(p.coeff(1).expect("degree-one coefficient").clone())
}

fn cmd_validate(cli: &Cli, path: &PathBuf) -> Result<String, CliError> {
    if !path.is_file() {
        return Err(CliError::Usage(format!("no such file: {}", path.display())));
    }
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read `{}`: {e}", path.display())))?;
    let algebra = Algebra::from_json(&text)?;
    if cli.json {
        Ok(json_line(json!({
            "command": "validate",
            "status": "pass",
            "dim": algebra.dim(),
            "basis": algebra.names(),
        })))
    } else {
        Ok(format!(
            "PASS: {}-dimensional algebra; associativity and unit laws hold\n",
            algebra.dim()
        ))
    }
}

fn cmd_eval(cli: &Cli, expr: &str, at: &str) -> Result<String, CliError> {
    let ctx = context(cli)?;
    let ast = parse_expr(expr, &ctx.bindings)?;
    let p = lower(&ast, &ctx.algebra, &ctx.bindings)?;
    let x = parse_coords(at, &ctx.algebra)?;
    let value = p.eval(&x)?;
    debug_assert_eq!(
        value,
        interpret(&ast, &x, &ctx.bindings)?,
        "lowering must agree with direct interpretation"
    );
    if cli.json {
        Ok(json_line(json!({
            "command": "eval",
            "degree": p.degree(),
            "value": render::element_json(&value),
        })))
    } else {
        Ok(format!("{value}\n"))
    }
}

fn cmd_add_mul(cli: &Cli, lhs: &str, rhs: &str, multiply: bool) -> Result<String, CliError> {
    let ctx = context(cli)?;
    let a = lowered(&ctx, lhs)?;
    let b = lowered(&ctx, rhs)?;
    let result = if multiply { a.mul(&b)? } else { a.add(&b)? };
    if cli.json {
        Ok(json_line(json!({
            "command": if multiply { "mul" } else { "add" },
            "result": render::poly_json(&result),
        })))
    } else {
        Ok(format!("{result}\n"))
    }
}

fn cmd_reduce(cli: &Cli, expr: &str, by: &str, side: Side) -> Result<String, CliError> {
    let ctx = context(cli)?;
    let p = lowered(&ctx, expr)?;
    let divisor = lowered(&ctx, by)?;
    if divisor.degree() != Some(1) {
        let got = match divisor.degree() {
            Some(d) => format!("degree {d}"),
            None => "the zero polynomial".to_string(),
        };
        return Err(CliError::Usage(format!("divisor must have degree exactly one, got {got}")));
    }
    let p0 = divisor.constant_part();
    let p1 = divisor.coeff(1).expect("degree-one coefficient").clone();
    let reduction = p.reduce_by_linear_affine(&p0, &p1, side)?;
    let mut checked = 0;
    for i in 0..ctx.algebra.dim() {
        let basis = Element::basis(&ctx.algebra, i).expect("index in range");
        assert!(
            reduction.holds_at(&p, &basis).expect("same algebra"),
            "internal error: reduction identity failed at basis element {i}"
        );
        checked += 1;
    }
    if cli.json {
        Ok(json_line(json!({
            "command": "reduce",
            "reduction": render::reduction_json(&reduction, checked),
        })))
    } else {
        Ok(render::reduction_human(&reduction, checked))
    }
}

fn cmd_zerodiv(cli: &Cli, expr: &str) -> Result<String, CliError> {
    let ctx = context(cli)?;
    let element = constant_of(&ctx, expr)?;
    let left = element.left_zero_divisor()?;
    let right = element.right_zero_divisor()?;
    if let Some(w) = left.witness() {
        assert!(element.mul(w).expect("same algebra").is_zero(), "left witness must annihilate");
    }
    if let Some(w) = right.witness() {
        assert!(w.mul(&element).expect("same algebra").is_zero(), "right witness must annihilate");
    }
    if cli.json {
        let witness_json = |w: Option<&Element>| match w {
            Some(e) => render::element_json(e),
            None => Value::Null,
        };
        Ok(json_line(json!({
            "command": "zerodiv",
            "element": render::element_json(&element),
            "left": {
                "zero_divisor": left.is_zero_divisor(),
                "witness": witness_json(left.witness()),
            },
            "right": {
                "zero_divisor": right.is_zero_divisor(),
                "witness": witness_json(right.witness()),
            },
        })))
    } else {
        let mut out = format!("element: {element}\n");
        match left.witness() {
            Some(w) => out.push_str(&format!("left: zero divisor, witness w = {w} (a w = 0)\n")),
            None => out.push_str("left: not a zero divisor\n"),
        }
        match right.witness() {
            Some(w) => out.push_str(&format!("right: zero divisor, witness w = {w} (w a = 0)\n")),
            None => out.push_str("right: not a zero divisor\n"),
        }
        Ok(out)
    }
}

fn cmd_invtensor(cli: &Cli, expr: &str) -> Result<String, CliError> {
    let ctx = context(cli)?;
    let t = linear_tensor_of(&ctx, expr)?;
    let inv = t.invert()?;
    let product = inv
        .operator_matrix()
        .expect("arity 2")
        .matmul(&t.operator_matrix().expect("arity 2"));
    assert!(product.is_identity(), "internal error: inverse must compose to the identity");
    if cli.json {
        Ok(json_line(json!({
            "command": "invtensor",
            "inverse": render::tensor_json(&inv),
        })))
    } else {
        Ok(format!("{inv}\n"))
    }
}

fn cmd_solve(cli: &Cli, expr: &str, rhs: &str) -> Result<String, CliError> {
    let ctx = context(cli)?;
    let t = linear_tensor_of(&ctx, expr)?;
    let b = constant_of(&ctx, rhs)?;
    let equation = LinearEquation::new(t.clone(), b.clone())?;
    let solution = equation.solve_allowing_singular()?;
    if let LinearSolution::Unique(x) | LinearSolution::Underdetermined { particular: x } =
        &solution
    {
        assert_eq!(t.apply(x).expect("same algebra"), b, "solution must satisfy the equation");
    }
    if cli.json {
        let (status, value) = match &solution {
            LinearSolution::Unique(x) => ("unique", render::element_json(x)),
            LinearSolution::NoSolution => ("no-solution", Value::Null),
            LinearSolution::Underdetermined { particular } => {
                ("underdetermined", render::element_json(particular))
            }
        };
        Ok(json_line(json!({
            "command": "solve",
            "status": status,
            "x": value,
        })))
    } else {
        Ok(match &solution {
            LinearSolution::Unique(x) => format!("unique solution: x = {x}\n"),
            LinearSolution::NoSolution => "no solution\n".to_string(),
            LinearSolution::Underdetermined { particular } => {
                format!("underdetermined; one solution: x = {particular}\n")
            }
        })
    }
}

pub(crate) fn json_line(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}
