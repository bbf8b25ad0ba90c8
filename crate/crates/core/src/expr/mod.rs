//! Expression language shared by every ring, canonical printer, and the
//! on-disk result cache.
//!
//! Grammar:
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := literal | gen | '(' expr ')'
//! gen    := name ['(' arg (',' arg)* ')']
//! ```
//!
//! Literals are integers or `a/b` rationals. Each ring supplies a
//! [`SymbolTable`] that turns generator references into polynomials and
//! renders generators back to text.

mod cache;
mod parse;
mod print;

pub use cache::{Cache, CacheError, CacheKey, CACHE_VERSION};
pub use parse::{parse_expr, Arg, Expr, Pos};
pub use print::{print_canonical, print_rational};

use crate::algebra::{GenSymbol, Polynomial, RingId};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown generator '{name}' at line {line}, column {col}")]
    UnknownGenerator { name: String, line: usize, col: usize },
    #[error("generator '{name}' expects {expected} argument(s), got {got}")]
    Arity { name: String, expected: usize, got: usize },
    #[error("negative exponent at line {line}, column {col}")]
    NegativeExponent { line: usize, col: usize },
    #[error("invalid argument for '{name}': {msg}")]
    Argument { name: String, msg: String },
}

/// Outcome of resolving a generator reference against a ring.
pub enum Resolved {
    Value(Polynomial),
    Unknown,
    Arity(usize),
    Invalid(String),
}

/// Ring-scoped generator vocabulary.
pub trait SymbolTable {
    fn ring(&self) -> RingId;

    /// Resolves `name(args)`; nullary generators are written without
    /// parentheses and arrive with empty `args`.
    fn resolve(&self, name: &str, args: &[Arg]) -> Resolved;

    /// Text for a single generator, in the same syntax `resolve` accepts.
    fn render(&self, g: &GenSymbol) -> String;
}

/// Parses and evaluates `text` in one step.
pub fn parse_in(text: &str, table: &dyn SymbolTable) -> Result<Polynomial, ExprError> {
    parse_expr(text)?.eval(table)
}

/// Helper for symbol tables: checks the argument count.
pub fn expect_arity(args: &[Arg], n: usize) -> Result<(), Resolved> {
    if args.len() == n {
        Ok(())
    } else {
        Err(Resolved::Arity(n))
    }
}

/// Helper for symbol tables: integer argument `i` in `lo..=hi`.
pub fn int_arg(args: &[Arg], i: usize, lo: i64, hi: i64) -> Result<u16, Resolved> {
    match args.get(i) {
        Some(Arg::Int(v)) if *v >= lo && *v <= hi => Ok(*v as u16),
        Some(Arg::Int(v)) => Err(Resolved::Invalid(format!("index {v} out of range {lo}..={hi}"))),
        Some(Arg::Ident(s)) => Err(Resolved::Invalid(format!("expected an integer, got '{s}'"))),
        None => Err(Resolved::Arity(i + 1)),
    }
}
