use std::fmt;

use thiserror::Error;

/// Failure to parse a polynomial expression or a data file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input (for data files: offset into the value text).
    pub offset: usize,
    /// Tokens that would have been accepted at `offset`.
    pub expected: Vec<String>,
    /// What was actually found, or `None` at end of input.
    pub found: Option<String>,
    /// Optional context such as a file line number.
    pub context: Option<String>,
}

impl ParseError {
    pub(crate) fn new(offset: usize, expected: &[&str], found: Option<String>) -> Self {
        ParseError {
            offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
            context: None,
        }
    }

    pub(crate) fn message(context: impl Into<String>) -> Self {
        ParseError { offset: 0, expected: Vec::new(), found: None, context: Some(context.into()) }
    }

    pub(crate) fn with_context(mut self, context: impl Into<String>) -> Self {
        let ctx = context.into();
        self.context = Some(match self.context.take() {
            Some(inner) => format!("{ctx}: {inner}"),
            None => ctx,
        });
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(ctx) = &self.context {
            write!(f, "{ctx}")?;
            if self.expected.is_empty() {
                return Ok(());
            }
            write!(f, ": ")?;
        }
        write!(f, "at byte {}: expected one of {{{}}}", self.offset, self.expected.join(", "))?;
        match &self.found {
            Some(tok) => write!(f, ", found {tok:?}"),
            None => write!(f, ", found end of input"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-exact division: ({dividend}) / ({divisor}) leaves remainder {remainder}")]
    NonExactDivision { dividend: String, divisor: String, remainder: String },

    #[error("not a polynomial: {0}")]
    NotAPolynomial(String),

    #[error("parse error {0}")]
    Parse(#[from] ParseError),

    #[error("validation failed for {table}, entry {label}, rule {rule}: {detail}")]
    Validation { table: String, label: String, rule: &'static str, detail: String },

    #[error("zero polynomial has no invariants")]
    ZeroPolynomial,

    #[error("root system too large for brute-force enumeration ({roots} roots, limit 16)")]
    TooLarge { roots: usize },

    #[error("q = {q} is not congruent to {residue} modulo {modulus}")]
    ResidueMismatch { q: u64, modulus: u64, residue: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("group order {order} exceeds the cap {cap}")]
    CapExceeded { order: String, cap: u64 },

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("consistency check failed: {0}")]
    Assertion(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
