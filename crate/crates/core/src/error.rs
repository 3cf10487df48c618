use alloc::string::String;

use crate::exterior::Element;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("index {index} out of range for length {len}")]
    Index { index: usize, len: usize },
    #[error("character {0} is not an integer combination of the declared oracle generators")]
    Unresolvable(String),
    #[error("invalid oracle: {0}")]
    Oracle(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("bracket table has no entry for ({0}, {1})")]
    MissingBracket(String, String),
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error("assumption violated: {0}")]
    Assumption(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("{0} leaves the span of the model")]
    Escapes(String),
    #[error("star operator leaves the model: {0}")]
    StarClosure(String),
    #[error("not a holomorphic Poisson structure ({condition}); residual {residual}")]
    NotPoisson { condition: &'static str, residual: Element },
    #[error("singular pairing: {0}")]
    Singular(String),
    #[error("invalid input: {0}")]
    Input(String),
}
