use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: expected {expected} variables, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("inexact polynomial division, remainder has {terms} terms")]
    NotDivisible { terms: usize, remainder: String },

    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),

    #[error("degenerate evaluation: {0}")]
    Degenerate(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
