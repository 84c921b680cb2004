//! Error types shared across the crate.

use thiserror::Error;

/// Errors from the polynomial / coefficient layer.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("coefficient domain mismatch: {left} vs {right}")]
    DomainMismatch { left: String, right: String },
    #[error("operands use different variable sets")]
    VariableSetMismatch,
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division in input is not supported (position {pos})")]
    DivisionInInput { pos: usize },
    #[error("denominator divisible by {prime}; reduction mod p fails")]
    ReductionFailure { prime: u64 },
    #[error("variable `{name}` of the polynomial is missing from the map")]
    MissingFromMap { name: String },
    #[error("polynomial has a non-integer coefficient; not expressible in the input grammar")]
    NonIntegerCoefficient,
    #[error("block `{0}` does not exist in the variable set")]
    UnknownBlock(String),
    #[error("invalid variable set: {0}")]
    InvalidVariableSet(String),
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
}

/// Errors from the Groebner engine.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("reduction budget exceeded after {steps} S-pair reductions (limit {limit})")]
    BudgetExceeded { steps: u64, limit: u64 },
    #[error("point does not lie on the variety: generator {index} evaluates to a nonzero value")]
    PointNotOnVariety { index: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Errors from model construction and model-file loading.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("model file schema violation: {0}")]
    Schema(String),
    #[error("equation {index} (`{text}`) is not homogeneous in block `{block}`")]
    NotHomogeneous {
        index: usize,
        text: String,
        block: String,
    },
    #[error("equation {index} does not vanish on the parametrization; remainder `{remainder}`")]
    VanishingFailure { index: usize, remainder: String },
    #[error("section count {got} does not match coordinate count {expected}")]
    SectionCount { got: usize, expected: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
