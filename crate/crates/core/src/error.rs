use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("symbol {symbol} out of range for alphabet of size {alphabet_size}")]
    SymbolOutOfRange { symbol: usize, alphabet_size: usize },

    #[error("malformed word text: {0}")]
    Malformed(String),

    #[error("invalid parameters: {0}")]
    Domain(String),

    #[error("word {index} is not a balanced binary word")]
    NotBalancedBinary { index: usize },

    #[error("expected {expected} words, got {actual}")]
    Arity { expected: usize, actual: usize },

    #[error("enumeration cost {cost} exceeds budget {budget}")]
    BudgetExceeded { cost: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
