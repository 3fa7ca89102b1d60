use thiserror::Error;

use crate::model::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MawError {
    #[error("symbol {} (code {symbol}) at position {position} is not in the alphabet", display_symbol(*.symbol))]
    SymbolNotInAlphabet { symbol: Symbol, position: usize },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A caller handed an operation data that cannot arise from a valid step.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    /// A proven structural property failed on a concrete input.
    #[error("claim falsified: {claim} (witness {witness})")]
    Falsified { claim: String, witness: String },

    #[error("exhaustive campaign needs {estimate} step evaluations, budget is {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
}

fn display_symbol(symbol: Symbol) -> char {
    char::from(symbol)
}

pub type Result<T> = std::result::Result<T, MawError>;
