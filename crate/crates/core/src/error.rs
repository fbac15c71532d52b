use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("modulus {modulus:?} is reducible over F_{p}")]
    ReducibleModulus { p: u32, modulus: Vec<u32> },

    #[error("field of order {order} exceeds the table cap {cap}")]
    CapExceeded { order: u128, cap: u64 },

    /// A field always has a primitive element, so hitting this means the
    /// table construction itself is broken.
    #[error("no primitive element found for modulus {0:?}")]
    NoPrimitive(Vec<u32>),

    #[error("inversion of zero")]
    DivisionByZero,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("budget exceeded: {needed} candidates, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    /// A built-in consistency check produced a counterexample.
    #[error("internal assertion failed: {0}")]
    Contradiction(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line frontend.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 3,
            Error::NoPrimitive(_) | Error::Contradiction(_) => 4,
            _ => 2,
        }
    }
}
