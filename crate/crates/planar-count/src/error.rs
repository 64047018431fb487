use std::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A constructor was handed data violating a structural invariant.
    Invalid(String),
    /// An enumeration stream hit the configured item budget.
    BudgetExceeded { budget: u64 },
    /// A dynamic-programming table outgrew its state cap.
    StateLimit { states: usize, limit: usize },
    /// The requested dimension would force a d! sweep that cannot finish.
    DimensionTooLarge { d: usize, max: usize },
    /// Antidifferentiation hit an exponent of -1 in the named variable.
    AntidiffPole { var: String },
    /// The walk satisfies the recovery condition, so no toggle point exists.
    NothingToToggle,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
            Error::BudgetExceeded { budget } => {
                write!(f, "enumeration budget of {budget} items exceeded")
            }
            Error::StateLimit { states, limit } => {
                write!(f, "walk table needs {states} states, over the cap of {limit}")
            }
            Error::DimensionTooLarge { d, max } => {
                write!(f, "dimension {d} exceeds the signed-sum cap of {max}")
            }
            Error::AntidiffPole { var } => {
                write!(f, "antiderivative undefined: exponent -1 in {var}")
            }
            Error::NothingToToggle => {
                write!(f, "walk satisfies the recovery condition; involution undefined")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
