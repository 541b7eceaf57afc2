use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Parameters outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// A search or construction would exceed its configured budget.
    ///
    /// `lower_bound` carries the best bound proven before giving up, when
    /// the operation computes one.
    #[error("budget exceeded: {what}{}", match .lower_bound { Some(b) => format!(" (lower bound so far: {b})"), None => String::new() })]
    BudgetExceeded {
        what: String,
        lower_bound: Option<u64>,
    },

    /// No object with the requested property exists (for example a
    /// distinguishing coloring with too few colors).
    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn budget(what: impl Into<String>, lower_bound: Option<u64>) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            lower_bound,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
