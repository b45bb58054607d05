use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the routine.
    #[error("domain error in {routine}: {detail}")]
    Domain { routine: &'static str, detail: String },

    /// An iterative or adaptive scheme ran out of budget before meeting its tolerance.
    #[error("{routine} did not converge after {work} steps (last error estimate {estimate:e})")]
    NonConvergence {
        routine: &'static str,
        work: usize,
        estimate: f64,
    },

    /// A function specification violates one of its construction invariants.
    #[error("invalid function specification: {0}")]
    InvalidFunction(String),

    /// A compact function descriptor could not be parsed.
    #[error("cannot parse function descriptor {descriptor:?}: {reason}")]
    Descriptor { descriptor: String, reason: String },

    /// Rejection sampling could not produce an admissible function.
    #[error("generator exhausted after {attempts} rejected draws")]
    GenerationExhausted { attempts: usize },

    /// Two independent evaluations of the same quantity disagree.
    #[error("cross-check failed for {quantity}: {first} vs {second}")]
    CrossCheck {
        quantity: &'static str,
        first: f64,
        second: f64,
    },

    /// A configuration value breaks its invariant.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(routine: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        routine,
        detail: detail.into(),
    }
}
