use thiserror::Error;

/// Errors raised by the builders, enumerators and verifiers.
///
/// Constraint errors carry the name of the violated condition so that a
/// caller can report which admissibility rule rejected its parameters.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("indeterminate root count: zero polynomial")]
    IndeterminateRootCount,

    #[error("zero denominator in rational function")]
    ZeroDenominator,

    #[error("constraint violated ({constraint}): {detail}")]
    Constraint {
        constraint: &'static str,
        detail: String,
    },

    #[error("seed has nodes on domain: {0}")]
    SeedHasNodes(String),

    #[error("singular intermediate: {0}")]
    SingularIntermediate(String),

    #[error("PHA violation: {0}")]
    PhaViolation(String),

    #[error("construction inconsistency: {0}")]
    ConstructionInconsistency(String),

    #[error("not implemented: {0}")]
    NotImplemented(String),

    #[error("no root branch: factor {0} is independent of u and E and nonzero at x = 0")]
    NoRootBranch(String),

    #[error("non-finite potential sample at x = {0}")]
    NonFinitePotential(f64),

    #[error("cannot resolve {requested} levels on this grid: {detail}")]
    Unresolvable { requested: usize, detail: String },

    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn constraint(constraint: &'static str, detail: impl Into<String>) -> Self {
        Error::Constraint {
            constraint,
            detail: detail.into(),
        }
    }

    /// Whether the error reports a broken internal invariant rather than bad input.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::PhaViolation(_)
                | Error::ConstructionInconsistency(_)
                | Error::QuadratureNonConvergence(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
