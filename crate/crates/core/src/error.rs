use thiserror::Error;

use crate::kchar::{Monomial, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The trivial weight occurs with negative multiplicity, so the Euler
    /// operator would divide by `1 - 1`.
    #[error("trivial weight in the denominator of the K-theoretic Euler class")]
    TrivialDenominator,

    /// The cohomological Euler class of the trivial weight is the zero linear form.
    #[error("trivial weight passed to the cohomological Euler class")]
    TrivialWeight,

    /// A factor with negative multiplicity vanishes at the evaluation point.
    #[error("pole at evaluation point (factor 1 - {0})")]
    PoleAtPoint(Monomial),

    /// A denominator specialises to the zero polynomial in the free variable.
    #[error("denominator vanishes identically after specialisation")]
    ZeroDenominator,

    /// A vertex term kept a trivial weight after cancellation.
    #[error("vertex term is not movable: trivial weight with coefficient {0}")]
    MovabilityViolation(i64),

    /// The growing factors of a framing limit do not cancel their w-degree.
    #[error("framing limit diverges: residual framing monomial {0}")]
    DivergentLimit(Monomial),

    #[error("variable {0} has no assigned value")]
    UnassignedVariable(Var),

    #[error("invalid ranks ({0}, {1}): need r1 + r2 >= 1")]
    InvalidRanks(u32, u32),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Every drawn evaluation point hit a pole.
    #[error("no pole-free evaluation point after {0} attempts")]
    RetriesExhausted(usize),
}

impl Error {
    /// Errors that a fresh evaluation point can cure.
    pub fn is_point_failure(&self) -> bool {
        matches!(self, Error::PoleAtPoint(_) | Error::ZeroDenominator)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
