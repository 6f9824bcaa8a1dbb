use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Quantum numbers or model parameters that do not describe a valid state.
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid superpotential: {0}")]
    InvalidSuperpotential(String),

    /// Refinement budget exhausted; carries the last two estimates.
    #[error("quadrature did not converge (last estimates {previous:e} and {last:e})")]
    Convergence { previous: f64, last: f64 },

    #[error("map verification failed: {0}")]
    Verification(String),

    #[error("unstable trap: confinement requires e*V > 0, got e*V = {product:e}")]
    UnstableTrap { product: f64 },

    #[error("invalid trap configuration: {0}")]
    InvalidTrap(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
