//! Error type shared by every module in the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Matrix deviates from its conjugate transpose beyond tolerance.
    #[error("matrix is not Hermitian (max entry deviation {0:.3e})")]
    NotHermitian(f64),

    /// Operands of a matrix operation do not conform.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// State amplitudes do not sum to unit norm within tolerance.
    #[error("state is not normalized (|norm^2 - 1| = {0:.3e})")]
    NotNormalized(f64),

    /// The relative phase arg(a0) - arg(a7) is undefined because a0*a7 = 0.
    #[error("relative phase undefined: {0}")]
    UndefinedPhase(String),

    /// Amplitudes cannot form a valid state (e.g. all zero).
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// A WWZB class id outside the classified orbits.
    #[error("unknown WWZB class id {0}")]
    UnknownClass(usize),

    /// A coefficient pattern that does not come from a +/-1 sign function.
    #[error("not a WWZB family element: {0}")]
    InvalidFamily(String),

    /// Out-of-domain parameters (rates, times, angles, operator mismatches).
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// A time or angle grid with no points.
    #[error("empty grid: {0}")]
    EmptyGrid(String),

    /// Requested a closed-form expression where none is defined.
    #[error("no closed form: {0}")]
    NoClosedForm(String),

    /// Unusable run configuration (CLI exit status 2).
    #[error("bad configuration: {0}")]
    BadConfig(String),

    /// Internal numerical contract broken (CLI exit status 3).
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
