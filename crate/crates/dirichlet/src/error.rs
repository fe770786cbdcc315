//! Error type shared by every evaluation routine in the crate.

use thiserror::Error;

/// Errors reported by table construction and series evaluation.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// A function was evaluated at (or on the wrong side of) a pole,
    /// e.g. `L(1, chi_1)` for a principal character.
    #[error("evaluation at a pole: {0}")]
    Pole(String),

    /// An argument was outside the supported domain (modulus, residue
    /// class, exponent, or truncation point).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A truncated Euler product came too close to the branch cut of the
    /// complex logarithm, so `log L` could not be certified single-valued.
    /// Raising the truncation point `M` removes the risk.
    #[error("branch risk in log of truncated Euler product: {0}")]
    BranchRisk(String),

    /// A quantity that must be real after conjugate cancellation kept an
    /// imaginary residue above the certification threshold.
    #[error("imaginary residue too large: |Im| = {0} exceeds {1}")]
    ImaginaryResidue(String, String),

    /// An adaptive series failed to reach the requested tolerance within
    /// its growth budget.
    #[error("requested precision unreachable: {0}")]
    PrecisionUnreachable(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
