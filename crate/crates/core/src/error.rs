use num_complex::Complex64;
use thiserror::Error;

/// Errors produced by the toolkit.
///
/// The CLI maps `Parameter`, `Mode` and `Contract` to configuration failures
/// (exit 2) and the numeric variants to computation failures (exit 3).
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside its admissible range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A request that is undefined for the selected expansion mode.
    #[error("mode error: {0}")]
    Mode(String),

    /// An input violates a structural contract (e.g. asymmetry beyond
    /// tolerance, size mismatch, index out of range).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Eigeniteration failed to converge. Carries the eigenvalues that were
    /// locked in before the sweep budget ran out.
    #[error("eigeniteration did not converge after {sweeps} sweeps ({converged} of {size} eigenvalues locked)")]
    NonConvergence {
        sweeps: usize,
        converged: usize,
        size: usize,
        partial: Vec<Complex64>,
    },

    /// A three-term recursion cannot be continued because an off-diagonal
    /// coefficient vanishes: the matrix decouples into independent blocks.
    #[error("degenerate recursion: off-diagonal b[{index}] is negligible; split the blocks")]
    DegenerateRecursion { index: usize },

    /// A numeric failure that is not a convergence problem (e.g. a quadrature
    /// rule whose weights failed validation).
    #[error("numeric error: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by bad inputs rather than failed computation.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::Parameter(_) | Error::Mode(_) | Error::Contract(_)
        )
    }
}
