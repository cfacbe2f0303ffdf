use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or input violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("band too narrow: scheme yields {modes} modes, at least 3 required")]
    BandTooNarrow { modes: usize },

    #[error("density vanishes at omega = {omega}; generalized spacing undefined")]
    VanishingDensity { omega: f64 },

    #[error("eigensolver did not converge for a {size}x{size} matrix")]
    EigenNonConvergence { size: usize },

    #[error("confluent roots: sigma = 0 at omega = {omega}")]
    ConfluentRoots { omega: f64 },

    #[error("time grids differ: {0}")]
    GridMismatch(String),

    #[error("index {index} out of range for bath of {len} modes")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("step too large for oracle integration: step * max|omega| = {0} (must be < 0.1)")]
    StepTooLarge(f64),

    #[error("cannot realize target of {target} modes: {reason}")]
    UnsatisfiableTarget { target: usize, reason: String },

    #[error("non-positive error value {0}; log-log fit undefined")]
    NonPositiveError(f64),

    #[error("malformed CSV: {0}")]
    Format(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerics themselves rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::EigenNonConvergence { .. }
                | Error::ConfluentRoots { .. }
                | Error::NonPositiveError(_)
        )
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
