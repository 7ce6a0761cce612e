use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("frame is not orthonormal: worst deviation {deviation:.3e} exceeds {tol:.1e}")]
    NotOrthonormal { deviation: f64, tol: f64 },

    #[error("vectors are rank deficient at position {index} (residual norm {residual:.3e})")]
    RankDeficient { index: usize, residual: f64 },

    #[error("requested order {order} exceeds the jet degree bound {r}")]
    OrderTooHigh { order: usize, r: usize },

    #[error("gradient of the jet vanishes at the origin")]
    ZeroGradient,

    #[error("frame is not orthogonal to the gradient at the origin (|u·∇q(0)| = {dot:.3e})")]
    NotOrthogonalToGradient { dot: f64 },

    #[error("shears with different special coordinates ({left} and {right}) cannot be composed")]
    ShearCoordinateMismatch { left: usize, right: usize },

    #[error("ill-conditioned system: |det| = {det:.3e} is below {threshold:.3e}")]
    IllConditioned { det: f64, threshold: f64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
