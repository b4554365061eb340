use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("radius r = {0} is negative")]
    NegativeRadius(f64),

    #[error("r = {r} lies outside the tabulated range [{min}, {max}]")]
    OutOfRange { r: f64, min: f64, max: f64 },

    #[error("deformation |alpha| = {alpha} exceeds the guard {guard}")]
    DeformationGuard { alpha: f64, guard: f64 },

    #[error("no classical motion at E = {0}")]
    NoClassicalMotion(f64),

    #[error("E = {energy} is not below the escape threshold {threshold}")]
    Unbound { energy: f64, threshold: f64 },

    #[error("unsupported potential: {0}")]
    UnsupportedPotential(String),

    #[error("T = {target} is unreachable: {reason}")]
    Unreachable { target: f64, reason: String },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("dimension D = {0} is not supported (expected 2 or 3)")]
    Dimension(u32),

    #[error("exponent beta = {0} is singular here")]
    SingularBeta(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("no bound state with {nodes} nodes at lambda = {lambda}")]
    NoBoundState { nodes: u32, lambda: f64 },

    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    #[error("spectrum tables carry different state labels: {0}")]
    LabelMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by bad input rather than by a numerical failure.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidPotential(_)
                | Error::DeformationGuard { .. }
                | Error::Dimension(_)
                | Error::SingularBeta(_)
                | Error::InvalidParameter(_)
                | Error::InvalidState(_)
                | Error::UnsupportedPotential(_)
                | Error::LabelMismatch(_)
                | Error::Parse(_)
                | Error::Io(_)
                | Error::Json(_)
                | Error::Csv(_)
        )
    }
}
