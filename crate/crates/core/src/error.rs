use thiserror::Error;

pub type Result<T> = std::result::Result<T, JetError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    /// A point lies outside the open positive cone yⁱ > 0.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("construction error: {0}")]
    Construction(String),
    /// G_ij11 is (numerically) singular at the evaluation point.
    #[error("singular tensor: |det G_ij11| = {det:e} below threshold {threshold:e}")]
    SingularTensor { det: f64, threshold: f64 },
    #[error("degenerate denominator: |G1111 - 𝒢1111| = {value:e}")]
    DegenerateDenominator { value: f64 },
    #[error("config error at `{path}`: {reason}")]
    Config { path: String, reason: String },
}

impl JetError {
    pub fn config(path: impl Into<String>, reason: impl Into<String>) -> Self {
        JetError::Config {
            path: path.into(),
            reason: reason.into(),
        }
    }
}
