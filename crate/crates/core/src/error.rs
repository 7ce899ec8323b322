//! Error taxonomy shared by every solver in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, SpectralError>;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("power series did not meet the tail criterion within {max_order} terms")]
    NonConvergence { max_order: usize },

    #[error("boundary normalization sum cancels to noise; profile cannot be scaled to Q(1) = 1")]
    DegenerateNormalization,

    #[error("logarithmic derivative blew up near r = {r:.6e}; radial profile has an interior zero")]
    RiccatiPole { r: f64 },

    #[error("integrator exceeded its step budget at r = {r:.6e}")]
    StepLimitExceeded { r: f64 },

    #[error("integrated profile vanished at the boundary relative to its interior magnitude")]
    SingularSolution,

    #[error("catastrophic cancellation in the closed-form eigenvalue at t = {t}")]
    CancellationLoss { t: f64 },

    #[error("spectrum truncated too early to rank entry {rank}; raise k_max")]
    TruncationInsufficient { rank: usize },

    #[error("boundary eigenvalue {value} fell below zero for mode {label}")]
    NegativeEigenvalue { value: f64, label: String },

    #[error("angular profile must vanish at the origin on a simply connected domain (g(0) = {value})")]
    IllDefinedAtOrigin { value: f64 },

    #[error("comparison weight became nonpositive at r = {r:.6}; bound undefined there")]
    ThetaNonpositive { r: f64 },

    #[error("quadrature on [{a}, {b}] failed to reach the requested accuracy")]
    QuadratureFailure { a: f64, b: f64 },

    #[error("mode {label}: {source}")]
    Mode {
        label: String,
        #[source]
        source: Box<SpectralError>,
    },
}

impl SpectralError {
    /// Wraps an error with the spectral mode that produced it.
    pub fn for_mode(self, label: impl Into<String>) -> Self {
        SpectralError::Mode {
            label: label.into(),
            source: Box::new(self),
        }
    }
}
