//! Error taxonomy. Configuration problems and numerical-consistency failures
//! are kept distinct because the command-line front end maps them to different
//! exit codes (2 and 3 respectively).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("config error: {0}")]
    Config(String),

    #[error("pole of zeta(s,a) at s=1")]
    HurwitzPole,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("gauss sum requires a primitive character, got modulus {modulus} conductor {conductor}")]
    NotPrimitive { modulus: u32, conductor: u32 },

    #[error("missed zeros: census expected {expected} found {found} in window [{lo}, {hi}]")]
    MissedZeros {
        expected: i64,
        found: i64,
        lo: f64,
        hi: f64,
    },

    #[error("root number error: rotated L-value not real at t={t} (|Im|/|Z| = {ratio:.3e})")]
    RootNumber { t: f64, ratio: f64 },

    #[error("branch ambiguity continuing arg L at sigma={sigma}, t={t}: phase step >= pi/2 after 3 halvings")]
    BranchAmbiguity { sigma: f64, t: f64 },

    #[error("functional-equation consistency failure: residual {residual:.3e} at s = {s_re} + {s_im}i")]
    FunctionalEquation { residual: f64, s_re: f64, s_im: f64 },

    #[error("quadrature non-convergence: {0}")]
    Quadrature(String),

    #[error("excluded sample: ordinate {gamma} flagged near an L-zero")]
    ExcludedSample { gamma: f64 },

    #[error("ordinate lists misaligned: {0}")]
    Misaligned(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("numerical-consistency failure: {0}")]
    Consistency(String),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the front end should use for this error.
    #[must_use]
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Domain(_) => 2,
            _ => 3,
        }
    }
}
