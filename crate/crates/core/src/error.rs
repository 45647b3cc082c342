use thiserror::Error;

/// Errors raised by the numerical and algebraic routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported (α,β) = ({alpha}, {beta})")]
    UnsupportedParams { alpha: f64, beta: f64 },

    #[error("series overflow; use ml_eval")]
    SeriesOverflow,

    #[error("sector condition violated: |arg z| = π/2 is not inside the decay sector for α = {alpha}")]
    SectorViolated { alpha: f64 },

    #[error("non-finite value produced while evaluating {0}")]
    NonFinite(&'static str),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("empty Taylor support")]
    EmptySupport,

    #[error("phase is not normalized: term {term} has total degree ≤ 1 (f(0)=0 and ∇f(0)=0 required)")]
    NotNormalized { term: String },

    #[error("unbounded principal face")]
    UnboundedPrincipalFace,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dyadic range does not cover domain: need 2^K ≥ {needed:.6e}, have K = {levels}")]
    DyadicRange { needed: f64, levels: u32 },

    #[error("fit needs at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("singular design matrix")]
    SingularDesign,
}

pub type Result<T> = std::result::Result<T, Error>;
