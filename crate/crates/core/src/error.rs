use thiserror::Error;

/// Errors raised anywhere in the geometry pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate Gram matrix (condition number {condition:.3e}); point is singular or not immersed")]
    DegenerateGram { condition: f64 },

    #[error("division by a jet with zero value")]
    ZeroDivision,

    #[error("chart domain violation: {0}")]
    ChartDomain(String),

    #[error("invalid parameter for {surface}: {message}")]
    InvalidParameter { surface: String, message: String },

    #[error("point ({p1}, {p2}) is excluded from the domain: {reason}")]
    ExcludedPoint { p1: f64, p2: f64, reason: String },

    #[error("non-finite value in {what} at ({p1}, {p2})")]
    NonFinite { what: String, p1: f64, p2: f64 },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("domain is empty after applying margins")]
    EmptyDomain,

    #[error("second derivative leaves the frame split (residual {residual:.3e})")]
    SplitResidual { residual: f64 },

    #[error("circularity defect routes disagree by {0:.3e}")]
    RouteDisagreement(f64),

    #[error("identity {identity} violated (defect {defect:.3e})")]
    IdentityViolation { identity: &'static str, defect: f64 },

    #[error("ellipse of curvature is not a circle (|D| = {defect:.3e})")]
    NotCircular { defect: f64 },

    #[error("unknown surface kind `{0}`")]
    UnknownSurface(String),
}

pub type Result<T> = std::result::Result<T, Error>;
