use thiserror::Error;

/// Errors produced by the exact engine, the numeric oracles and the fitter.
#[derive(Debug, Error)]
pub enum Error {
    /// The hyperplane has no component along the sphere factor (|alpha| = 0).
    #[error("degenerate hyperplane: the x-part of the normal vanishes")]
    DegenerateHyperplane,

    #[error("hyperplane (a = {a}, b = {b}) lies outside the lacuna domain")]
    OutsideLacuna { a: f64, b: f64 },

    #[error("quadrature failed: error estimate {estimate:e} above target {target:e} after {intervals} intervals")]
    QuadratureFailure {
        estimate: f64,
        target: f64,
        intervals: usize,
    },

    #[error("design matrix is rank deficient (rank {rank} < {columns} columns)")]
    RankDeficient { rank: usize, columns: usize },

    #[error("dimension {0} is even; an exact cap polynomial exists only in odd dimensions")]
    EvenDimension(usize),

    #[error("hyperplane does not intersect the body")]
    NoIntersection,

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
