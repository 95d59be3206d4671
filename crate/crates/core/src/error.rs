use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation requested inside the pole-exclusion radius of a singularity.
    #[error("pole at {location} (requested {requested}, exclusion radius {radius})")]
    Pole { location: f64, requested: f64, radius: f64 },

    #[error("complete elliptic integral diverges at m = 1")]
    Divergent,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// A reduction denominator vanished (omega = 0 for mBBM, alpha = 0 for NLS, ...).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A printed validity condition of a solution is violated.
    #[error("condition violated: {0}")]
    Condition(String),

    #[error("missing parameter: {0}")]
    MissingParameter(String),

    #[error("unknown family: {0}")]
    UnknownFamily(String),

    #[error("unknown solution {solution} for {pde}")]
    UnknownSolution { pde: String, solution: String },

    #[error("unknown pde: {0}")]
    UnknownPde(String),

    #[error("unresolved errata for {family}: no candidate correction passes")]
    UnresolvedErrata { family: String },

    #[error("constraint solve did not converge on any start (final residuals {residuals:?})")]
    NonConvergence { residuals: Vec<f64> },
}
