use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NonHermitian(f64),

    #[error("invalid density matrix: {0}")]
    InvalidState(&'static str),

    #[error("invalid Bell spectrum: {0}")]
    InvalidSpectrum(&'static str),

    #[error("alpha must be finite and >= 1 (got {0})")]
    AlphaOutOfRange(f64),

    #[error("Bell value {value} exceeds the quantum bound {bound}")]
    SuperQuantum { value: f64, bound: f64 },

    #[error("Bell value {value} does not violate the classical bound {bound}")]
    NoViolation { value: f64, bound: f64 },

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(&'static str),

    #[error("binary entropy argument {0} outside [0, 1]")]
    DomainError(f64),

    #[error("state is degenerate for the optimal-measurement construction")]
    DegenerateState,

    #[error("Bell value {value} is not attainable at theta = {theta} (largest eigenvalue {max})")]
    InfeasibleTheta { value: f64, theta: f64, max: f64 },

    #[error("optimizer failed: best constraint residual {residual:.3e}")]
    SolverFailure { residual: f64 },

    #[error("improvement condition does not hold for these parameters")]
    ConditionNotMet,

    #[error("analytic and numeric eigenvalues disagree by {0:.3e}")]
    EigenvalueMismatch(f64),
}
