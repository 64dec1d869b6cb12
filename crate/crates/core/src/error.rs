use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |m - m†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is {trace}, expected 1")]
    InvalidTrace { trace: f64 },

    #[error("vector norm is {norm}, expected 1")]
    NotNormalized { norm: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {residual:e})")]
    ConvergenceFailure { sweeps: usize, residual: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} exceeds the configured maximum {max}")]
    DimensionOverflow { dim: usize, max: usize },

    #[error("matrix data has {found} entries, expected {expected}")]
    BadShape { expected: usize, found: usize },

    #[error("rank {rank} outside 1..={dim}")]
    BadRank { rank: usize, dim: usize },

    #[error("value {value} outside the domain [0, 1]")]
    Domain { value: f64 },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("ensemble weights sum to {sum}, expected 1")]
    BadWeights { sum: f64 },

    #[error("channel is not trace preserving (max |ΣK†K - I| = {deviation:e})")]
    NotTracePreserving { deviation: f64 },

    #[error("channel must map a space onto itself, got {dim_in} -> {dim_out}")]
    NonSquareChannel { dim_in: usize, dim_out: usize },

    #[error("channel output is not a density matrix: {0}")]
    OutputNotDensity(Box<Error>),

    #[error("purification optimizer did not converge (best {best}, gap estimate {gap:e})")]
    OptimizerDidNotConverge { best: f64, gap: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
