use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what} index {index} out of range 0..{bound}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("dimension {0} is not a power of two >= 2")]
    BadDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid qubit subset {subset:?} for a {n}-qubit register")]
    InvalidSubset { subset: Vec<usize>, n: usize },

    #[error("ket is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not a valid density operator: {0}")]
    InvalidState(String),

    #[error("matrix is not a projector: {0}")]
    InvalidProjector(String),

    #[error("invalid parameter --{name} = {value}: {reason}")]
    InvalidParam {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    EigenNoConvergence { sweeps: usize, off_norm: f64 },

    #[error("ragged row {row}: expected {expected} fields, got {got}")]
    RaggedRow {
        row: usize,
        expected: usize,
        got: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
