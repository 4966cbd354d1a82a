use thiserror::Error;

use crate::ttree::TreeViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid tree: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidTree(Vec<TreeViolation>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("operator is not Hermitian (max imaginary part {0:.3e})")]
    NotHermitian(f64),

    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("pairing for mode {0} cannot preserve the vacuum")]
    VacuumNotPreserved(usize),

    #[error("empty selection: {0}")]
    EmptySelection(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
