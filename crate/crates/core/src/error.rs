use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuditError {
    #[error("qubit count must be between 1 and {max}, got {n}")]
    InvalidQubitCount { n: usize, max: usize },
    #[error("level {level} is out of range for a system with {levels} levels")]
    LevelOutOfRange { level: usize, levels: usize },
    #[error("rotation levels ({j}, {k}) must satisfy j < k")]
    UnorderedLevels { j: usize, k: usize },
    #[error("qubit index {index} is outside 1..={n}")]
    QubitOutOfRange { index: usize, n: usize },
    #[error("{0} gate needs at least one target")]
    EmptyTargets(&'static str),
    #[error("{0} gate needs at least one control")]
    EmptyControls(&'static str),
    #[error("qubit {0} appears as both control and target")]
    Overlap(usize),
    #[error("malformed bit string {0:?}")]
    BadBitString(String),
    #[error("program for {found} qubits cannot be combined with {expected} qubits")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("state has {found} amplitudes, expected {expected}")]
    StateLength { expected: usize, found: usize },
    #[error("iteration count must be at least 1")]
    ZeroIterations,
    #[error("state norm {0} differs from 1")]
    NotNormalized(f64),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, QuditError>;
