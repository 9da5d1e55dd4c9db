use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("decimal value {value} does not fit on {qubits} qubits")]
    DecimalRange { value: u64, qubits: usize },

    #[error("{qubits} qubits exceeds the supported maximum of {max}")]
    TooManyQubits { qubits: usize, max: usize },

    #[error("invalid encoder: rows {first} and {second} violate the symplectic form")]
    NotSymplectic { first: usize, second: usize },

    #[error("invalid encoder: expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid resource signature: {0}")]
    Signature(String),

    #[error("stream of {len} qubits is not a whole number of {frame}-qubit frames")]
    FrameMisalignment { len: usize, frame: usize },

    #[error("state diagram with {memory} memory qubits needs {edges} edges, over the budget of {budget}")]
    MemoryBudget { memory: usize, edges: u128, budget: u128 },

    #[error("truncated power sum did not stabilise after {iterations} iterations")]
    NonStabilizing { iterations: usize },

    #[error("coefficient overflow in exact polynomial arithmetic")]
    Overflow,

    #[error("oracle budget of {budget} paths exceeded")]
    OracleBudget { budget: u64 },

    #[error("{name} = {value} is outside [0, 1]")]
    Probability { name: &'static str, value: f64 },

    #[error("rate {0} is outside (0, 1)")]
    RateOutOfRange(f64),

    #[error("outer stream of {outer_qubits} qubits cannot be split into inner frames of {inner_logical} logical qubits")]
    Divisibility { outer_qubits: usize, inner_logical: usize },

    #[error("decoding failed: {0}")]
    DecodeFailure(String),
}
