use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Pauli string {0:?}: {1}")]
    InvalidPauliString(String, &'static str),

    #[error("qubit count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("qubit count {0} outside supported range 1..=32")]
    QubitCount(usize),

    #[error("invalid stabilizer code: {0}")]
    InvalidCode(#[from] CodeViolation),

    #[error("{n} qubits exceeds the enumeration cap of {cap}")]
    EnumerationCap { n: usize, cap: usize },

    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),

    #[error("fidelity {0} outside [0, 1]")]
    InvalidFidelity(f64),

    #[error("distribution is not normalized (total {0})")]
    Unnormalized(f64),

    #[error("no sign change of the capacity in [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("block size {0} out of range")]
    BlockSize(usize),

    #[error("syndrome weight {r} out of range for block size {p}")]
    SyndromeWeight { p: usize, r: usize },

    #[error("concatenation needs at least one level")]
    EmptyLevels,

    #[error("concatenation would expand {0} position tuples, above the limit")]
    TupleLimit(u128),

    #[error("code description: {0}")]
    CodeDescription(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o: {0}")]
    Io(String),
}

/// First invariant broken by a candidate stabilizer code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeViolation {
    #[error("{generators} generators on {n} qubits does not encode exactly one logical qubit")]
    Dimension { n: usize, generators: usize },

    #[error("generator {index} acts on {actual} qubits, expected {expected}")]
    GeneratorSize {
        index: usize,
        expected: usize,
        actual: usize,
    },

    #[error("generators {0} and {1} anticommute")]
    Anticommuting(usize, usize),

    #[error("generator {0} is dependent on the preceding generators")]
    Dependent(usize),

    #[error("logical {0} does not commute with generator {1}")]
    LogicalNotInNormalizer(char, usize),

    #[error("logical {0} lies in the stabilizer group")]
    LogicalInStabilizer(char),

    #[error("logical X and logical Z commute")]
    LogicalsCommute,

    #[error("logical {0} acts on the wrong number of qubits")]
    LogicalSize(char),
}
