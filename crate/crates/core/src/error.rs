use thiserror::Error;

/// Errors produced by the space-time storage code library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("expected {expected} bits, got {got}")]
    BitLength { expected: usize, got: usize },

    #[error("coset index must have even nonzero length, got {0} bits")]
    OddCosetLength(usize),

    #[error("coset level t={0} is out of range (1..=62)")]
    CosetLevel(u32),

    #[error("invalid bit string {0:?}")]
    ParseBits(String),

    #[error("exact integer overflow in {0}")]
    Overflow(&'static str),

    #[error("relative norm has nonzero theta coordinate: {0}")]
    NormInconsistency(String),

    #[error("{0} is not a 4-QAM point")]
    NotInConstellation(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("fragment length mismatch: expected {expected}, got {got}")]
    FragmentLength { expected: usize, got: usize },

    #[error("storage code needs at least one data fragment")]
    NoData,

    #[error("expected {expected} helper fragments, got {got}")]
    HelperCount { expected: usize, got: usize },

    #[error("node id {0} appears more than once")]
    DuplicateNode(usize),

    #[error("node id {id} outside 1..={n}")]
    NodeId { id: usize, n: usize },

    #[error("need {needed} fragments to reconstruct, got {got}")]
    TooFewFragments { needed: usize, got: usize },

    #[error("codebook is empty")]
    EmptyCodebook,

    #[error("unknown {kind} {value:?}")]
    Unknown { kind: &'static str, value: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("csv: {0}")]
    Csv(String),

    #[error("thread pool: {0}")]
    ThreadPool(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
