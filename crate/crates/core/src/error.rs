use thiserror::Error;

/// Errors raised while building distributions or evaluating measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("probability masses sum to {sum}, expected 1 (tolerance {tolerance})")]
    NotNormalized { sum: f64, tolerance: f64 },

    #[error("state {state:?} is out of range for cardinalities {cardinalities:?}")]
    StateOutOfRange {
        state: Vec<usize>,
        cardinalities: Vec<usize>,
    },

    #[error("negative or non-finite probability mass {mass} at state {state:?}")]
    NegativeMass { state: Vec<usize>, mass: f64 },

    #[error("state {0:?} listed more than once")]
    DuplicateState(Vec<usize>),

    #[error("table of {states} states exceeds the limit of {limit}")]
    TableTooLarge { states: u128, limit: usize },

    #[error("variable subset is empty")]
    EmptySubset,

    #[error("variable index {index} is out of range for a system of {n_vars} variables")]
    IndexOutOfRange { index: usize, n_vars: usize },

    #[error("variable index {0} appears more than once")]
    DuplicateIndex(usize),

    #[error("variable subsets overlap at index {0}")]
    OverlappingSubsets(usize),

    #[error("operation needs at least {needed} variables, system has {n_vars}")]
    SystemTooSmall { n_vars: usize, needed: usize },

    #[error("no variables: cardinalities must be non-empty")]
    NoVariables,

    #[error("cardinality of variable {index} must be positive")]
    ZeroCardinality { index: usize },

    #[error("no sample rows")]
    EmptyInput,

    #[error("row {row} has {found} symbols, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("invalid order {order}: {reason}")]
    InvalidOrder { order: usize, reason: &'static str },

    #[error("invalid alphabet size {alphabet}: {reason}")]
    InvalidAlphabet {
        alphabet: usize,
        reason: &'static str,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("functional `{name}` returned negative value {value}")]
    FunctionalNegative { name: String, value: f64 },

    #[error(
        "functional `{name}` grows under marginalization: f(X) = {whole}, f(X^-{index}) = {marginal}"
    )]
    FunctionalNonMonotone {
        name: String,
        index: usize,
        whole: f64,
        marginal: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
