use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("automata are over different alphabets")]
    AlphabetMismatch,
    #[error("alphabets overlap on symbol `{0}`")]
    AlphabetOverlap(String),
    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error("automaton is not minimal ({states} states, minimal has {minimal})")]
    NotMinimal { states: usize, minimal: usize },
    #[error("automaton for vertex {0} does not accept a prefix-closed language")]
    NotPrefixClosed(usize),
    #[error("aperiodicity and powered-circuit criteria disagree: {0}")]
    CriteriaDisagree(String),
    #[error("relator `{0}` is not cyclically reduced")]
    NotCyclicallyReduced(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("search budget exceeded at layer {layer} ({elements} elements)")]
    BudgetExceeded { layer: usize, elements: usize },
    #[error("word of length {len} exceeds ball radius {radius}")]
    WordTooLong { len: usize, radius: usize },
    #[error("verification mismatch on `{word}`: automaton says {automaton}, oracle says {oracle}")]
    VerificationMismatch {
        word: String,
        automaton: bool,
        oracle: bool,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
