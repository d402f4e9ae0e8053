use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed token in the text form of a word. `column` is 1-based.
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    /// A generator index is out of range for the strand count it acts on,
    /// or the input arity is odd. `generator` is 1-based; 0 refers to the
    /// word header.
    #[error("arity error at generator {generator}: {message}")]
    Arity { generator: usize, message: String },

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("word is not closed: {input} -> {output} endpoints")]
    NotClosed { input: usize, output: usize },

    #[error("orientation missing for component {component}")]
    MissingOrientation { component: usize },

    /// The rewrite engine could not reduce the word to disjoint circles.
    #[error("irreducible: {0}")]
    Irreducible(String),

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("word contains crossings")]
    HasCrossings,

    #[error("too many crossings: {count} (limit {limit})")]
    TooManyCrossings { count: usize, limit: usize },

    /// An internal cross-check between two computations disagreed.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn arity(generator: usize, message: impl Into<String>) -> Self {
        Error::Arity { generator, message: message.into() }
    }
}
