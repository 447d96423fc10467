use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A malformed line in an input file. `line` is 1-based.
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    #[error("duplicate id `{0}`")]
    DuplicateId(String),

    #[error("hypernym cycle through synset {0}")]
    Cycle(String),

    #[error("unknown synset {0}")]
    UnknownSynset(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("no probability mass: every count is zero and smoothing is 0")]
    NoProbabilityMass,

    #[error("unknown index name `{0}`")]
    UnknownIndex(String),

    #[error("unknown formula preset `{0}`")]
    UnknownPreset(String),

    #[error("index `{index}` is enabled but requires {resource}")]
    MissingResource {
        index: &'static str,
        resource: &'static str,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("undefined correlation: {0}")]
    UndefinedCorrelation(&'static str),

    #[error("degenerate variance: both groups are constant with different means")]
    DegenerateVariance,

    #[error("baseline pairs do not match: {0}")]
    PairMismatch(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("no embedding for document `{doc_id}` sentence {sentence}")]
    MissingEmbedding { doc_id: String, sentence: usize },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(file: impl Into<String>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            file: file.into(),
            line,
            message: message.into(),
        }
    }

    /// True for errors caused by configuration rather than input data.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::UnknownIndex(_)
                | Error::UnknownPreset(_)
                | Error::MissingResource { .. }
                | Error::Config(_)
        )
    }
}
