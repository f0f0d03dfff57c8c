use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("{location}: duplicate vertex label `{label}`")]
    DuplicateVertex { label: String, location: String },

    #[error("{location}: unknown vertex `{label}`")]
    UnknownVertex { label: String, location: String },

    #[error("{location}: self-loop on `{label}`")]
    SelfLoop { label: String, location: String },

    #[error("{location}: duplicate edge `{u}`-`{v}`")]
    DuplicateEdge { u: String, v: String, location: String },

    #[error("{operation}: {size} exceeds the size limit of {limit} (set MONOGAMY_SIZE_LIMIT to override)")]
    SizeLimit {
        operation: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("graph is not chordal; induced cycle {}", cycle.join(" - "))]
    NotChordal { cycle: Vec<String> },

    #[error("invalid behavior: {0}")]
    InvalidBehavior(String),

    #[error("no-disturbance violated between contexts {first:?} and {second:?} on {shared:?}")]
    Inconsistent {
        first: Vec<String>,
        second: Vec<String>,
        shared: Vec<String>,
    },

    #[error("ill-conditioned behavior: {0}")]
    IllConditioned(String),

    #[error("vertex set mismatch: {0}")]
    VertexMismatch(String),

    #[error("invalid objective: {0}")]
    InvalidObjective(String),

    #[error("invalid inequality specs: {0}")]
    InvalidSpecs(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid rational `{0}`; expected `p/q` or an integer")]
    Rational(String),
}

impl Error {
    pub fn is_size_limit(&self) -> bool {
        matches!(self, Error::SizeLimit { .. })
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
