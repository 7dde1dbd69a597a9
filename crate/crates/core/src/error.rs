use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid symbol `{0}`")]
    InvalidSymbol(String),

    #[error("empty condition set")]
    EmptyConditionSet,

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: contradictory unit facts for `{atom}`")]
    ContradictoryFacts { line: usize, atom: String },

    #[error("invalid premises: {}", .0.join("; "))]
    Invalid(Vec<String>),

    #[error("world enumeration exceeds the bound of {bound} worlds")]
    WorldOverflow { bound: usize },

    #[error("inconsistent premises: no world survives")]
    NoWorld,

    #[error("oracle refuses {size} symbols (bound is {bound})")]
    OracleBound { size: usize, bound: usize },

    #[error("stage `{stage}` needs the output of a previous stage as input")]
    MissingStageInput { stage: &'static str },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON stage input: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::WorldOverflow { .. } | Error::OracleBound { .. } => 2,
            Error::Invariant(_) => 3,
            _ => 1,
        }
    }
}
