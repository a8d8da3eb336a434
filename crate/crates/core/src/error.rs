use thiserror::Error;

/// Errors raised by parsing, validation and the algebra constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("arrow `{arrow}` refers to unknown vertex `{vertex}`")]
    UnknownVertex { arrow: String, vertex: String },

    #[error("unknown vertex `{0}`")]
    NoSuchVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },

    #[error("relation ({0}, {1}) is not composable")]
    NonComposable(String, String),

    #[error("malformed list `{0}`")]
    MalformedList(String),

    #[error("{0} is infinite; a length bound is required")]
    Infinite(String),

    #[error("algebra is not gentle: {0}")]
    NotGentle(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
