use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared {kind} `{id}`")]
    Undeclared { kind: &'static str, id: String },
    #[error("duplicate {kind} `{id}`")]
    Duplicate { kind: &'static str, id: String },
    #[error("unknown colour {0}")]
    UnknownColour(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{what} cap exceeded: {detail}")]
    CapExceeded { what: &'static str, detail: String },
    #[error("not a deterministic complete automaton: {0}")]
    NotDeterministic(String),
    #[error("the decomposition does not have {0} shape")]
    Shape(&'static str),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
