use super::model::Datatype;

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("label must not be empty")]
    EmptyLabel,
    #[error("label exceeds {max} characters")]
    LabelTooLong { max: usize },
    #[error("value {value:?} is not a valid {datatype}")]
    DatatypeMismatch { datatype: Datatype, value: String },
    #[error("unknown referent {0}")]
    UnknownReferent(String),
    #[error("a literal cannot be the subject of a statement")]
    LiteralAsSubject,
    #[error("{id} still has {count} incident statement(s)")]
    DanglingStatements { id: String, count: usize },
    #[error("depth limit must be at least 1")]
    InvalidDepth,
    #[error("identifier {0} is already taken")]
    IdTaken(String),
    #[error("corrupt record on line {line}: {message}")]
    Corrupt { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;
