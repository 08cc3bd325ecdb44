use thiserror::Error;

use crate::model::MarkableId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: duplicate markable `{id}`")]
    DuplicateMarkable { id: MarkableId, line: usize },

    #[error("line {line}: {reason}")]
    MalformedRecord { line: usize, reason: String },

    /// The two annotations do not cover the same markables. Both sides of
    /// the symmetric difference are listed.
    #[error(
        "annotations are incommensurate: only in first [{}], only in second [{}]",
        join(only_in_first),
        join(only_in_second)
    )]
    Incommensurate {
        only_in_first: Vec<MarkableId>,
        only_in_second: Vec<MarkableId>,
    },

    #[error("markable `{0}` appears in more than one class")]
    OverlappingClasses(MarkableId),

    #[error("partition classes must be non-empty")]
    EmptyClass,

    #[error("partitions are over different universes")]
    UniverseMismatch,

    #[error("markable `{0}` is not in the annotation")]
    UnknownMarkable(MarkableId),

    #[error("a link table needs at least 2 markables, got {0}")]
    TooFewMarkables(usize),

    #[error("table total must be at least 1, got {0}")]
    EmptyTable(i64),

    #[error("link table has a negative cell ({a}, {b}, {c}, {d}); refusing to compute agreement")]
    NegativeCellRefusal { a: i64, b: i64, c: i64, d: i64 },

    #[error("invalid coincidence matrix: {0}")]
    InvalidMatrix(String),

    #[error("standard deviation of an empty list")]
    EmptyList,
}

fn join(ids: &[MarkableId]) -> String {
    ids.iter()
        .map(MarkableId::as_str)
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    pub fn symmetric_difference(&self) -> Option<Vec<&MarkableId>> {
        match self {
            Error::Incommensurate {
                only_in_first,
                only_in_second,
            } => Some(only_in_first.iter().chain(only_in_second).collect()),
            _ => None,
        }
    }
}
