use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements `{0}` and `{1}` have no unique meet or join")]
    NotALattice(String, String),
    #[error("cover relation contains a cycle")]
    CyclicCovers,
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("lattice has no elements")]
    EmptyLattice,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("function is not admissible: level set at s = {0} is not a principal ideal")]
    NotAdmissible(String),
    #[error("point values are out of range: {0}")]
    InvalidPoint(String),
    #[error("points belong to different lattices")]
    LatticeMismatch,
    #[error("complex is not pure: facet sizes range over {0}..={1}")]
    NotPure(usize, usize),
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("OFF export supports only 2-dimensional book complexes, got dimension {0}")]
    UnsupportedDimension(usize),
    #[error("lattice is not a book lattice")]
    NotABook,
    #[error("malformed input: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
