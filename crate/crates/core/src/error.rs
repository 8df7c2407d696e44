use thiserror::Error;

/// Errors raised across the library. `name()` gives the stable identifier
/// the command-line front end prints on failure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("images do not form a bijection of 0..{0}")]
    InvalidPermutation(usize),
    #[error("permutations act with {orbits} orbits on {m} squares")]
    NotTransitive { m: usize, orbits: usize },
    #[error("genus must be at least 1, got {0}")]
    InvalidGenus(usize),
    #[error("shear parameter k={k} is not a positive multiple of {required}")]
    KNotAdmissible { k: u64, required: u64 },
    #[error("vertex {0} is not in the graph")]
    VertexNotFound(String),
    #[error("edge set is not a matching: {0}")]
    NotAMatching(String),
    #[error("gap rule does not strictly increase with the component indices: {0}")]
    GapNotDiverging(String),
    #[error("points do not share a covering-map image: {0}")]
    FibreMismatch(String),
    #[error("graph has {0} vertices; exact enumeration supports at most {1}")]
    TooLarge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has {0} vertices; at least 2 are required")]
    TooSmall(usize),
    #[error("function vanishes identically")]
    ZeroFunction,
    #[error("eigensolver did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("set contains the origin")]
    ContainsOrigin,
    #[error("integer elimination exceeded its budget: {0}")]
    OverflowGuard(String),
    #[error("sequence is not an r-loop: {0}")]
    NotAnRLoop(String),
    #[error("point is not on the grid of denominator {0}")]
    NotAGridPoint(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidPermutation(_) => "InvalidPermutation",
            Error::NotTransitive { .. } => "NotTransitive",
            Error::InvalidGenus(_) => "InvalidGenus",
            Error::KNotAdmissible { .. } => "KNotAdmissible",
            Error::VertexNotFound(_) => "VertexNotFound",
            Error::NotAMatching(_) => "NotAMatching",
            Error::GapNotDiverging(_) => "GapNotDiverging",
            Error::FibreMismatch(_) => "FibreMismatch",
            Error::TooLarge(..) => "TooLarge",
            Error::Disconnected => "Disconnected",
            Error::TooSmall(_) => "TooSmall",
            Error::ZeroFunction => "ZeroFunction",
            Error::NoConvergence(_) => "NoConvergence",
            Error::ContainsOrigin => "ContainsOrigin",
            Error::OverflowGuard(_) => "OverflowGuard",
            Error::NotAnRLoop(_) => "NotAnRLoop",
            Error::NotAGridPoint(_) => "NotAGridPoint",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
