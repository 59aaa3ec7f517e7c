use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate box: the triangle has zero extent along an axis")]
    DegenerateBox,
    #[error("degenerate triangle: corners are collinear")]
    DegenerateTriangle,
    #[error("invalid gadget size n={0}: need n >= 12 and n divisible by 12")]
    InvalidN(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not maximal planar: {0}")]
    NotMaximalPlanar(String),
    #[error("placement is not a crossing-free straight-line embedding")]
    NotAnEmbedding,
    #[error("graph is not the gadget graph for k={0}")]
    NotAGadget(usize),
    #[error("search budget of {0} node expansions exceeded")]
    SearchBudgetExceeded(u64),
    #[error("no run of {needed} consecutively nested cycle triangles (longest run {found})")]
    NestingNotFound { needed: usize, found: usize },
    #[error("corner sequence is not monotone: {0}")]
    MonotoneViolation(String),
    #[error("duplicate {axis} coordinate {value}")]
    DuplicateCoordinate { axis: char, value: i64 },
    #[error("m={0} is too large for exhaustive enumeration (limit 9)")]
    TooLarge(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// Stable machine-readable identifier for the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegenerateBox => "DegenerateBox",
            Error::DegenerateTriangle => "DegenerateTriangle",
            Error::InvalidN(_) => "InvalidN",
            Error::InvalidGraph(_) => "InvalidGraph",
            Error::NotMaximalPlanar(_) => "NotMaximalPlanar",
            Error::NotAnEmbedding => "NotAnEmbedding",
            Error::NotAGadget(_) => "NotAGadget",
            Error::SearchBudgetExceeded(_) => "SearchBudgetExceeded",
            Error::NestingNotFound { .. } => "NestingNotFound",
            Error::MonotoneViolation(_) => "MonotoneViolation",
            Error::DuplicateCoordinate { .. } => "DuplicateCoordinate",
            Error::TooLarge(_) => "TooLarge",
            Error::Precondition(_) => "Precondition",
            Error::Parse { .. } => "Parse",
        }
    }
}
