use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("multiplication table is not a group: {0}")]
    TableNotGroup(String),

    #[error("group too large: {0} elements exceeds the limit of {1}")]
    GroupTooLarge(usize, usize),

    #[error("operation requires a finite model")]
    NotFiniteModel,

    #[error("operation requires a window model of an infinite group")]
    NotWindowModel,

    #[error("element {0} is not in the model")]
    UnknownElement(String),

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(usize, usize),

    #[error("graph has no universal vertex, so it is not a finite-order component")]
    NotFiniteOrderComponent,

    #[error("class analysis requires a trivial center (found {0} universal vertices)")]
    NotTrivialCenter(usize),

    #[error("vertex set is not an equivalence class of the graph")]
    NotAnEquivClass,

    #[error("class profile is inconsistent: {0}")]
    ProfileInconsistent(String),

    #[error("input is not the power graph of a group: {0}")]
    StructureError(String),

    #[error("block sizes {blocks:?} cannot tile {vertices} vertices")]
    SizeMismatch { blocks: Vec<u64>, vertices: usize },

    #[error("the identity element has no I/O/M sets")]
    IdentityArgument,

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("intersection counts strictly between 0 and {tau} for {count} edge(s), first {first}")]
    ThresholdUndecided { tau: usize, count: usize, first: String },

    #[error("witness pair does not yield an almost connected graph")]
    NotAlmostConnected,

    #[error("isomorphism search limited to {limit} vertices, got {got}")]
    SizeLimit { limit: usize, got: usize },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
