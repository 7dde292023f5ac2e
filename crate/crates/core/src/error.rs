use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("length cap {cap} does not certify finite dimension")]
    CapInsufficient { cap: usize },
    #[error("relation is not admissible: {0}")]
    NotAdmissible(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("projective dimension exceeds bound {0}")]
    GlobalDimensionExceeded(usize),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("differentials are not algebra-element valued")]
    NotElementValued,
    #[error("radical analysis needs characteristic zero")]
    CharNotZero,
    #[error("asphericality for d = 0 is not supported")]
    DZeroUnsupported,
    #[error("candidate map space has dimension {0}, expected 1")]
    NonUniqueMap(usize),
    #[error("vertex {0:?} is not a sink of the tacked quiver")]
    NotASink(String),
    #[error("tacked quiver has an oriented cycle")]
    NotAcyclic,
    #[error("input quiver carries relations")]
    HasRelations,
    #[error("invariant violated: {0}")]
    SpecInvariantViolated(String),
    #[error("signatures of different kinds: {0}")]
    IncompatibleKinds(String),
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("witness failed for {0}")]
    WitnessFailed(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::CapInsufficient { .. } => "CapInsufficient",
            Error::NotAdmissible(_) => "NotAdmissible",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::GlobalDimensionExceeded(_) => "GlobalDimensionExceeded",
            Error::NotChainMap(_) => "NotChainMap",
            Error::NotElementValued => "NotElementValued",
            Error::CharNotZero => "CharNotZero",
            Error::DZeroUnsupported => "DZeroUnsupported",
            Error::NonUniqueMap(_) => "NonUniqueMap",
            Error::NotASink(_) => "NotASink",
            Error::NotAcyclic => "NotAcyclic",
            Error::HasRelations => "HasRelations",
            Error::SpecInvariantViolated(_) => "SpecInvariantViolated",
            Error::IncompatibleKinds(_) => "IncompatibleKinds",
            Error::UnsupportedFamily(_) => "UnsupportedFamily",
            Error::WitnessFailed(_) => "WitnessFailed",
            Error::Schema(_) => "SchemaError",
            Error::Io(_) => "IoError",
        }
    }

    /// Process exit code: 2 for bad input, 3 for computation limits,
    /// 4 for verification failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotAdmissible(_)
            | Error::UnknownVertex(_)
            | Error::AlgebraMismatch
            | Error::NotElementValued
            | Error::NotASink(_)
            | Error::NotAcyclic
            | Error::HasRelations
            | Error::SpecInvariantViolated(_)
            | Error::IncompatibleKinds(_)
            | Error::UnsupportedFamily(_)
            | Error::Schema(_)
            | Error::Io(_) => 2,
            Error::CapInsufficient { .. }
            | Error::GlobalDimensionExceeded(_)
            | Error::CharNotZero
            | Error::DZeroUnsupported
            | Error::NonUniqueMap(_)
            | Error::NotChainMap(_) => 3,
            Error::WitnessFailed(_) => 4,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema(format!("line {} column {}: {}", e.line(), e.column(), e))
    }
}
