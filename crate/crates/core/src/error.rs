use thiserror::Error;

/// Everything that can go wrong while building or operating on the
/// combinatorial objects of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}` in ground set")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("label `{0}` is already in the ground set")]
    LabelAlreadyPresent(String),
    #[error("ground set has {size} elements, the configured cap is {cap}")]
    GroundTooLarge { size: usize, cap: usize },
    #[error("member {0} is not a subset of the ground set")]
    MemberOutsideGround(String),
    #[error("family does not contain the empty set")]
    NotGrounded,
    #[error("ground sets overlap in {0}")]
    OverlappingGrounds(String),
    #[error("subset is not contained in the ground set")]
    SubsetOutsideGround,
    #[error("ground sets differ: {0} vs {1}")]
    GroundSetMismatch(String, String),
    #[error("blocks do not form a set composition of the ground set: {0}")]
    CompositionMismatch(String),
    #[error("blocks do not form a set partition of the ground set: {0}")]
    PartitionMismatch(String),
    #[error("relation contains a cycle through `{0}`")]
    CycleDetected(String),
    #[error("invalid fracturing: {0}")]
    InvalidFracturing(String),
    #[error("face {0} is not a subset of the ground set")]
    FaceOutsideGround(String),
    #[error("the target complex is not an inflation of the source")]
    NotAnInflation,
    #[error("skeleton dimension {m} is invalid for a ground set of size {n}")]
    InvalidSkeletonDim { m: usize, n: usize },
    #[error("element of degree {degree} exceeds truncation {truncation}")]
    DegreeExceedsTruncation { degree: usize, truncation: usize },
    #[error("truncations differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("character has nonzero phantom value and is not in the exorcism group")]
    NotInExorcismGroup,
    #[error("power series must have constant term 1")]
    NotUnitSeries,
    #[error("family is not {0}")]
    WrongClass(&'static str),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Whether this error came from malformed input rather than from a
    /// well-formed input violating a domain constraint.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
