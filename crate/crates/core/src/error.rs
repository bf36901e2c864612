use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("monoid is not sharp: its cone contains a line")]
    NotSharp,
    #[error("monoid generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("element {0} is not in the monoid")]
    NotInMonoid(String),
    #[error("ray set {0:?} does not span a face")]
    NotAFace(Vec<usize>),
    #[error("vector {0} does not lie in the span of the monoid")]
    OutsideSpan(String),

    #[error("curve is disconnected")]
    Disconnected,
    #[error("edge {0} has length zero")]
    ZeroLength(String),
    #[error("length of edge {0} is not in the monoid")]
    LengthNotInMonoid(String),
    #[error("edge {edge} refers to unknown vertex {vertex}")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("duplicate identifier {0}")]
    DuplicateId(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("homomorphism does not map the source monoid into the target monoid")]
    HomNotMonoidMap,
    #[error("bad split of edge {0}: pieces must be nonzero monoid elements summing to its length")]
    BadSplit(String),
    #[error("cycle bases do not match the curve map")]
    BasisMismatch,

    #[error("curve is not aligned")]
    NotAligned,
    #[error("functional contracts edge {0}")]
    ContractsAnEdge(String),
    #[error("subgroup generators do not generate a finite subgroup")]
    NotFiniteSubgroup,
    #[error("torsion group of order {order} exceeds the enumeration limit {limit}")]
    TooLargeToEnumerate { order: String, limit: u64 },
    #[error("alignment and Jacobian rank disagree at face {face:?}: aligned = {aligned}, rank = {rank}")]
    TheoremViolation { face: Vec<usize>, aligned: bool, rank: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
