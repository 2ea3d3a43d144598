use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("operation `{0}` is not part of the signature")]
    OpNotInSignature(String),
    #[error("`{op}` takes {expected} argument(s), found {found}")]
    Arity { op: String, expected: usize, found: usize },
    #[error("derivation `d` used but the signature has no derivation")]
    DerivationNotAllowed,
    #[error("duplicate operation `{0}` in signature")]
    DuplicateOp(String),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("polynomial is not multilinear: {0}")]
    NotMultilinear(String),
    #[error("variable x{0} has no assignment")]
    MissingAssignment(u32),
    #[error("not a Lyndon-Shirshov word: {0}")]
    NotLsWord(String),
    #[error("operation `{0}` is not covered by the expansion map")]
    UnmappedOp(String),
    #[error("operation `{op}` is not available in the {algebra} target")]
    UnsupportedOp { op: String, algebra: &'static str },
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("presentation is not quadratic: {0}")]
    NonQuadratic(String),
    #[error("truncation level too small: {0}")]
    TruncationTooSmall(String),
    #[error("weight {0} is not -1")]
    WrongWeight(i64),
    #[error("input is not a normal monomial: {0}")]
    NotNormal(String),
    #[error("relation is not homogeneous in the operations: {0}")]
    NotHomogeneous(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown built-in `{0}`")]
    UnknownBuiltin(String),
    #[error("no solution found: {0}")]
    SearchExhausted(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
