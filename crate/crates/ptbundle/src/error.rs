use thiserror::Error;

/// Errors across the surface-enumeration and ideal-point pipeline.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("empty monodromy word")]
    EmptyWord,
    #[error("invalid character {0:?} in monodromy word (expected L or R)")]
    InvalidCharacter(char),
    #[error("monodromy is not hyperbolic: word uses a single generator")]
    NotHyperbolic,
    #[error("monodromy word too long: integer overflow in partial products")]
    Overflow,
    #[error("path index {0} out of range ({1} paths)")]
    PathIndex(usize, usize),
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("section table has no entry for {0}")]
    SectionTableMiss(String),
    #[error("unsupported vertex configuration at edge {0}: {1}")]
    UnsupportedVertex(usize, String),
    #[error("surface is a semi-fiber; no finite sphere addition satisfies the minimum-rate condition")]
    SemiFiber,
    #[error("order imbalance at edge {edge}: zeta orders {a} vs {b}")]
    OrderImbalance { edge: usize, a: i64, b: i64 },
    #[error("unique minimum rate at sphere vertex (edge {0}); sphere addition missing")]
    UniqueMinimum(usize),
    #[error("direction variable for tet {0} forced to zero")]
    ZeroDirection(usize),
    #[error("no rule reaches variable of tet {0}")]
    UnsolvedVariable(usize),
    #[error("bar residual {0} exceeds tolerance {1}")]
    ResidualTooLarge(f64, f64),
    #[error("degenerate value: {0}")]
    DegenerateValue(String),
    #[error("degenerate shape in tet {0} (value in {{0, 1}})")]
    DegenerateShape(usize),
    #[error("division by zero evaluating {0}")]
    DivisionByZero(String),
    #[error("Newton failed to converge after {0} iterations (residual {1})")]
    NoConvergence(usize, f64),
    #[error("shape of tet {0} entered the degeneration ball around {{0, 1}}")]
    DegenerationCollision(usize),
    #[error("need at least {0} accepted continuation steps, have {1}")]
    InsufficientSteps(usize, usize),
    #[error("{0}")]
    Internal(String),
}

impl Error {
    /// Internal invariant failure with context.
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
