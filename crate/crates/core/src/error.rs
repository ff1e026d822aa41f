use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: gl({0}|{1}) vs gl({2}|{3})")]
    ShapeMismatch(usize, usize, usize, usize),

    #[error("invalid shape gl({0}|{1}): both blocks must be non-empty")]
    InvalidShape(usize, usize),

    #[error("weight {0} has repeated entries and is not regular")]
    NotRegular(String),

    #[error("weight {0} is not strictly dominant (a must strictly decrease, b must strictly increase)")]
    NotStrictlyDominant(String),

    #[error("weight {0} has half-integral entries")]
    NotIntegral(String),

    /// λ+ρ came out half-integral; adding `shift` to every entry gives an
    /// integral representative with the same combinatorics.
    #[error("λ+ρ = {weight} is half-integral; add {shift} to every entry and pass the result as λ^ρ")]
    HalfIntegralShift { weight: String, shift: String },

    #[error("{0} is not in the root lattice")]
    NotInRootLattice(String),

    #[error("{0} is not in the span of the atypical roots")]
    NotInSpan(String),

    #[error("weight {0} is not piecewise disconnected")]
    NotPdc(String),

    #[error("{mu} is not below {lambda} in the atypical order")]
    NotComparable { mu: String, lambda: String },

    #[error("{mu} is not in P_λ for λ^ρ = {lambda}")]
    NotInPLambda { mu: String, lambda: String },

    #[error("diagram has no ∨ labelled {0}")]
    NoSuchLabel(usize),

    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("cap partner of ∨ at {vee} lies beyond the window end {hi}")]
    WindowTooSmall { vee: i64, hi: i64 },

    #[error("coefficient {numerator}/{denominator} at {weight} is not an integer")]
    NonIntegerCoefficient { weight: String, numerator: i64, denominator: i64 },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
