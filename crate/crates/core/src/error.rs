use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{op}: argument must be a positive integer, got 0")]
    ZeroArgument { op: &'static str },

    #[error("cyclotomic level mismatch: {left} vs {right}")]
    LevelMismatch { left: u64, right: u64 },

    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("a truncated series needs at least one coefficient")]
    EmptySeries,

    #[error("inflating a series truncated at {input} by {factor} cannot reach degree {requested}")]
    InflationOutOfRange {
        input: usize,
        factor: usize,
        requested: usize,
    },

    #[error("level {sub} does not divide level {level}")]
    NotASubfield { sub: u64, level: u64 },

    #[error("point is not in the upper half-plane: Im(tau) = {im}")]
    NotInUpperHalfPlane { im: f64 },

    #[error("truncation {trunc} too short at Im(tau) = {im}: tail bound {bound:e} exceeds {tol:e}")]
    TruncationTooShort {
        trunc: usize,
        im: f64,
        bound: f64,
        tol: f64,
    },

    #[error("matrix ({a}, {b}; 0, {d}) is not a valid coset representative of level {level}")]
    InvalidMatrix { a: u64, b: u64, d: u64, level: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
