use thiserror::Error;

/// Errors raised by the algebra and combinatorics layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: usize, right: usize },

    #[error("{element} is out of range for ambient weight {n}")]
    OutOfRange { element: usize, n: usize },

    #[error("{comp} is not in the index set {set} for N = {order}")]
    NotInIndexSet {
        comp: String,
        set: &'static str,
        order: usize,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: usize, right: usize },

    #[error("weight {n} exceeds the permutation oracle limit {limit}")]
    Capacity { n: usize, limit: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("element is not homogeneous")]
    Inhomogeneous,

    #[error("series constant term is not invertible")]
    NotInvertible,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("descent table cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
