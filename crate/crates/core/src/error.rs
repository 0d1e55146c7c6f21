use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("minor order {order} out of range for a {rows}x{cols} matrix")]
    OrderOutOfRange { order: usize, rows: usize, cols: usize },

    #[error("the zero matrix has no rank-sized minors")]
    ZeroMatrix,

    #[error("malformed matrix text: {0}")]
    Parse(String),

    #[error("input not 2-modular: {0}")]
    NotTwoModular(String),

    #[error("representation is not in standard form [I | X]")]
    NotStandardForm,

    #[error("element {0:?} cannot be placed in an identity block")]
    NoUnitPivot(String),

    #[error("unknown element label {0:?}")]
    UnknownLabel(String),

    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),

    #[error("ground set of {size} elements exceeds the cap of {cap}")]
    TooLarge { size: usize, cap: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("set is not a flat of the base matroid")]
    NotAFlat,

    #[error("not a modular cut: {0}")]
    InvalidCut(String),

    #[error("modular cut is improper (it contains every flat)")]
    ImproperCut,

    #[error("not a clique restriction: {0}")]
    NotClique(String),

    #[error("matroid is not simple")]
    NotSimple,

    #[error("unknown catalog name {0:?}")]
    UnknownName(String),

    #[error("sampling budget exhausted after {0} attempts")]
    SamplingExhausted(usize),

    #[error("serialization: {0}")]
    Serialization(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
