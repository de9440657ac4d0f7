use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("p = {0} is not an odd prime >= 5")]
    InvalidPrime(u64),

    #[error("operands live in different fields (p = {left} vs p = {right})")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{what} index {index} out of range (size {size})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("fusion ring axioms violated: {0}")]
    Axiom(String),

    #[error("ring is not PSU(2)_{{p-2}} for any prime p")]
    NotPsu2,

    #[error("quiver has a directed cycle; path algebra is infinite dimensional")]
    NotAcyclic,

    #[error("image of `{generator}` is not compatible with its endpoints: {detail}")]
    EndpointMismatch { generator: String, detail: String },

    #[error("operands belong to different quivers")]
    QuiverMismatch,

    #[error("malformed witness: {0}")]
    MalformedWitness(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("path count overflowed 64 bits")]
    Overflow,

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
