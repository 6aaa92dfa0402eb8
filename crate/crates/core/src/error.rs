use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{x} is not invertible modulo {m}")]
    NotInvertible { x: i64, m: u64 },
    #[error("modulus {m} is outside the supported range [2, {max}]")]
    ModulusOutOfRange { m: u64, max: u64 },
    #[error("residue {a} is not coprime to modulus {m}")]
    NotCoprime { a: i64, m: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("polygon is degenerate ({vertices} vertices)")]
    DegenerateInput { vertices: usize },
    #[error("polygon has {vertices} vertices, fewer than the window size {k}")]
    TooFewVertices { vertices: usize, k: usize },
    #[error("the zero polynomial vanishes on every point")]
    InfiniteFamily,
    #[error("every coefficient vanishes modulo {m}")]
    AllZeroMod { m: u64 },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
