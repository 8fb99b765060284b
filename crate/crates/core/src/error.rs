use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("requested table length {requested} exceeds the configured cap {cap}")]
    TableCapExceeded { requested: usize, cap: usize },

    #[error("no level-one cusp form table for weight {0} (supported: 12, 16, 18, 20, 22, 26)")]
    UnsupportedWeight(u32),

    #[error("index {n} outside the tabled range 1..={n_max}")]
    OutOfRange { n: u64, n_max: usize },

    #[error("coefficient table too short: need n <= {required}, have {available}")]
    TableTooShort { required: u64, available: usize },

    #[error("{0} is not an odd prime")]
    InvalidModulus(u64),

    #[error("character {index} mod {modulus} is not primitive")]
    NonPrimitiveCharacter { modulus: u64, index: u64 },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("quadrature did not converge after {subdivisions} subdivisions (error estimate {estimate:e})")]
    NonConvergence { subdivisions: usize, estimate: f64 },

    #[error("no modulus in [{q_min}, {q_max}] is coprime to {p}")]
    EmptyFamily { p: u64, q_min: u64, q_max: u64 },

    #[error("no prime available for the window [{lo:.3}, {hi:.3}]")]
    InsufficientPrimes { lo: f64, hi: f64 },

    #[error("{a} is not invertible modulo {q}")]
    NotInvertible { a: i64, q: u64 },

    #[error("coprimality violated: {0}")]
    Coprimality(String),

    #[error("invalid quadrature node count {0} (need at least 2)")]
    InvalidNodeCount(usize),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
