use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported field size {0}; expected one of 2, 3, 4, 5, 7, 8, 9")]
    UnsupportedField(u32),

    #[error("zero has no multiplicative order")]
    ZeroElement,

    #[error("{q} is not invertible modulo {modulus}")]
    NotCoprime { q: u64, modulus: u64 },

    #[error("operands live in different fields (GF({left}) vs GF({right}))")]
    FieldMismatch { left: u32, right: u32 },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("{0} does not divide x^n - a")]
    NotDivisor(&'static str),

    #[error("multiset is not closed under the cyclotomic cosets: {0}")]
    NotCosetClosed(String),

    #[error("parse error at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("enumeration of {required} items exceeds the cap of {cap}")]
    CapExceeded { required: u128, cap: u128 },

    #[error("invalid code construction: {0}")]
    Construction(String),

    #[error("position {pos} out of range for length {n}")]
    PositionOutOfRange { pos: usize, n: usize },

    #[error("BKLC table line {line}: {msg}")]
    Bklc { line: u64, msg: String },

    #[error("no BKLC entry for q={q}, n={n}, k={k}")]
    BklcMissing { q: u32, n: usize, k: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
