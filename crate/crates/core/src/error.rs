use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at offset {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("negative exponent at offset {pos}")]
    NegativeExponent { pos: usize },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("variable index {index} out of range for a ring in {n} variables")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("form degree {degree} exceeds the number of variables {n}")]
    DegreeOverflow { degree: usize, n: usize },

    #[error("expected a form of degree {expected}, found degree {found}")]
    WrongFormDegree { expected: usize, found: usize },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("polynomial has degree {found}; degree at least {min} is required")]
    DegreeTooLow { found: u32, min: u32 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("the origin is not an isolated singularity")]
    NotIsolated,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// True for errors raised while reading polynomial text.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. } | Error::UnknownVariable { .. } | Error::NegativeExponent { .. }
        )
    }
}
