use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WaringError {
    /// Every exponent was zero, or a degree/variable count of zero was requested.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("{used} variables used but only {ambient} available")]
    Dimension { used: usize, ambient: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error(
        "no closed form for r_max*({n},{d}) (requires d >= n or d = 3); use oracle mode"
    )]
    UnsupportedRegime { n: u32, d: u32 },

    #[error("blocks have mismatched degrees {0} and {1}")]
    DegreeMismatch(u32, u32),

    #[error("usage: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, WaringError>;
