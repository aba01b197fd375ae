use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("r must be odd and at least 3, got {0}")]
    InvalidOrder(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular matrix: rank {rank} of {size}")]
    Singular { rank: usize, size: usize },
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("type error in slice {slice}, strand {strand}: {msg}")]
    Type { slice: usize, strand: usize, msg: String },
    #[error("unknown name `{0}`")]
    Unknown(String),
    #[error("state space too wide at slice {slice}: {width} > cap {cap}")]
    WidthCap { slice: usize, width: u128, cap: u128 },
    #[error("not factorizable: Drinfeld map has rank {rank} of {size}")]
    NotFactorizable { rank: usize, size: usize },
    #[error("modularity failure: {0}")]
    Modularity(String),
    #[error("no retract found: {0}")]
    NoRetract(String),
    #[error("not projective: {0}")]
    NotProjective(String),
    #[error("inadmissible presentation: {0}")]
    Inadmissible(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("zero representation space")]
    ZeroSpace,
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable code used on the `ERROR` line of the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidOrder(_) => "order",
            Error::DivisionByZero => "div-zero",
            Error::Singular { .. } => "singular",
            Error::Inconsistent => "inconsistent",
            Error::Parse { .. } => "parse",
            Error::Type { .. } => "type",
            Error::Unknown(_) => "unknown",
            Error::WidthCap { .. } => "size-cap",
            Error::NotFactorizable { .. } => "not-factorizable",
            Error::Modularity(_) => "modularity",
            Error::NoRetract(_) => "no-retract",
            Error::NotProjective(_) => "not-projective",
            Error::Inadmissible(_) => "inadmissible",
            Error::Invalid(_) => "invalid",
            Error::ZeroSpace => "zero-space",
            Error::Io(_) => "io",
        }
    }
}
