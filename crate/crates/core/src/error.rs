use thiserror::Error;

/// Errors raised by the algebra kernel and its probes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("membership violation: {0}")]
    MembershipViolation(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("zero element has no {0}")]
    ZeroElement(&'static str),
    #[error("grade scheme {scheme} does not apply: {reason}")]
    SchemeMismatch { scheme: String, reason: String },
    #[error("homogeneous component {0} is empty")]
    EmptyComponent(String),
    #[error("element is not in the zero component: offending term {0}")]
    NotInZeroComponent(String),
    #[error("term {0} has a negative power of the annihilated variable")]
    NegativeExponent(String),
    #[error("target {0} has no exponential part")]
    NoExponentialPart(String),
    #[error("no generators supplied")]
    EmptyGenerators,
    #[error("generator {index} leaves the truncation box")]
    GeneratorOutsideBox { index: usize },
    #[error("invalid truncation box: {0}")]
    InvalidBox(String),
    #[error("cannot embed {from} into {to}")]
    NotEmbeddable { from: String, to: String },
    #[error("image of {0} is not in the derivation table")]
    OutOfTruncation(String),
    #[error("table is not shaped like a derivation: {0}")]
    NotShapedLikeDerivation(String),
    #[error("q = {0} is a root of unity or zero")]
    InvalidQ(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

impl WittError {
    /// Stable machine-readable code, used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            WittError::MembershipViolation(_) => "MembershipViolation",
            WittError::DimensionMismatch(_) => "DimensionMismatch",
            WittError::InvalidSignature(_) => "InvalidSignature",
            WittError::ZeroElement(_) => "ZeroElement",
            WittError::SchemeMismatch { .. } => "SchemeMismatch",
            WittError::EmptyComponent(_) => "EmptyComponent",
            WittError::NotInZeroComponent(_) => "NotInZeroComponent",
            WittError::NegativeExponent(_) => "NegativeExponent",
            WittError::NoExponentialPart(_) => "NoExponentialPart",
            WittError::EmptyGenerators => "EmptyGenerators",
            WittError::GeneratorOutsideBox { .. } => "GeneratorOutsideBox",
            WittError::InvalidBox(_) => "InvalidBox",
            WittError::NotEmbeddable { .. } => "NotEmbeddable",
            WittError::OutOfTruncation(_) => "OutOfTruncation",
            WittError::NotShapedLikeDerivation(_) => "NotShapedLikeDerivation",
            WittError::InvalidQ(_) => "InvalidQ",
            WittError::Syntax { .. } => "SyntaxError",
        }
    }
}

pub type Result<T> = std::result::Result<T, WittError>;
