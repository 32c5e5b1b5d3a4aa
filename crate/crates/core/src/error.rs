use thiserror::Error;

#[derive(Debug, Error)]
pub enum PlError {
    #[error("invalid rational: {0}")]
    InvalidRat(String),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("interval must be bounded: {0}")]
    UnboundedInterval(String),
    #[error("invalid map data: {0}")]
    InvalidMap(String),
    #[error("period mismatch: {0} vs {1}")]
    PeriodMismatch(String, String),
    #[error("target mismatch: {0} vs {1}")]
    TargetMismatch(String, String),
    #[error("class-incompatible composition: {0}")]
    ClassIncompatible(String),
    #[error("incomparable classes: {0}")]
    IncomparableClasses(String),
    #[error("endpoint of orbit-equivariant map")]
    OrbitEndpoint,
    #[error("orbit location exceeded the iteration cap")]
    OrbitCap,
    #[error("unsupported power {power} for a root map of degree {degree}")]
    UnsupportedRootPower { degree: u32, power: i64 },
    #[error("support has {0} components; exactly one is required")]
    MultiComponentSupport(usize),
    #[error("word parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown builtin: {0}")]
    UnknownBuiltin(String),
    #[error("unbound generator: {0}")]
    UnboundGenerator(String),
    #[error("chain condition failed: {0}")]
    Chain(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("restriction not representable: {0}")]
    Restriction(String),
    #[error("serialization: {0}")]
    Ser(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, PlError>;
