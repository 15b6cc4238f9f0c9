use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u32),
    #[error("slot count must be at least 1")]
    InvalidSlotCount,
    #[error("expected base {expected}, found base {found}")]
    BaseMismatch { expected: u32, found: u32 },
    #[error("digit {digit} is not below the base {base}")]
    DigitOutOfRange { digit: u32, base: u32 },
    #[error("point {0} is outside [0,1]")]
    PointOutOfRange(String),
    #[error("point {0} has an invalid side marker")]
    PointSide(String),
    #[error("interval [{lo}, {hi}] is not a subinterval of [0,1]")]
    BadInterval { lo: String, hi: String },
    #[error("step function pieces overlap")]
    OverlappingPieces,
    #[error("point {0} lies outside the domain")]
    OutOfDomain(String),
    #[error("domain {domain} is not contained in the domain {allowed} of the map")]
    DomainNotContained { domain: String, allowed: String },
    #[error("coefficient supported on {support} is not contained in the range {range}")]
    CoefficientInvariant { support: String, range: String },
    #[error("elements belong to different sessions")]
    SessionMismatch,
    #[error("generator index {index} out of range 1..={max}")]
    GeneratorIndex { index: usize, max: usize },
    #[error("slot {slot} out of range for {slots} slots")]
    SlotOutOfRange { slot: usize, slots: usize },
    #[error("operation requires a session with a single slot")]
    RequiresSingleSlot,
    #[error("nest level {0} must satisfy 0 < r <= 1")]
    NestLevel(String),
    #[error("groupoid elements are not composable")]
    NotComposable,
    #[error("malformed value: {0}")]
    Malformed(String),
}
