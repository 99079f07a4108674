use alloc::string::String;

/// Errors raised by the core crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("signatures do not interlace")]
    NotInterlacing,
    #[error("enumeration of {count} states exceeds the cap of {cap}")]
    EnumerationCap { count: u128, cap: u128 },
    #[error("profile of order {available} cannot supply order {needed}")]
    InsufficientOrder { needed: usize, available: usize },
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("series centers differ")]
    CenterMismatch,
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("probe point lies on the support")]
    ProbeOnSupport,
    #[error("not a positive measure: {0}")]
    NotPositive(String),
    #[error("outside the domain of the map: {0}")]
    OutsideDomain(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = core::result::Result<T, Error>;
