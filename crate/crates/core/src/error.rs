use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("coefficient index {index} out of range for series of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("factor exponent must be positive, got {0}")]
    NonPositiveExponent(usize),

    #[error("B({0}) is not a basis element: B(n) requires odd n")]
    EvenHeisenbergIndex(i64),

    #[error("level k = k0 + k1 must be at least 1 for a standard module")]
    ZeroLevel,

    #[error("charge {charge} outside the allowed range 1..={max}")]
    ChargeOutOfRange { charge: u32, max: u32 },

    #[error("invalid charge type: {0}")]
    InvalidChargeType(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid series text: {0}")]
    Parse(String),

    #[error("cross-check failed for {label}: first mismatch at q^{index}")]
    CrossCheck { label: String, index: usize },
}
