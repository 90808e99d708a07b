use thiserror::Error;

use crate::dyadic::{Dyadic, DyadicError};
use crate::robinhood::RHPosition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("interning store exceeded its capacity of {cap} nodes")]
    StoreCapExceeded { cap: usize },
    #[error(transparent)]
    Dyadic(#[from] DyadicError),
    #[error("penalty must be non-negative, got {0}")]
    NegativePenalty(Dyadic),
    #[error("penalize expects a game in canonical form")]
    NotCanonical,
    #[error("freeze point diagnostic: {0}")]
    FreezePoint(String),
    #[error("closed forms need n >= a + b, got {0}")]
    OutsideFormulaDomain(RHPosition),
    #[error("wealths must be positive, got ({0},{1})")]
    NonPositiveWealth(u64, u64),
    #[error("pingala index {0} overflows")]
    PingalaOverflow(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
