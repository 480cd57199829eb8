//! Certified real arithmetic: dyadic midpoint-radius balls with enclosing
//! elementary functions.
//!
//! Irrational quantities anywhere in the crate are carried as [`Ball`]s. The
//! working precision is always an explicit argument; nothing here keeps
//! global state.

mod ball;
mod decimal;
mod dyadic;
mod elementary;

pub use ball::{Ball, IntegerContent};
pub use decimal::{ball_to_decimal, DecimalOutput};
pub use dyadic::{Dyadic, ParseDyadicError};
pub use elementary::ln2;

/// Mantissa bits kept in radii; radii only need a few correct bits.
pub(crate) const RAD_BITS: u64 = 30;

/// Working mantissa length in bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u64);

impl Precision {
    pub const MIN_BITS: u64 = 8;

    pub fn new(bits: impl Into<u64>) -> Result<Self, RealError> {
        let bits = bits.into();
        if bits < Self::MIN_BITS {
            Err(RealError::PrecisionTooSmall(bits))
        } else {
            Ok(Precision(bits))
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn plus(self, extra: u64) -> Self {
        Precision(self.0 + extra)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealError {
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("argument outside the domain of {0}")]
    Domain(&'static str),
    #[error("result exponent out of range")]
    Overflow,
    #[error("precision of {0} bits is below the minimum of 8")]
    PrecisionTooSmall(u64),
}
