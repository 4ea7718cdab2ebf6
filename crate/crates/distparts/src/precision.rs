//! Working precision for multiprecision floating-point evaluation.
//!
//! All analytic routines take an explicit [`Precision`] (bits of mantissa).
//! The default of 256 bits is far more than the certified bounds need, and
//! decision routines double it internally to confirm that conclusions are
//! not rounding artifacts.

use crate::error::{Error, Result};
use rug::Float;

/// Mantissa precision in bits for floating-point evaluation.
///
/// Invariants: `MIN_BITS <= bits <= MAX_BITS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    /// Smallest accepted precision. Below this the certified error bounds
    /// in the effective decomposition are wider than the quantities they
    /// bound, so nothing useful can be concluded.
    pub const MIN_BITS: u32 = 64;

    /// Largest accepted precision; guards against runaway doubling.
    pub const MAX_BITS: u32 = 1 << 24;

    /// Default precision used when none is specified.
    pub const DEFAULT_BITS: u32 = 256;

    /// Creates a precision of `bits` bits.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidArgument`] if `bits` lies outside
    /// `[MIN_BITS, MAX_BITS]`.
    pub fn new(bits: u32) -> Result<Self> {
        if !(Self::MIN_BITS..=Self::MAX_BITS).contains(&bits) {
            return Err(Error::InvalidArgument(format!(
                "precision must be between {} and {} bits, got {bits}",
                Self::MIN_BITS,
                Self::MAX_BITS
            )));
        }
        Ok(Self(bits))
    }

    /// Number of mantissa bits.
    pub fn bits(self) -> u32 {
        self.0
    }

    /// Twice this precision, saturating at [`Self::MAX_BITS`].
    pub fn doubled(self) -> Self {
        Self(self.0.saturating_mul(2).min(Self::MAX_BITS))
    }

    /// A new float of this precision with the given value.
    pub fn float<V>(self, value: V) -> Float
    where
        Float: rug::Assign<V>,
    {
        Float::with_val(self.0, value)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self(Self::DEFAULT_BITS)
    }
}

impl std::fmt::Display for Precision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} bits", self.0)
    }
}
