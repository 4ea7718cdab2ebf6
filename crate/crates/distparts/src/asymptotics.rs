//! Two-term asymptotic main term for the congruence-class part count, and
//! the normalised ratios that expose the bias between residue classes.
//!
//! Writing `D(n)` for the number of parts congruent to `r (mod t)` over
//! all partitions of `n` into distinct parts, the main term is
//!
//! ```text
//!            3^(1/4) e^(pi sqrt(n/3))  (                  c1    )
//! D(n)  ~   ------------------------- ( log 2  +  ------------- )
//!                2 pi t n^(1/4)        (            sqrt(n)     )
//!
//!        c1 = sqrt(3) log 2 / (8 pi)  -  (pi / (4 sqrt(3))) (r - t/2)
//! ```
//!
//! The **ratio** `Q(n) = D(n) / main term` tends to `1`, approaching it
//! from above or below depending on the residue; [`q_ratio_exact`] gives
//! the exact normalised value and [`ratio_prediction`] the bracketed
//! factor (`log 2`, optionally with its `n^(-1/2)` correction) on its own.

use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::series::{self, CongruenceClass};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer};

/// How many terms of the asymptotic expansion to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terms {
    /// Leading term only (`log 2`).
    One,
    /// Leading term plus the `n^(-1/2)` correction.
    Two,
}

impl Terms {
    /// Numeric form used in reports.
    pub fn count(self) -> u8 {
        match self {
            Terms::One => 1,
            Terms::Two => 2,
        }
    }
}

fn require_positive_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "the asymptotic main term needs n >= 1".into(),
        ));
    }
    Ok(())
}

/// The exponential prefactor `3^(1/4) e^(pi sqrt(n/3)) / (2 pi t n^(1/4))`.
fn prefactor(cls: &CongruenceClass, n: u64, pw: u32) -> Float {
    let pi = Float::with_val(pw, Constant::Pi);
    let n_f = Float::with_val(pw, n);
    let exp_part = (Float::with_val(pw, &pi) * (n_f.clone() / 3u32).sqrt()).exp();
    let numer = Float::with_val(pw, 3u32).pow(0.25f32) * exp_part;
    let denom = 2u32 * pi * Float::with_val(pw, cls.t()) * n_f.pow(0.25f32);
    numer / denom
}

/// The predicted normalised ratio: `log 2` alone, or with the
/// `c1 / sqrt(n)` correction.
///
/// # Errors
///
/// [`Error::InvalidArgument`] for `n = 0`.
pub fn ratio_prediction(
    cls: &CongruenceClass,
    n: u64,
    terms: Terms,
    precision: Precision,
) -> Result<Float> {
    require_positive_n(n)?;
    let pw = precision.bits() + 16;
    let log2 = Float::with_val(pw, Constant::Log2);
    let value = match terms {
        Terms::One => log2,
        Terms::Two => {
            let pi = Float::with_val(pw, Constant::Pi);
            let sqrt3 = Float::with_val(pw, 3u32).sqrt();
            // c1 = sqrt(3) log2 / (8 pi) - (pi / (4 sqrt 3)) (r - t/2)
            let first = Float::with_val(pw, &sqrt3 * &log2) / (8u32 * pi.clone());
            let offset =
                Float::with_val(pw, cls.r()) - Float::with_val(pw, cls.t()) / 2u32;
            let second = pi / (4u32 * sqrt3) * offset;
            let c1 = first - second;
            log2 + c1 / Float::with_val(pw, n).sqrt()
        }
    };
    Ok(Float::with_val(precision.bits(), value))
}

/// The asymptotic main term for `D(n)`: prefactor times
/// [`ratio_prediction`].
///
/// # Errors
///
/// [`Error::InvalidArgument`] for `n = 0`.
pub fn main_term(
    cls: &CongruenceClass,
    n: u64,
    terms: Terms,
    precision: Precision,
) -> Result<Float> {
    require_positive_n(n)?;
    let pw = precision.bits() + 16;
    let ratio = ratio_prediction(cls, n, terms, Precision::new(pw)?)?;
    let value = prefactor(cls, n, pw) * ratio;
    Ok(Float::with_val(precision.bits(), value))
}

/// Exact normalised ratio `Q(n) = D(n) / main term` (two-term bracket),
/// with `D(n)` taken from a caller-supplied exact value (use
/// [`q_ratio_exact`] to compute `D(n)` on the spot). Tends to `1` as `n`
/// grows.
///
/// # Errors
///
/// [`Error::InvalidArgument`] for `n = 0`.
pub fn q_ratio_from(
    cls: &CongruenceClass,
    n: u64,
    d_exact: &Integer,
    precision: Precision,
) -> Result<Float> {
    require_positive_n(n)?;
    let pw = precision.bits() + 16;
    let m = main_term(cls, n, Terms::Two, Precision::new(pw)?)?;
    let value = Float::with_val(pw, d_exact) / m;
    Ok(Float::with_val(precision.bits(), value))
}

/// Exact normalised ratio `Q(n)`, computing `D(n)` by the series route.
///
/// # Errors
///
/// [`Error::InvalidArgument`] for `n = 0`; capacity errors for huge `n`.
pub fn q_ratio_exact(cls: &CongruenceClass, n: u64, precision: Precision) -> Result<Float> {
    require_positive_n(n)?;
    let distinct = series::distinct_series(n)?;
    let d = series::d_single(cls, n, distinct.coeffs())?;
    q_ratio_from(cls, n, &d, precision)
}
