//! Special functions and numerical kernels backing the asymptotic and
//! effective-bound modules:
//!
//! - [`bernoulli`] — Bernoulli numbers/polynomials, Euler numbers, zeta
//!   values and the classical sup-norm bound for Bernoulli polynomials;
//! - [`complex`] — arbitrary-precision complex arithmetic;
//! - [`bessel`] — modified Bessel functions of the first kind, by series
//!   and by an independent integral-representation oracle;
//! - [`quad`] — composite Gauss–Legendre quadrature with node-doubling
//!   convergence control;
//! - [`genfun`] — the two boundary generating functions (the
//!   distinct-partition product and the congruence-class Lambert sum)
//!   evaluated on the right half-plane.

pub mod bernoulli;
pub mod bessel;
pub mod complex;
pub mod genfun;
pub mod quad;

pub use complex::BigComplex;

use rug::float::Round;
use rug::Float;

/// Rounds a value computed at guard precision into `bits` bits so the
/// result is a guaranteed upper bound: round upward, then step one more
/// ulp up. Valid whenever the guard-precision computation is accurate to
/// within one ulp at `bits` bits — the callers all use generous guard
/// precision, so the final nudge dominates any accumulated rounding.
pub(crate) fn round_up_to(bits: u32, value: &Float) -> Float {
    let (mut v, _) = Float::with_val_round(bits, value, Round::Up);
    v.next_up();
    v
}

/// `2^e` at precision `bits` (exact for any exponent in range).
pub(crate) fn pow2(bits: u32, e: i32) -> Float {
    Float::with_val(bits, rug::Integer::from(1)) << e
}
