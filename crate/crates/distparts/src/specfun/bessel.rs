//! Modified Bessel functions of the first kind `I_s` for integer order,
//! evaluated two independent ways:
//!
//! - [`bessel_i`]: the ascending power series, the production route;
//! - [`bessel_i_oracle`]: the integral representation
//!   `I_s(x) = (1/pi) int_0^pi e^{x cos theta} cos(s theta) d theta`,
//!   used to cross-check the series in tests.

use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::specfun::complex::BigComplex;
use crate::specfun::quad::{integrate_complex, DEFAULT_NODE_BUDGET};
use crate::specfun::pow2;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complete, Float, Integer};

/// Guard bits over the target precision while summing the series.
const GUARD_BITS: u32 = 64;

/// Iteration cap for the ascending series (never approached for the
/// argument ranges this crate uses; purely defensive).
const TERM_CAP: u64 = 10_000_000;

/// `I_s(x)` for integer order `s >= 0` and real `x >= 0` by the ascending
/// series `sum_k (x/2)^(2k+s) / (k! (k+s)!)`.
///
/// Terms are added until they are decreasing (which happens once
/// `k` passes roughly `x/2`) *and* the next term is below the running sum
/// by a comfortable margin beyond the target precision; the geometric tail
/// is then negligible at the returned precision.
///
/// # Errors
///
/// - [`Error::InvalidArgument`] for negative `x`;
/// - [`Error::NonConvergence`] if the term cap is hit (defensive).
///
/// # Edge cases
///
/// `x = 0` returns 1 for `s = 0` and 0 otherwise.
pub fn bessel_i(s: u32, x: &Float, precision: Precision) -> Result<Float> {
    if x.is_sign_negative() && !x.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "the Bessel evaluator needs x >= 0, got {x}"
        )));
    }
    let p = precision.bits();
    if x.is_zero() {
        return Ok(Float::with_val(p, u32::from(s == 0)));
    }
    let pw = p + GUARD_BITS;
    let half_x = Float::with_val(pw, x) / 2u32;
    let q = half_x.clone().square(); // (x/2)^2, the term ratio numerator
    // First term: (x/2)^s / s!.
    let mut term = half_x.pow(s) / Float::with_val(pw, Integer::factorial(s).complete());
    let mut sum = Float::new(pw);
    let eps = pow2(pw, -(p as i32) - 16);
    let mut k: u64 = 0;
    loop {
        sum += &term;
        let denom = (k + 1) * (k + 1 + s as u64);
        // Ratio of consecutive terms is q / denom; once it is at most 1/2
        // the remaining tail is below twice the next term.
        let ratio_small = Float::with_val(pw, 2 * denom) >= q;
        term *= &q;
        term /= denom;
        if ratio_small && term <= Float::with_val(pw, &sum * &eps) {
            break;
        }
        k += 1;
        if k > TERM_CAP {
            return Err(Error::NonConvergence {
                what: "Bessel series",
                detail: format!("term cap {TERM_CAP} reached for s = {s}, x = {x}"),
            });
        }
    }
    Ok(Float::with_val(p, sum))
}

/// Independent oracle for `I_s(x)` via the integral representation,
/// returning the value together with the quadrature uncertainty (the
/// agreement level of the final two panel refinements, scaled like the
/// value).
///
/// # Errors
///
/// Same domain errors as [`bessel_i`], plus quadrature non-convergence.
pub fn bessel_i_oracle(s: u32, x: &Float, precision: Precision) -> Result<(Float, Float)> {
    if x.is_sign_negative() && !x.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "the Bessel oracle needs x >= 0, got {x}"
        )));
    }
    let p = precision.bits();
    let pw = p + GUARD_BITS;
    let pi = Float::with_val(pw, Constant::Pi);
    let a = Float::new(pw);
    let x_loc = Float::with_val(pw, x);
    let integrand = move |theta: &Float| {
        let magnitude = (theta.clone().cos() * &x_loc).exp();
        let oscillation = Float::with_val(theta.prec(), theta * s).cos();
        BigComplex::from_real(theta.prec(), &(magnitude * oscillation))
    };
    let (raw, delta) = integrate_complex(integrand, &a, &pi, p / 2, DEFAULT_NODE_BUDGET)?;
    let value = Float::with_val(p, raw.re() / &pi);
    let uncertainty = Float::with_val(p, delta / &pi);
    Ok((value, uncertainty))
}
