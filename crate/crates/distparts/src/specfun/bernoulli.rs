//! Bernoulli numbers and polynomials, Euler numbers, and Riemann zeta
//! values — the exact rational scaffolding behind the asymptotic
//! coefficients.
//!
//! Conventions:
//!
//! - Bernoulli numbers use the `B_1 = -1/2` convention (the one under
//!   which `B_n(0) = B_n`).
//! - `euler_e(n)` returns the Taylor coefficients `e_n` of
//!   `1 / (e^z + 1) = sum e_n z^n / n!`, expressed through Bernoulli
//!   numbers as `e_n = (1 - 2^(n+1)) B_(n+1) / (n+1)`.
//! - [`zeta_value`] and [`lehmer_bound`] return certified **upper bounds**
//!   (exact value plus at most a couple of ulps; for odd zeta arguments a
//!   rigorous tail bound is included).

use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::specfun::round_up_to;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complete, Float, Integer, Rational};
use std::sync::Mutex;

/// Guard bits added to the working precision of the certified-bound
/// evaluations before rounding up into the target precision.
const GUARD_BITS: u32 = 64;

/// Cap on the number of summed terms for zeta at odd arguments. With the
/// integral tail bound this still yields an upper bound; accuracy is then
/// limited to roughly `cap^(1-n)`, which is far beyond what any consumer
/// of odd zeta values here requires.
const ZETA_TERM_CAP: u64 = 1 << 20;

static BERNOULLI_CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// The Bernoulli number `B_n` as an exact rational (`B_1 = -1/2`).
///
/// Computed by the defining recurrence
/// `sum_{k=0}^{n} C(n+1, k) B_k = 0` and memoised process-wide.
pub fn bernoulli_number(n: u32) -> Rational {
    let mut cache = BERNOULLI_CACHE.lock().expect("Bernoulli cache poisoned");
    if cache.is_empty() {
        cache.push(Rational::from(1));
    }
    while cache.len() <= n as usize {
        let m = cache.len() as u32; // computing B_m
        let mut acc = Rational::new();
        for (k, bk) in cache.iter().enumerate() {
            let c = Integer::binomial_u(m + 1, k as u32).complete();
            acc += bk.clone() * Rational::from(c);
        }
        acc /= -Rational::from(m + 1);
        cache.push(acc);
    }
    cache[n as usize].clone()
}

/// The Bernoulli polynomial `B_n(x)` at an exact rational point:
/// `B_n(x) = sum_{k=0}^{n} C(n, k) B_k x^(n-k)`.
pub fn bernoulli_poly(n: u32, x: &Rational) -> Rational {
    let mut acc = Rational::new();
    let mut x_pow = Rational::from(1); // x^(n-k), built from k = n downward
    for k in (0..=n).rev() {
        let c = Integer::binomial_u(n, k).complete();
        acc += bernoulli_number(k) * Rational::from(c) * x_pow.clone();
        x_pow *= x;
    }
    acc
}

/// Euler-style coefficient `e_n` in `1/(e^z + 1) = sum_n e_n z^n / n!`,
/// namely `e_n = (1 - 2^(n+1)) B_(n+1) / (n + 1)`.
pub fn euler_e(n: u32) -> Rational {
    let two_pow = Integer::from(1) << (n + 1);
    let factor = Rational::from(1) - Rational::from(two_pow);
    factor * bernoulli_number(n + 1) / Rational::from(n + 1)
}

/// Upper bound on `zeta(n)` for integer `n >= 2`, tight to a few ulps.
///
/// Even `n` uses the exact closed form
/// `zeta(2k) = (2 pi)^(2k) |B_(2k)| / (2 (2k)!)`. Odd `n` sums the
/// Dirichlet series directly and adds the rigorous integral tail bound
/// `(M + 1/2)^(1-n) / (n-1)` (valid by convexity of `x^-n`), so the result
/// is an upper bound in every case.
///
/// # Errors
///
/// [`Error::InvalidArgument`] for `n < 2`.
pub fn zeta_value(n: u32, precision: Precision) -> Result<Float> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "zeta is only evaluated for integer arguments >= 2, got {n}"
        )));
    }
    let pw = precision.bits() + GUARD_BITS;
    let value = if n % 2 == 0 {
        let two_pi = 2u32 * Float::with_val(pw, Constant::Pi);
        let numer = two_pi.pow(n) * Float::with_val(pw, bernoulli_number(n).abs());
        let denom = 2u32 * Float::with_val(pw, Integer::factorial(n).complete());
        numer / denom
    } else {
        // Terms needed so the tail alone drops below the target accuracy;
        // the cap keeps odd arguments affordable (the tail bound keeps the
        // result a true upper bound regardless).
        let wanted = 2f64.powf(f64::from(precision.bits() + 8) / f64::from(n - 1));
        let terms = (wanted.ceil() as u64).clamp(16, ZETA_TERM_CAP);
        let mut sum = Float::with_val(pw, 0u32);
        // Summing small terms first keeps absorption losses negligible.
        for k in (1..=terms).rev() {
            sum += Float::with_val(pw, k).pow(-(n as i32));
        }
        let tail_base = Float::with_val(pw, 2 * terms + 1) / 2u32;
        let tail = tail_base.pow(1 - n as i32) / Float::with_val(pw, n - 1);
        sum + tail
    };
    Ok(round_up_to(precision.bits(), &value))
}

/// The classical sup-norm bound for even-index Bernoulli polynomials:
/// `max_{x in [0,1]} |B_n(x)| <= 2 zeta(n) n! / (2 pi)^n`. Returned as a
/// certified upper bound at the requested precision.
///
/// # Errors
///
/// [`Error::InvalidArgument`] for `n < 2`.
pub fn lehmer_bound(n: u32, precision: Precision) -> Result<Float> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "the Bernoulli sup-norm bound needs n >= 2, got {n}"
        )));
    }
    let pw = precision.bits() + GUARD_BITS;
    let zeta = zeta_value(n, Precision::new(pw.min(Precision::MAX_BITS))?)?;
    let numer = 2u32 * Float::with_val(pw, &zeta) * Float::with_val(pw, Integer::factorial(n).complete());
    let two_pi = 2u32 * Float::with_val(pw, Constant::Pi);
    let value = numer / two_pi.pow(n);
    Ok(round_up_to(precision.bits(), &value))
}
