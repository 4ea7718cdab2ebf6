//! The two boundary generating functions evaluated on the right
//! half-plane `Re z > 0` (with `q = e^{-z}` on the unit disk):
//!
//! - `xi(z) = prod_{m >= 1} (1 + e^{-mz})`, the distinct-partition
//!   product, evaluated through its logarithm [`log_xi`];
//! - `L(z) = sum_{k >= 0} u_k / (1 + u_k)` with `u_k = e^{-(kt + r) z}`,
//!   the Lambert-type sum attached to a congruence class, via [`l_eval`].
//!
//! Both series converge geometrically in `|e^{-z}| = e^{-Re z} < 1`; the
//! stopping rules bound the discarded tails explicitly, so results are
//! accurate to well beyond the requested precision.

use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::series::CongruenceClass;
use crate::specfun::complex::BigComplex;
use crate::specfun::pow2;
use rug::Float;

/// Guard bits over the target precision.
const GUARD_BITS: u32 = 32;

/// Iteration cap for the geometric series loops. Reached only for
/// `Re z` far smaller than any arc the callers evaluate on; purely
/// defensive.
const TERM_CAP: u64 = 10_000_000;

fn require_right_half_plane(z: &BigComplex, what: &'static str) -> Result<()> {
    if z.re().is_sign_negative() || z.re().is_zero() {
        return Err(Error::InvalidArgument(format!(
            "{what} needs Re z > 0 for convergence, got Re z = {}",
            z.re()
        )));
    }
    Ok(())
}

/// `log xi(z) = sum_{m >= 1} Log(1 + e^{-mz})` on the principal branch of
/// each summand, for `Re z > 0`.
///
/// The tail after the `m`-th term is bounded by
/// `2 |w|^{m+1} / (1 - |w|)` with `w = e^{-z}`, once `|w^{m+1}| <= 1/2`;
/// summation stops when that bound is negligible at the target precision.
///
/// # Errors
///
/// - [`Error::InvalidArgument`] off the right half-plane;
/// - [`Error::NonConvergence`] if the term cap is hit (`Re z` absurdly
///   small for the requested precision).
pub fn log_xi(z: &BigComplex, precision: Precision) -> Result<BigComplex> {
    require_right_half_plane(z, "the distinct-partition product")?;
    let p = precision.bits();
    let pw = p + GUARD_BITS;
    let zw = z.with_prec(pw);
    let w = zw.neg().exp();
    let w_abs = w.abs();
    let one = BigComplex::from_real(pw, &Float::with_val(pw, 1u32));
    let half = Float::with_val(pw, 0.5f32);
    let eps = pow2(pw, -(p as i32) - 16);
    // 2 / (1 - |w|), the tail prefactor.
    let tail_factor =
        Float::with_val(pw, 2u32) / (Float::with_val(pw, 1u32) - &w_abs);
    let mut sum = BigComplex::zero(pw);
    let mut wm = w.clone(); // w^m for the current m
    let mut m: u64 = 1;
    loop {
        sum = sum.add(&one.add(&wm).ln());
        wm = wm.mul(&w);
        let next_abs = wm.abs();
        if next_abs <= half {
            let tail = Float::with_val(pw, &next_abs * &tail_factor);
            let scale = Float::with_val(pw, 1u32) + sum.abs();
            if tail <= Float::with_val(pw, &scale * &eps) {
                break;
            }
        }
        m += 1;
        if m > TERM_CAP {
            return Err(Error::NonConvergence {
                what: "distinct-partition product",
                detail: format!("term cap {TERM_CAP} reached at Re z = {}", z.re()),
            });
        }
    }
    Ok(sum.with_prec(p))
}

/// `xi(z) = prod_{m >= 1} (1 + e^{-mz})` for `Re z > 0`, via
/// `exp(log_xi(z))`.
///
/// # Errors
///
/// Propagates the errors of [`log_xi`].
pub fn xi_eval(z: &BigComplex, precision: Precision) -> Result<BigComplex> {
    let pw = precision.bits() + GUARD_BITS;
    let log = log_xi(&z.with_prec(pw), Precision::new(pw.min(Precision::MAX_BITS))?)?;
    Ok(log.exp().with_prec(precision.bits()))
}

/// The congruence-class Lambert sum
/// `L(z) = sum_{k >= 0} u_k / (1 + u_k)`, `u_k = e^{-(kt + r) z}`, for
/// `Re z > 0`. Expanding each summand as a geometric series shows the
/// coefficient of `q^n` in `L(-log q)` is the signed divisor sum that
/// pairs with the distinct-partition product in the exact convolution.
///
/// # Errors
///
/// Same as [`log_xi`].
pub fn l_eval(cls: &CongruenceClass, z: &BigComplex, precision: Precision) -> Result<BigComplex> {
    require_right_half_plane(z, "the congruence-class sum")?;
    let p = precision.bits();
    let pw = p + GUARD_BITS;
    let zw = z.with_prec(pw);
    let step = zw.scale(&Float::with_val(pw, cls.t())).neg().exp(); // e^{-tz}
    let mut u = zw.scale(&Float::with_val(pw, cls.r())).neg().exp(); // e^{-rz}
    let one = BigComplex::from_real(pw, &Float::with_val(pw, 1u32));
    let half = Float::with_val(pw, 0.5f32);
    let eps = pow2(pw, -(p as i32) - 16);
    let tail_factor =
        Float::with_val(pw, 2u32) / (Float::with_val(pw, 1u32) - step.abs());
    let mut sum = BigComplex::zero(pw);
    let mut k: u64 = 0;
    loop {
        sum = sum.add(&u.div(&one.add(&u)));
        u = u.mul(&step);
        let next_abs = u.abs();
        if next_abs <= half {
            let tail = Float::with_val(pw, &next_abs * &tail_factor);
            let scale = Float::with_val(pw, 1u32) + sum.abs();
            if tail <= Float::with_val(pw, &scale * &eps) {
                break;
            }
        }
        k += 1;
        if k > TERM_CAP {
            return Err(Error::NonConvergence {
                what: "congruence-class sum",
                detail: format!("term cap {TERM_CAP} reached at Re z = {}", z.re()),
            });
        }
    }
    Ok(sum.with_prec(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::default()
    }

    fn cls(r: u64, t: u64) -> CongruenceClass {
        CongruenceClass::new(r, t).unwrap()
    }

    #[test]
    fn requires_right_half_plane() {
        for (re, im) in [(0.0, 1.0), (-0.2, 0.0)] {
            let z = BigComplex::from_f64(320, re, im);
            assert!(log_xi(&z, p()).is_err());
            assert!(xi_eval(&z, p()).is_err());
            assert!(l_eval(&cls(1, 3), &z, p()).is_err());
        }
    }

    #[test]
    fn xi_matches_direct_partial_product() {
        // Independent route: multiply (1 + w^m) directly far enough that
        // the remaining factors differ from 1 by less than 1e-40.
        let z = BigComplex::from_f64(320, 0.8, 0.35);
        let xi = xi_eval(&z, p()).unwrap();
        let w = z.neg().exp();
        let one = BigComplex::from_real(320, &Float::with_val(320, 1u32));
        let mut product = one.clone();
        let mut wm = w.clone();
        for _ in 0..150 {
            product = product.mul(&one.add(&wm));
            wm = wm.mul(&w);
        }
        let diff = xi.sub(&product).abs();
        assert!(diff.to_f64() < 1e-40, "diff = {}", diff.to_f64());
    }

    #[test]
    fn conjugate_symmetry() {
        let z = BigComplex::from_f64(320, 0.05, 0.3);
        let zbar = BigComplex::from_f64(320, 0.05, -0.3);
        let a = log_xi(&z, p()).unwrap();
        let b = log_xi(&zbar, p()).unwrap();
        assert!(Float::with_val(320, a.re() - b.re()).abs().to_f64() < 1e-70);
        assert!(Float::with_val(320, a.im() + b.im()).abs().to_f64() < 1e-70);
        let la = l_eval(&cls(2, 5), &z, p()).unwrap();
        let lb = l_eval(&cls(2, 5), &zbar, p()).unwrap();
        assert!(Float::with_val(320, la.re() - lb.re()).abs().to_f64() < 1e-70);
        assert!(Float::with_val(320, la.im() + lb.im()).abs().to_f64() < 1e-70);
    }

    #[test]
    fn class_sums_partition_the_full_lambert_sum() {
        // Summing L over the t classes of a modulus gives the t = 1 sum.
        let z = BigComplex::from_f64(320, 0.2, 0.1);
        let full = l_eval(&cls(1, 1), &z, p()).unwrap();
        let mut acc = BigComplex::zero(320);
        for r in 1..=3 {
            acc = acc.add(&l_eval(&cls(r, 3), &z, p()).unwrap());
        }
        assert!(acc.sub(&full).abs().to_f64() < 1e-70);
    }

    #[test]
    fn l_values_at_unit_argument() {
        // Fixed references: sum_k e^{-(tk+r)} / (1 + e^{-(tk+r)}) at z = 1
        // for the classes 1 (mod 2) and 1 (mod 3).
        let z = BigComplex::from_f64(320, 1.0, 0.0);
        let l12 = l_eval(&cls(1, 2), &z, p()).unwrap();
        assert!((l12.re().to_f64() - 0.324_113_906_769_714_9).abs() < 1e-15);
        assert!(l12.im().clone().abs().to_f64() < 1e-70);
        let l13 = l_eval(&cls(1, 3), &z, p()).unwrap();
        assert!((l13.re().to_f64() - 0.287_886_459_151_008_5).abs() < 1e-15);
    }

    #[test]
    fn log_xi_agrees_across_precisions() {
        let z = BigComplex::from_f64(640, 0.01, 0.05);
        let lo = log_xi(&z, Precision::new(128).unwrap()).unwrap();
        let hi = log_xi(&z, Precision::new(512).unwrap()).unwrap();
        let diff = lo.with_prec(640).sub(&hi.with_prec(640)).abs();
        assert!(diff.to_f64() < 1e-36);
    }
}
