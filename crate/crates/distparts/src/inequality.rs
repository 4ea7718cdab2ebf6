//! The reduced crossover inequality, threshold extraction, and exhaustive
//! small-`n` scans for the class-monotonicity of the part count.
//!
//! For a modulus `t >= 2`, write `D_r(n)` for the count of parts congruent
//! to `r (mod t)` over partitions of `n` into distinct parts. Adjacent
//! classes satisfy `D_r(n) >= D_{r+1}(n)` once `n` clears an explicit
//! threshold `N_t`; [`find_nt`] re-derives that threshold from a reduced
//! sufficient criterion, and [`scan_counterexamples`] checks the small-`n`
//! range exhaustively (where a handful of tiny violations genuinely live,
//! e.g. `D_1(2) = 0 < 1 = D_2(2)`).
//!
//! The reduced criterion compares, at `n' = n + 1/24` and
//! `x = pi sqrt(n'/3)`,
//!
//! ```text
//! lhs(n)  =  (pi / (4 t sqrt(6 n'))) I_1(x)
//! rhs(n)  =  (pi^2 / (64 n' sqrt 2)) I_2(x)
//!          + (233 pi^4 / (6912 sqrt 2 n')) I_4(x)
//!          + (1/(t sqrt 2) + 33 sqrt 2 / 16 + 314317 sqrt 2 / 48)
//!            * e^{(3 pi / 4) sqrt(n/3)} / n'
//!          + 2 err_bound(t, n)
//! ```
//!
//! and declares `n` good when `lhs > rhs`. The `I_4` cross term is kept at
//! first order in `1/n'` — deliberately *not* the asymptotically sharper
//! `1/n'^2` — which over-weights that term for every `n >= 1` and makes
//! the criterion strictly stronger; thresholds certified against it remain
//! valid for any weaker form. Margins are always evaluated at two
//! precisions and the sign must agree, so a reported threshold cannot be a
//! rounding artifact.

use crate::effective::{err_bound, hypothesis_floor};
use crate::error::{Error, Result};
use crate::precision::Precision;
use crate::series::{self, CongruenceClass};
use crate::specfun::bessel::bessel_i;
use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// Default largest `n` a threshold search will evaluate.
pub const DEFAULT_SCAN_LIMIT: u64 = 1_000_000;

/// Default length of the stability window a candidate threshold must
/// clear without a single failing margin.
pub const DEFAULT_STABILITY_WINDOW: u64 = 1_000;

/// A violation `D_r(n) < D_s(n)` found by an exhaustive scan (`r < s`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Counterexample {
    /// Smaller residue.
    pub r: u64,
    /// Larger residue.
    pub s: u64,
    /// Argument where the order is violated.
    pub n: u64,
}

/// Outcome of [`verify_corollary`].
#[derive(Debug, Clone)]
pub struct InequalityReport {
    /// Modulus.
    pub t: u64,
    /// Certified threshold from the reduced criterion.
    pub n_t: u64,
    /// Scan limit in force during the search.
    pub scan_limit_used: u64,
    /// Stability window the threshold had to clear.
    pub stability_window: u64,
    /// Upper end of the exhaustive small-`n` scan.
    pub exhaustive_to: u64,
    /// Violations found in `0..=exhaustive_to`, sorted by `(r, s, n)`.
    pub counterexamples: Vec<Counterexample>,
    /// Whether the exhaustive range reaches the certified threshold
    /// (`exhaustive_to >= n_t`), so the scan and the criterion — which
    /// covers every `n > n_t` — join with no unchecked gap.
    pub covers_threshold: bool,
}

fn require_modulus(t: u64) -> Result<()> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!(
            "class comparisons need a modulus t >= 2, got t = {t}"
        )));
    }
    Ok(())
}

/// Raw margin `lhs - rhs` at one working precision (no stability check).
fn margin_raw(t: u64, n: u64, pw: u32) -> Result<Float> {
    let pi = Float::with_val(pw, Constant::Pi);
    let sqrt2 = Float::with_val(pw, 2u32).sqrt();
    let np = Float::with_val(pw, rug::Rational::from((24 * n as i64 + 1, 24)));
    let x = Float::with_val(pw, &pi) * (np.clone() / 3u32).sqrt();
    let inner = Precision::new(pw.min(Precision::MAX_BITS))?;
    let i1 = bessel_i(1, &x, inner)?;
    let i2 = bessel_i(2, &x, inner)?;
    let i4 = bessel_i(4, &x, inner)?;

    let lhs = Float::with_val(pw, &pi) * i1
        / (4u32 * Float::with_val(pw, t) * Float::with_val(pw, 6u32 * np.clone()).sqrt());

    let term_i2 = Float::with_val(pw, &pi).square() * i2
        / (64u32 * np.clone() * Float::with_val(pw, &sqrt2));
    let term_i4 = 233u32 * Float::with_val(pw, &pi).pow(4) * i4
        / (6912u32 * Float::with_val(pw, &sqrt2) * np.clone());
    // 1/(t sqrt2) + 33 sqrt2/16 + 314317 sqrt2/48
    let c_t = Float::with_val(pw, 1u32) / (Float::with_val(pw, t) * Float::with_val(pw, &sqrt2))
        + 33u32 * Float::with_val(pw, &sqrt2) / 16u32
        + Float::with_val(pw, 314_317u32) * sqrt2 / 48u32;
    let minor = c_t
        * (3u32 * pi / 4u32 * (Float::with_val(pw, n) / 3u32).sqrt()).exp()
        / np;
    let err = err_bound(t, n, inner)?;
    let rhs = term_i2 + term_i4 + minor + 2u32 * Float::with_val(pw, err);

    Ok(lhs - rhs)
}

/// Margin of the reduced criterion at `(t, n)`: positive means the
/// crossover inequality holds at `n`.
///
/// Evaluated at the requested precision and at double precision; the two
/// signs must agree.
///
/// # Errors
///
/// [`Error::InvalidArgument`] for `t < 2` or `n = 0`;
/// [`Error::PrecisionExhausted`] when the sign flips under doubling.
pub fn reduced_margin(t: u64, n: u64, precision: Precision) -> Result<Float> {
    require_modulus(t)?;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "the reduced criterion needs n >= 1".into(),
        ));
    }
    let lo = margin_raw(t, n, precision.bits() + 32)?;
    let hi = margin_raw(t, n, precision.doubled().bits() + 32)?;
    if lo.is_sign_positive() != hi.is_sign_positive() {
        return Err(Error::PrecisionExhausted {
            what: "reduced-criterion margin",
            detail: format!(
                "sign at {} bits disagrees with sign at {} bits for t = {t}, n = {n}",
                precision.bits(),
                precision.doubled().bits()
            ),
        });
    }
    Ok(Float::with_val(precision.bits(), lo))
}

fn margin_holds(t: u64, n: u64, precision: Precision) -> Result<bool> {
    Ok(reduced_margin(t, n, precision)? > 0u32)
}

/// Re-derives the threshold `N_t`: the largest `n` at which the reduced
/// criterion still fails, so the class order is certified for every
/// argument strictly beyond it (rechecked through a stability window of
/// consecutive arguments).
///
/// Strategy: exponential bracketing from the hypothesis floor, binary
/// search down to the first sign change, then a forward scan of
/// `stability_window` arguments past the crossover; any late failure
/// restarts the candidate just beyond it. The margin is in practice
/// monotone near the crossover, but nothing here assumes it.
///
/// # Errors
///
/// [`Error::InvalidArgument`] for `t < 2` or a zero window;
/// [`Error::ScanLimit`] if no stable threshold exists below `scan_limit`;
/// precision errors propagate from [`reduced_margin`].
pub fn find_nt(
    t: u64,
    precision: Precision,
    scan_limit: u64,
    stability_window: u64,
) -> Result<u64> {
    require_modulus(t)?;
    if stability_window == 0 {
        return Err(Error::InvalidArgument(
            "the stability window must be at least 1".into(),
        ));
    }
    let floor = hypothesis_floor(t);
    let limit_err = || Error::ScanLimit { t, scan_limit };

    // Exponential bracket: find some passing n.
    let mut hi = floor;
    let mut lo = floor; // largest known-failing n (or floor - 1 virtually)
    let mut have_fail = false;
    loop {
        if hi > scan_limit {
            return Err(limit_err());
        }
        if margin_holds(t, hi, precision)? {
            break;
        }
        have_fail = true;
        lo = hi;
        hi = hi.saturating_mul(2);
    }

    // Binary search for the first passing n in (lo, hi].
    let mut candidate = if have_fail {
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if margin_holds(t, mid, precision)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    } else {
        floor
    };

    // Forward stability scan; restart past any failure.
    loop {
        let end = candidate
            .checked_add(stability_window)
            .ok_or_else(limit_err)?;
        if end > scan_limit {
            return Err(limit_err());
        }
        let window: Vec<u64> = (candidate..=end).collect();
        let worst_failure = window
            .par_iter()
            .map(|&n| Ok((n, margin_holds(t, n, precision)?)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, holds)| !holds)
            .map(|(n, _)| n)
            .max();
        match worst_failure {
            // `candidate` is the first stably passing argument; the
            // threshold is the failing argument just before it.
            None => return Ok(candidate - 1),
            Some(bad) => candidate = bad + 1,
        }
    }
}

/// Exhaustively scans `0..=n_max` for order violations `D_r(n) < D_s(n)`
/// between any two classes `r < s` of the modulus `t`, using exact integer
/// series arithmetic throughout.
///
/// # Returns
///
/// All violations, sorted by `(r, s, n)`.
///
/// # Errors
///
/// [`Error::InvalidArgument`] for `t < 2`; capacity errors for huge
/// `n_max`.
pub fn scan_counterexamples(t: u64, n_max: u64) -> Result<Vec<Counterexample>> {
    require_modulus(t)?;
    let distinct = series::distinct_series(n_max)?;
    let tables = (1..=t)
        .into_par_iter()
        .map(|r| {
            let cls = CongruenceClass::new(r, t)?;
            series::d_table_with(&cls, n_max, distinct.coeffs())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut found: Vec<Counterexample> = (0..=n_max as usize)
        .into_par_iter()
        .flat_map_iter(|n| {
            let tables = &tables;
            (0..t as usize).flat_map(move |i| {
                (i + 1..t as usize).filter_map(move |j| {
                    (tables[i][n] < tables[j][n]).then_some(Counterexample {
                        r: i as u64 + 1,
                        s: j as u64 + 1,
                        n: n as u64,
                    })
                })
            })
        })
        .collect();
    found.sort_unstable();
    Ok(found)
}

/// Certifies the class-monotonicity statement for one modulus at reduced
/// scale: re-derives the threshold `N_t` and exhaustively scans
/// `0..=exhaustive_to`, reporting any violations found there and whether
/// the two regimes meet without a gap.
///
/// # Errors
///
/// As [`find_nt`] and [`scan_counterexamples`].
pub fn verify_corollary(
    t: u64,
    exhaustive_to: u64,
    precision: Precision,
    scan_limit: u64,
    stability_window: u64,
) -> Result<InequalityReport> {
    let n_t = find_nt(t, precision, scan_limit, stability_window)?;
    let counterexamples = scan_counterexamples(t, exhaustive_to)?;
    Ok(InequalityReport {
        t,
        n_t,
        scan_limit_used: scan_limit,
        stability_window,
        exhaustive_to,
        counterexamples,
        covers_threshold: exhaustive_to >= n_t,
    })
}
