//! Exact integer power-series arithmetic for distinct-partition statistics.
//!
//! Everything in this module is exact: coefficients are arbitrary-precision
//! integers and no floating point is involved. The central quantity is
//!
//! > `D(n)` = total number of parts congruent to `r (mod t)`, counted over
//! > all partitions of `n` into distinct parts,
//!
//! obtained as the `n`-th coefficient of the product of two series:
//!
//! - the distinct-partition generating function `prod_{m>=1} (1 + q^m)`, and
//! - a Lambert-style series whose `n`-th coefficient is the signed divisor
//!   sum `sum_{d | n, d = r (mod t)} (-1)^(n/d - 1)`.
//!
//! A slow brute-force enumerator over actual partitions backs the fast
//! series route in tests.

use crate::error::{Error, Result};
use rug::{Complete, Integer};

/// Hard cap on series truncation order (number of retained coefficients is
/// `trunc + 1`). Protects against absurd allocations; well above anything
/// the test suite or CLI defaults exercise.
pub const MAX_SERIES_LEN: u64 = 2_000_000;

/// Largest `n` accepted by [`brute_force_d`]. The enumerator walks every
/// partition into distinct parts, so it is exponential-ish in `sqrt(n)`;
/// 60 keeps it under a second while covering a useful cross-check range.
pub const BRUTE_FORCE_CAP: u64 = 60;

/// A congruence class `r (mod t)` with the normalisation `0 < r <= t`.
///
/// The representative `r = t` stands for the zero residue class, which
/// keeps the natural indexing `r = 1, ..., t` used throughout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CongruenceClass {
    r: u64,
    t: u64,
}

impl CongruenceClass {
    /// Creates the class of `r` modulo `t`.
    ///
    /// # Errors
    ///
    /// [`Error::InvalidClass`] unless `0 < r <= t`.
    pub fn new(r: u64, t: u64) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidClass {
                r,
                t,
                reason: "modulus must be positive".into(),
            });
        }
        if r == 0 || r > t {
            return Err(Error::InvalidClass {
                r,
                t,
                reason: "residue must satisfy 0 < r <= t".into(),
            });
        }
        Ok(Self { r, t })
    }

    /// The residue representative, `0 < r <= t`.
    pub fn r(&self) -> u64 {
        self.r
    }

    /// The modulus.
    pub fn t(&self) -> u64 {
        self.t
    }

    /// Errors unless the modulus is at least `min` (several asymptotic
    /// bounds are only stated for `t >= 2`).
    pub fn require_modulus_at_least(&self, min: u64) -> Result<()> {
        if self.t < min {
            return Err(Error::InvalidClass {
                r: self.r,
                t: self.t,
                reason: format!("modulus must be at least {min} here"),
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for CongruenceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.r, self.t)
    }
}

/// A truncated power series with exact integer coefficients.
///
/// `coeffs[k]` is the coefficient of `q^k`; the truncation order is
/// `coeffs.len() - 1`, and all arithmetic requires operands of equal
/// truncation order so that every retained coefficient of a product is
/// exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Integer>,
}

impl QSeries {
    /// The zero series truncated at order `trunc`.
    ///
    /// # Errors
    ///
    /// [`Error::Capacity`] if `trunc + 1` would exceed [`MAX_SERIES_LEN`].
    pub fn zero(trunc: u64) -> Result<Self> {
        check_len(trunc)?;
        Ok(Self {
            coeffs: vec![Integer::new(); trunc as usize + 1],
        })
    }

    /// The constant series `1` truncated at order `trunc`.
    pub fn one(trunc: u64) -> Result<Self> {
        let mut s = Self::zero(trunc)?;
        s.coeffs[0] = Integer::from(1);
        Ok(s)
    }

    /// Wraps raw coefficients (index = exponent).
    ///
    /// # Errors
    ///
    /// [`Error::Capacity`] on empty input or input longer than
    /// [`MAX_SERIES_LEN`].
    pub fn from_coeffs(coeffs: Vec<Integer>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "a series needs at least the constant coefficient".into(),
            ));
        }
        check_len(coeffs.len() as u64 - 1)?;
        Ok(Self { coeffs })
    }

    /// Truncation order (largest retained exponent).
    pub fn trunc(&self) -> u64 {
        self.coeffs.len() as u64 - 1
    }

    /// Coefficient of `q^n`.
    ///
    /// # Panics
    ///
    /// Panics if `n` exceeds the truncation order.
    pub fn coeff(&self, n: u64) -> &Integer {
        &self.coeffs[n as usize]
    }

    /// All coefficients, index = exponent.
    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// Consumes the series, returning its coefficients.
    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }
}

fn check_len(trunc: u64) -> Result<()> {
    if trunc >= MAX_SERIES_LEN {
        return Err(Error::Capacity {
            what: "series truncation order",
            requested: trunc,
            maximum: MAX_SERIES_LEN - 1,
        });
    }
    Ok(())
}

/// Exact product of two series of equal truncation order.
///
/// # Errors
///
/// [`Error::TruncationMismatch`] if the orders differ.
pub fn series_mul(a: &QSeries, b: &QSeries) -> Result<QSeries> {
    if a.trunc() != b.trunc() {
        return Err(Error::TruncationMismatch {
            left: a.trunc() as usize,
            right: b.trunc() as usize,
        });
    }
    let n = a.coeffs.len();
    let mut out = vec![Integer::new(); n];
    for (i, ai) in a.coeffs.iter().enumerate() {
        if *ai == 0u32 {
            continue;
        }
        for (j, bj) in b.coeffs.iter().take(n - i).enumerate() {
            if *bj == 0u32 {
                continue;
            }
            out[i + j] += (ai * bj).complete();
        }
    }
    Ok(QSeries { coeffs: out })
}

/// The distinct-partition generating function `prod_{m=1..trunc} (1 + q^m)`
/// truncated at order `trunc`: coefficient `n` counts partitions of `n`
/// into distinct parts.
///
/// # Errors
///
/// [`Error::Capacity`] if the truncation order exceeds the series cap.
pub fn distinct_series(trunc: u64) -> Result<QSeries> {
    let mut s = QSeries::one(trunc)?;
    // Multiply by (1 + q^m) in place, highest index first so each source
    // coefficient is read before it is overwritten.
    for m in 1..=trunc as usize {
        for n in (m..=trunc as usize).rev() {
            let (lo, hi) = s.coeffs.split_at_mut(n);
            hi[0] += &lo[n - m];
        }
    }
    Ok(s)
}

/// The Lambert-style series for the class `r (mod t)`: coefficient `n >= 1`
/// is `sum_{d | n, d = r (mod t)} (-1)^(n/d - 1)`, coefficient 0 is 0.
///
/// Computed by sieving over pairs `(d, j)` with `d = r (mod t)` and
/// `d * j <= trunc`, adding `(-1)^(j-1)` at index `d * j`.
///
/// # Errors
///
/// [`Error::Capacity`] if the truncation order exceeds the series cap.
pub fn lambert_coeffs(cls: &CongruenceClass, trunc: u64) -> Result<QSeries> {
    let mut s = QSeries::zero(trunc)?;
    let mut d = cls.r;
    while d <= trunc {
        let mut multiple = d;
        let mut sign_positive = true;
        while multiple <= trunc {
            let slot = &mut s.coeffs[multiple as usize];
            if sign_positive {
                *slot += 1u32;
            } else {
                *slot -= 1u32;
            }
            sign_positive = !sign_positive;
            multiple += d;
        }
        d += cls.t;
    }
    Ok(s)
}

/// Table of `D(n)` for `n = 0, ..., trunc`: entry `n` is the number of
/// parts congruent to `r (mod t)` summed over all partitions of `n` into
/// distinct parts.
///
/// This is the coefficient-wise product of [`distinct_series`] and
/// [`lambert_coeffs`]; the convolution is specialised to exploit the small
/// Lambert coefficients.
///
/// # Errors
///
/// [`Error::Capacity`] if the truncation order exceeds the series cap.
pub fn d_table(cls: &CongruenceClass, trunc: u64) -> Result<Vec<Integer>> {
    let distinct = distinct_series(trunc)?;
    d_table_with(cls, trunc, distinct.coeffs())
}

/// [`d_table`] reusing a precomputed distinct-partition table (entry `k`
/// must count distinct partitions of `k`; the table may be longer than
/// needed).
///
/// # Errors
///
/// [`Error::Capacity`] on oversized requests, [`Error::InvalidArgument`]
/// if the supplied table is too short.
pub fn d_table_with(
    cls: &CongruenceClass,
    trunc: u64,
    distinct: &[Integer],
) -> Result<Vec<Integer>> {
    check_len(trunc)?;
    if (distinct.len() as u64) < trunc + 1 {
        return Err(Error::InvalidArgument(format!(
            "distinct-partition table has {} entries, need {}",
            distinct.len(),
            trunc + 1
        )));
    }
    let lambert = lambert_coeffs(cls, trunc)?;
    // Lambert coefficients are signed divisor counts, far below i64 range.
    let small: Vec<i64> = lambert
        .coeffs()
        .iter()
        .map(|c| c.to_i64().expect("divisor-sum coefficient fits i64"))
        .collect();
    let n = trunc as usize + 1;
    let mut out = vec![Integer::new(); n];
    for (m, &lam) in small.iter().enumerate().skip(1) {
        if lam == 0 {
            continue;
        }
        for j in 0..n - m {
            out[m + j] += (&distinct[j] * lam).complete();
        }
    }
    Ok(out)
}

/// `D(n)` for a single `n` from a precomputed distinct-partition table,
/// via the double sum `sum_{m = r (mod t)} sum_{j >= 1, jm <= n}
/// (-1)^(j-1) * p_distinct(n - jm)` — much cheaper than a full convolution
/// when only one value is needed.
///
/// # Errors
///
/// [`Error::InvalidArgument`] if the table does not reach index `n`.
pub fn d_single(cls: &CongruenceClass, n: u64, distinct: &[Integer]) -> Result<Integer> {
    if (distinct.len() as u64) < n + 1 {
        return Err(Error::InvalidArgument(format!(
            "distinct-partition table has {} entries, need {}",
            distinct.len(),
            n + 1
        )));
    }
    let mut acc = Integer::new();
    let mut m = cls.r;
    while m <= n {
        let mut jm = m;
        let mut sign_positive = true;
        while jm <= n {
            if sign_positive {
                acc += &distinct[(n - jm) as usize];
            } else {
                acc -= &distinct[(n - jm) as usize];
            }
            sign_positive = !sign_positive;
            jm += m;
        }
        m += cls.t;
    }
    Ok(acc)
}

/// Brute-force oracle: enumerates every partition of `n` into distinct
/// parts and counts parts congruent to `r (mod t)` directly.
///
/// # Errors
///
/// [`Error::OracleCap`] for `n` beyond [`BRUTE_FORCE_CAP`].
///
/// # Edge cases
///
/// `n = 0` has the single empty partition and returns 0.
pub fn brute_force_d(cls: &CongruenceClass, n: u64) -> Result<Integer> {
    if n > BRUTE_FORCE_CAP {
        return Err(Error::OracleCap {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut total: u64 = 0;
    // Stack of (remaining, smallest allowed next part, hits so far), where
    // "hits" counts chosen parts in the congruence class.
    let mut stack = vec![(n, 1u64, 0u64)];
    while let Some((remaining, min_part, hits)) = stack.pop() {
        if remaining == 0 {
            total += hits;
            continue;
        }
        let mut part = min_part;
        while part <= remaining {
            let hit = u64::from(part % cls.t == cls.r % cls.t);
            stack.push((remaining - part, part + 1, hits + hit));
            part += 1;
        }
    }
    Ok(Integer::from(total))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(r: u64, t: u64) -> CongruenceClass {
        CongruenceClass::new(r, t).unwrap()
    }

    #[test]
    fn class_validation() {
        assert!(CongruenceClass::new(1, 3).is_ok());
        assert!(CongruenceClass::new(3, 3).is_ok());
        assert!(CongruenceClass::new(0, 3).is_err());
        assert!(CongruenceClass::new(4, 3).is_err());
        assert!(CongruenceClass::new(1, 0).is_err());
        assert!(cls(1, 1).require_modulus_at_least(2).is_err());
        assert!(cls(2, 2).require_modulus_at_least(2).is_ok());
    }

    #[test]
    fn distinct_series_small_values() {
        // Distinct partition counts 1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10
        // for n = 0..=10 (classical; equal to partitions into odd parts).
        let s = distinct_series(10).unwrap();
        let expect = [1u32, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(s.coeff(n as u64), &Integer::from(*e), "n = {n}");
        }
    }

    #[test]
    fn lambert_matches_signed_divisor_sums() {
        // For class 1 (mod 3), coefficient of q^4: divisors of 4 that are
        // 1 mod 3 are {1, 4}; signs (-1)^(4/1-1) = -1 and (-1)^(4/4-1) = +1,
        // so the coefficient is 0. At q^7 both divisors 1 and 7 contribute
        // +1, giving 2.
        let s = lambert_coeffs(&cls(1, 3), 8).unwrap();
        let expect: [i64; 9] = [0, 1, -1, 1, 0, 1, -1, 2, -2];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(s.coeff(n as u64).to_i64().unwrap(), *e, "n = {n}");
        }
    }

    #[test]
    fn series_mul_requires_equal_truncation() {
        let a = QSeries::one(5).unwrap();
        let b = QSeries::one(6).unwrap();
        assert!(matches!(
            series_mul(&a, &b),
            Err(Error::TruncationMismatch { left: 5, right: 6 })
        ));
    }

    #[test]
    fn series_mul_identity_and_shift() {
        let id = QSeries::one(6).unwrap();
        let s = distinct_series(6).unwrap();
        assert_eq!(series_mul(&id, &s).unwrap(), s);
        // Multiplying by q shifts coefficients up and drops the overflow.
        let mut q = QSeries::zero(6).unwrap();
        q.coeffs[1] = Integer::from(1);
        let shifted = series_mul(&q, &s).unwrap();
        assert_eq!(shifted.coeff(0), &Integer::new());
        for n in 1..=6 {
            assert_eq!(shifted.coeff(n), s.coeff(n - 1));
        }
    }

    #[test]
    fn d_table_matches_brute_force_all_classes_to_25() {
        let distinct = distinct_series(25).unwrap();
        for t in 1..=5 {
            for r in 1..=t {
                let c = cls(r, t);
                let table = d_table_with(&c, 25, distinct.coeffs()).unwrap();
                for n in 0..=25 {
                    let oracle = brute_force_d(&c, n).unwrap();
                    assert_eq!(table[n as usize], oracle, "class {c}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn d_single_agrees_with_d_table() {
        let c = cls(2, 3);
        let distinct = distinct_series(200).unwrap();
        let table = d_table_with(&c, 200, distinct.coeffs()).unwrap();
        for n in [0u64, 1, 17, 100, 199, 200] {
            assert_eq!(
                d_single(&c, n, distinct.coeffs()).unwrap(),
                table[n as usize],
                "n = {n}"
            );
        }
    }

    #[test]
    fn classes_partition_all_parts() {
        // Summing D over r = 1..t counts every part of every distinct
        // partition exactly once, so the total is independent of t.
        let trunc = 40;
        let distinct = distinct_series(trunc).unwrap();
        let total_for = |t: u64| -> Vec<Integer> {
            let mut acc = vec![Integer::new(); trunc as usize + 1];
            for r in 1..=t {
                let tab = d_table_with(&cls(r, t), trunc, distinct.coeffs()).unwrap();
                for (a, b) in acc.iter_mut().zip(tab) {
                    *a += b;
                }
            }
            acc
        };
        let base = total_for(1);
        for t in [2u64, 3, 7] {
            assert_eq!(total_for(t), base, "t = {t}");
        }
    }

    #[test]
    fn residue_t_means_zero_class() {
        // Class t (mod t) counts parts divisible by t.
        let c = cls(4, 4);
        let distinct = distinct_series(12).unwrap();
        // Partitions of 12 into distinct parts with parts divisible by 4:
        // 12. 8+4, 8+3+1, 4+8 dup... enumerate: [12], [8,4], [8,3,1],
        // [4,7,1], [4,6,2], [4,5,3], [12] -> count multiples of 4:
        // [12]:1 [11,1]:0 [10,2]:0 [9,3]:0 [9,2,1]:0 [8,4]:2 [8,3,1]:1
        // [7,5]:0 [7,4,1]:1 [6,5,1]:0 [6,4,2]:1 [5,4,3]:1 [6,3,2,1]:0
        // [5,4,2,1]:1 -> total 8.
        assert_eq!(d_single(&c, 12, distinct.coeffs()).unwrap(), 8);
        assert_eq!(brute_force_d(&c, 12).unwrap(), 8);
    }

    #[test]
    fn brute_force_refuses_large_n() {
        assert!(matches!(
            brute_force_d(&cls(1, 2), BRUTE_FORCE_CAP + 1),
            Err(Error::OracleCap { .. })
        ));
    }

    #[test]
    fn capacity_guard_trips_before_allocation() {
        assert!(matches!(
            QSeries::zero(MAX_SERIES_LEN),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            distinct_series(MAX_SERIES_LEN + 5),
            Err(Error::Capacity { .. })
        ));
    }
}
