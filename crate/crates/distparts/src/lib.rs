//! Exact and asymptotic statistics of parts in congruence classes over
//! partitions into distinct parts.
//!
//! For a partition of `n` into distinct parts and a congruence class
//! `r (mod t)`, count the parts lying in that class; summing over all
//! distinct partitions of `n` gives the statistic `D(n)` this crate is
//! about. The crate provides:
//!
//! - **exact evaluation** of `D(n)` through integer power-series
//!   arithmetic, with a brute-force enumerator as an independent oracle
//!   ([`series`]);
//! - **asymptotic main terms** for `D(n)` and the derived ratios that make
//!   the bias between residue classes visible ([`asymptotics`]);
//! - **certified effective bounds**: an explicit decomposition of `D(n)`
//!   into Bessel-type integrals with a proven error envelope, checkable at
//!   concrete `n` ([`effective`]), plus validators for the saddle-point
//!   arc estimates the proofs rest on;
//! - **threshold extraction**: the reduced inequality that pins down, for
//!   each modulus `t`, the explicit `N_t` past which the class-monotonicity
//!   of `D` is certified, together with exhaustive small-`n` scans
//!   ([`inequality`]).
//!
//! Floating-point work uses arbitrary-precision arithmetic ([`rug`], i.e.
//! GMP/MPFR) with explicit [`precision::Precision`] everywhere; decision
//! routines re-run themselves at doubled precision and refuse to answer if
//! the verdict is not stable.

pub mod asymptotics;
pub mod effective;
pub mod error;
pub mod inequality;
pub mod precision;
pub mod series;
pub mod specfun;

pub use error::{Error, Result};
pub use precision::Precision;
pub use series::CongruenceClass;
