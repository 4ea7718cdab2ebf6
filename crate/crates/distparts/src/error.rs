//! Error type shared across the crate.
//!
//! Every fallible public function returns [`Result`]. Variants are grouped by
//! theme:
//!
//! - input validation: [`Error::InvalidClass`], [`Error::InvalidArgument`],
//!   [`Error::HypothesisViolation`],
//! - resource limits: [`Error::Capacity`], [`Error::OracleCap`],
//!   [`Error::ScanLimit`],
//! - numerical failure: [`Error::NonConvergence`],
//!   [`Error::PrecisionExhausted`], [`Error::TruncationMismatch`].

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A congruence class `(r, t)` outside the supported range `0 < r <= t`
    /// (or a modulus below the minimum a routine requires).
    #[error("invalid congruence class r={r}, t={t}: {reason}")]
    InvalidClass {
        /// Residue as given.
        r: u64,
        /// Modulus as given.
        t: u64,
        /// Which constraint failed.
        reason: String,
    },

    /// A scalar argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The arguments lie outside the hypotheses under which a stated bound
    /// or decomposition is proved, so evaluating it would be meaningless.
    #[error("hypothesis violation in {context}: {detail}")]
    HypothesisViolation {
        /// Routine or inequality whose hypotheses failed.
        context: &'static str,
        /// Human-readable description of the failed hypothesis.
        detail: String,
    },

    /// A request would exceed a hard capacity limit (series length, scan
    /// range, allocation size). Raised *before* any large allocation.
    #[error("capacity exceeded in {what}: requested {requested}, maximum {maximum}")]
    Capacity {
        /// What was being sized.
        what: &'static str,
        /// Requested size.
        requested: u64,
        /// Hard limit.
        maximum: u64,
    },

    /// The brute-force enumeration oracle refuses inputs past its cap; it
    /// exists for cross-checking small cases, not production evaluation.
    #[error("brute-force oracle supports n <= {cap}, got n = {n}")]
    OracleCap {
        /// Requested argument.
        n: u64,
        /// Maximum supported argument.
        cap: u64,
    },

    /// Two power series of different truncation order were combined.
    #[error("truncation mismatch: left series has order {left}, right has order {right}")]
    TruncationMismatch {
        /// Truncation order of the left operand.
        left: usize,
        /// Truncation order of the right operand.
        right: usize,
    },

    /// An iterative numerical process (series tail, quadrature refinement)
    /// failed to reach its target accuracy within its iteration budget.
    #[error("no convergence in {what}: {detail}")]
    NonConvergence {
        /// The failing routine.
        what: &'static str,
        /// Diagnostic detail (iteration counts, last residual, ...).
        detail: String,
    },

    /// A sign or pass/fail decision did not stabilise under precision
    /// doubling, so no certified answer can be returned.
    #[error("precision exhausted in {what}: {detail}")]
    PrecisionExhausted {
        /// The routine that needed a stable decision.
        what: &'static str,
        /// What disagreed between the two precisions.
        detail: String,
    },

    /// A threshold search exhausted its scan limit without locating a
    /// stable crossover.
    #[error("no stable threshold for t = {t} below scan limit {scan_limit}")]
    ScanLimit {
        /// Modulus being searched.
        t: u64,
        /// Limit that was reached.
        scan_limit: u64,
    },
}
