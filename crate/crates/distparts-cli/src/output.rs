//! Output plumbing: the format selector, the stable result envelope, and
//! float-rendering helpers shared by every subcommand.

use std::collections::BTreeMap;

use rug::Float;
use serde::Serialize;

/// Output format selector (`--format`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Machine-readable envelope (stable bytes for fixed inputs).
    Json,
    /// Comma-separated rows with a header line.
    Csv,
    /// Aligned markdown tables / human-readable summaries.
    Md,
}

/// The machine-readable wrapper structured commands emit.
///
/// Serialization is deterministic: the parameter map is ordered, nested
/// result maps use `serde_json`'s sorted keys, and every float is
/// pre-rendered to a string at a fixed digit count (round-to-nearest-even),
/// so identical inputs reproduce identical bytes. `precision_bits` records
/// the working precision behind the numbers.
#[derive(Debug, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub precision_bits: u32,
    pub results: serde_json::Value,
    pub warnings: Vec<String>,
}

impl OutputEnvelope {
    pub fn new(
        command: &str,
        parameters: BTreeMap<String, String>,
        precision_bits: u32,
        results: serde_json::Value,
        warnings: Vec<String>,
    ) -> Self {
        Self {
            command: command.to_owned(),
            parameters,
            precision_bits,
            results,
            warnings,
        }
    }

    /// Prints the envelope as pretty JSON on stdout.
    pub fn print_json(&self) {
        println!(
            "{}",
            serde_json::to_string_pretty(self).expect("envelope serializes to JSON")
        );
    }
}

/// Scientific rendering with 30 significant digits — comfortably more
/// than any tolerance documented for a command, few enough to stay stable
/// across precision bumps.
pub fn sci(f: &Float) -> String {
    format!("{f:.30e}")
}

/// Fixed six-decimal rendering for ratio-table cells: the value times
/// `10^6` is rounded to the nearest integer (ties to even) in exact
/// arbitrary-precision arithmetic, then printed with the point restored —
/// `Float`'s own format precision counts significant digits, not
/// decimals, so it cannot be used directly.
pub fn fixed6(f: &Float) -> String {
    let scaled = Float::with_val(f.prec() + 32, f * 1_000_000u32).round_even();
    let scaled_int = scaled.to_integer().expect("table cells are finite");
    let mut digits = scaled_int.to_string();
    let neg = digits.starts_with('-');
    if neg {
        digits.remove(0);
    }
    let (int_part, frac_part) = if digits.len() > 6 {
        let (a, b) = digits.split_at(digits.len() - 6);
        (a.to_owned(), b.to_owned())
    } else {
        ("0".to_owned(), format!("{digits:0>6}"))
    };
    format!("{}{int_part}.{frac_part}", if neg { "-" } else { "" })
}

/// Builds a parameter map from (key, value) pairs.
pub fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs
        .into_iter()
        .map(|(k, v)| (k.to_owned(), v))
        .collect()
}

/// Emits warnings on stderr (used by the non-JSON formats, which keep
/// stdout machine-parseable).
pub fn warn_stderr(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}
