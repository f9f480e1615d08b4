//! Fixed-precision float serialization for reports.

use serde::Serializer;

/// Significant digits kept in serialized reports.
pub const SIGNIFICANT_DIGITS: usize = 9;

/// Rounds `x` to [`SIGNIFICANT_DIGITS`] significant digits. Non-finite values
/// pass through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap_or(x)
}

pub fn sig9<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

pub fn sig9_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&round_sig(*v)),
        None => s.serialize_none(),
    }
}

/// Formats `x` for CSV output with the same rounding.
pub fn fmt_sig9(x: f64) -> String {
    round_sig(x).to_string()
}
