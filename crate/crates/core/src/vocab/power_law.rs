//! Power-law fit of syllable frequencies, `p(x) ~ x^-alpha`.
//!
//! The exponent is the continuous maximum-likelihood (Hill) estimate with the
//! usual half-integer shift for integer-valued data:
//!
//! ```text
//! alpha = 1 + n / sum(ln(x_i / (x_min - 1/2)))    over x_i >= x_min
//! ```
//!
//! The rank exponent of the matching Zipf curve is `beta = 1 / (alpha - 1)`.

use serde::{Deserialize, Serialize};

use super::SyllableCensus;

const MIN_DISTINCT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PowerLawError {
    #[error("need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("all observations are equal; the exponent is undefined")]
    DegenerateDistribution,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    #[serde(serialize_with = "crate::numfmt::sig9")]
    pub alpha: f64,
    #[serde(serialize_with = "crate::numfmt::sig9")]
    pub beta: f64,
    pub x_min: u64,
    /// Observations at or above `x_min`.
    pub tail: usize,
}

/// Fits the distribution of syllable counts in `census`, with `x_min` the
/// smallest count of at least 2.
pub fn fit_power_law(census: &SyllableCensus) -> Result<PowerLawFit, PowerLawError> {
    let counts: Vec<u64> = census.counts.values().copied().collect();
    fit_power_law_counts(&counts, None)
}

/// Fits integer observations `values`. `x_min` defaults to the smallest value
/// that is at least 2.
pub fn fit_power_law_counts(
    values: &[u64],
    x_min: Option<u64>,
) -> Result<PowerLawFit, PowerLawError> {
    if values.len() < MIN_DISTINCT {
        return Err(PowerLawError::InsufficientData {
            needed: MIN_DISTINCT,
            got: values.len(),
        });
    }
    let first = values[0];
    if values.iter().all(|&v| v == first) {
        return Err(PowerLawError::DegenerateDistribution);
    }
    let x_min = match x_min {
        Some(x) => x.max(1),
        None => values
            .iter()
            .copied()
            .filter(|&v| v >= 2)
            .min()
            .ok_or(PowerLawError::DegenerateDistribution)?,
    };

    let shift = x_min as f64 - 0.5;
    let (n, log_sum) = values
        .iter()
        .filter(|&&v| v >= x_min)
        .fold((0usize, 0.0f64), |(n, s), &v| {
            (n + 1, s + (v as f64 / shift).ln())
        });
    if n < 2 {
        return Err(PowerLawError::InsufficientData { needed: 2, got: n });
    }
    let alpha = 1.0 + n as f64 / log_sum;
    Ok(PowerLawFit {
        alpha,
        beta: 1.0 / (alpha - 1.0),
        x_min,
        tail: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn too_few_observations() {
        assert_eq!(
            fit_power_law_counts(&[1, 2, 3], None),
            Err(PowerLawError::InsufficientData { needed: 10, got: 3 })
        );
        assert!(matches!(
            fit_power_law(&SyllableCensus::default()),
            Err(PowerLawError::InsufficientData { .. })
        ));
    }

    #[test]
    fn equal_counts_are_degenerate() {
        assert_eq!(
            fit_power_law_counts(&[4; 12], None),
            Err(PowerLawError::DegenerateDistribution)
        );
    }

    #[test]
    fn default_x_min_skips_hapaxes() {
        let v = [1, 1, 1, 2, 3, 4, 5, 8, 13, 21, 34];
        let fit = fit_power_law_counts(&v, None).unwrap();
        assert_eq!(fit.x_min, 2);
        assert_eq!(fit.tail, 8);
        assert!(fit.alpha > 1.0);
        assert_eq!(fit.beta, 1.0 / (fit.alpha - 1.0));
    }

    #[test]
    fn closed_form_on_small_sample() {
        // x_min = 2, shift 1.5: alpha = 1 + n / sum ln(x / 1.5)
        let v = [1, 1, 1, 1, 1, 1, 1, 1, 2, 6];
        let fit = fit_power_law_counts(&v, None).unwrap();
        let expected = 1.0 + 2.0 / ((2.0f64 / 1.5).ln() + (6.0f64 / 1.5).ln());
        assert!((fit.alpha - expected).abs() < 1e-12);
    }
}
