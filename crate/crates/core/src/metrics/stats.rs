//! Descriptive statistics and paired-sample fits.

use serde::{Deserialize, Serialize};

use crate::numfmt::{sig9, sig9_opt};

/// Fixed-width histogram over `[0, hi]`. Values above `hi` are counted in
/// `overflow`; `hi` itself falls in the last bin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    #[serde(serialize_with = "sig9")]
    pub hi: f64,
    pub counts: Vec<u64>,
    pub overflow: u64,
}

impl Histogram {
    pub fn new(values: &[f64], bins: usize, hi: f64) -> Self {
        let bins = bins.max(1);
        let mut counts = vec![0u64; bins];
        let mut overflow = 0;
        for &v in values {
            if v > hi {
                overflow += 1;
                continue;
            }
            let b = ((v / hi) * bins as f64).floor().max(0.0) as usize;
            counts[b.min(bins - 1)] += 1;
        }
        Self {
            hi,
            counts,
            overflow,
        }
    }

    /// Lower edge of every bin plus the upper edge of the last one.
    pub fn edges(&self) -> Vec<f64> {
        let n = self.counts.len();
        (0..=n).map(|i| self.hi * i as f64 / n as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    #[serde(serialize_with = "sig9")]
    pub mean: f64,
    #[serde(serialize_with = "sig9")]
    pub median: f64,
    /// Population standard deviation.
    #[serde(serialize_with = "sig9")]
    pub std: f64,
    #[serde(serialize_with = "sig9")]
    pub min: f64,
    #[serde(serialize_with = "sig9")]
    pub max: f64,
}

/// Summarizes `values`, or `None` when empty. Sums run in input order so
/// results do not depend on how the values were computed.
pub fn summarize(values: &[f64]) -> Option<Summary> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    };
    Some(Summary {
        count: values.len(),
        mean,
        median,
        std: var.sqrt(),
        min: sorted[0],
        max: sorted[sorted.len() - 1],
    })
}

/// Least-squares line `y = slope * x + intercept` with correlations.
/// Each field is `None` where it is undefined (constant input, fewer than two
/// points).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    #[serde(serialize_with = "sig9_opt")]
    pub slope: Option<f64>,
    #[serde(serialize_with = "sig9_opt")]
    pub intercept: Option<f64>,
    #[serde(serialize_with = "sig9_opt")]
    pub pearson_r: Option<f64>,
    #[serde(serialize_with = "sig9_opt")]
    pub spearman_rho: Option<f64>,
}

fn centered_moments(x: &[f64], y: &[f64]) -> (f64, f64, f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
        sxy += (a - mx) * (b - my);
    }
    (mx, my, sxx, syy, sxy)
}

pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len());
    if x.len() < 2 {
        return None;
    }
    let (_, _, sxx, syy, sxy) = centered_moments(x, y);
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// 1-based ranks, ties get the average of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

pub fn spearman(x: &[f64], y: &[f64]) -> Option<f64> {
    pearson(&average_ranks(x), &average_ranks(y))
}

pub fn linear_fit(x: &[f64], y: &[f64]) -> LinearFit {
    assert_eq!(x.len(), y.len());
    let (slope, intercept) = if x.len() < 2 {
        (None, None)
    } else {
        let (mx, my, sxx, _, sxy) = centered_moments(x, y);
        if sxx == 0.0 {
            (None, None)
        } else {
            let m = sxy / sxx;
            (Some(m), Some(my - m * mx))
        }
    };
    LinearFit {
        slope,
        intercept,
        pearson_r: pearson(x, y),
        spearman_rho: spearman(x, y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_of_small_sample() {
        let s = summarize(&[0.4, 0.2, 0.6, 0.2]).unwrap();
        assert_eq!(s.count, 4);
        assert!((s.mean - 0.35).abs() < 1e-15);
        assert!((s.median - 0.3).abs() < 1e-15);
        assert_eq!((s.min, s.max), (0.2, 0.6));
        assert!((s.std - 0.0275f64.sqrt()).abs() < 1e-15);
        assert!(summarize(&[]).is_none());
    }

    #[test]
    fn histogram_bins_and_overflow() {
        let h = Histogram::new(&[0.0, 0.24, 0.25, 0.99, 1.0, 1.5], 4, 1.0);
        assert_eq!(h.counts, [2, 1, 0, 2]);
        assert_eq!(h.overflow, 1);
        assert_eq!(h.edges(), [0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn ranks_average_ties() {
        assert_eq!(
            average_ranks(&[10.0, 20.0, 10.0, 30.0]),
            [1.5, 3.0, 1.5, 4.0]
        );
    }

    #[test]
    fn exact_line() {
        let x = [0.1, 0.2, 0.4, 0.7];
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        let f = linear_fit(&x, &y);
        assert!((f.slope.unwrap() - 2.0).abs() < 1e-12);
        assert!(f.intercept.unwrap().abs() < 1e-12);
        assert!((f.pearson_r.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(f.spearman_rho, Some(1.0));
    }

    #[test]
    fn monotone_but_not_linear() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [1.0, 4.0, 9.0, 100.0];
        let f = linear_fit(&x, &y);
        assert_eq!(f.spearman_rho, Some(1.0));
        assert!(f.pearson_r.unwrap() < 0.9);
    }

    #[test]
    fn degenerate_inputs() {
        let f = linear_fit(&[0.5, 0.5], &[0.1, 0.9]);
        assert_eq!(f.slope, None);
        assert_eq!(f.pearson_r, None);
        assert_eq!(linear_fit(&[0.5], &[0.5]).spearman_rho, None);
    }
}
