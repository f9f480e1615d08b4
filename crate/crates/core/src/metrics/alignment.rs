//! Smith-Waterman local alignment over token ids, linear gap cost.

use serde::{Deserialize, Serialize};

use super::MetricsError;

/// Scoring scheme. A gap of length `k` costs `k * gap_penalty`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentParams {
    pub match_score: i32,
    pub mismatch_score: i32,
    pub gap_penalty: u32,
}

impl Default for AlignmentParams {
    fn default() -> Self {
        Self {
            match_score: 2,
            mismatch_score: -1,
            gap_penalty: 1,
        }
    }
}

impl AlignmentParams {
    pub fn new(
        match_score: i32,
        mismatch_score: i32,
        gap_penalty: u32,
    ) -> Result<Self, MetricsError> {
        let p = Self {
            match_score,
            mismatch_score,
            gap_penalty,
        };
        p.validate()?;
        Ok(p)
    }

    /// Requires a positive match score and a mismatch score no higher than it.
    pub fn validate(&self) -> Result<(), MetricsError> {
        if self.match_score <= 0 {
            return Err(MetricsError::InvalidParams(format!(
                "match score must be positive, got {}",
                self.match_score
            )));
        }
        if self.mismatch_score > self.match_score {
            return Err(MetricsError::InvalidParams(format!(
                "mismatch score {} exceeds match score {}",
                self.mismatch_score, self.match_score
            )));
        }
        Ok(())
    }

    #[inline]
    fn substitution(&self, x: u32, y: u32) -> i64 {
        if x == y {
            self.match_score as i64
        } else {
            self.mismatch_score as i64
        }
    }
}

/// Best local alignment score of `a` against `b`. Zero when either is empty
/// or nothing aligns profitably.
pub fn smith_waterman(a: &[u32], b: &[u32], params: &AlignmentParams) -> u64 {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    // keep the shorter sequence along the row
    let (a, b) = if b.len() > a.len() { (b, a) } else { (a, b) };
    let gap = params.gap_penalty as i64;
    let mut prev = vec![0i64; b.len() + 1];
    let mut cur = vec![0i64; b.len() + 1];
    let mut best = 0i64;
    for &x in a {
        for (j, &y) in b.iter().enumerate() {
            let h = (prev[j] + params.substitution(x, y))
                .max(prev[j + 1] - gap)
                .max(cur[j] - gap)
                .max(0);
            cur[j + 1] = h;
            best = best.max(h);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    best as u64
}

/// Alignment score normalized by `match_score * sqrt(|a| * |b|)`.
pub fn similarity(a: &[u32], b: &[u32], params: &AlignmentParams) -> Result<f64, MetricsError> {
    if a.is_empty() || b.is_empty() {
        return Err(MetricsError::EmptySequence);
    }
    let score = smith_waterman(a, b, params) as f64;
    let norm = params.match_score as f64 * ((a.len() as f64) * (b.len() as f64)).sqrt();
    Ok(score / norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: AlignmentParams = AlignmentParams {
        match_score: 2,
        mismatch_score: -1,
        gap_penalty: 1,
    };

    #[test]
    fn identical_sequences_score_full_diagonal() {
        let a = [5, 6, 7, 8];
        assert_eq!(smith_waterman(&a, &a, &P), 8);
        assert_eq!(similarity(&a, &a, &P).unwrap(), 1.0);
    }

    #[test]
    fn single_mismatch_floors_at_zero() {
        assert_eq!(smith_waterman(&[1], &[2], &P), 0);
        assert_eq!(similarity(&[1], &[2], &P).unwrap(), 0.0);
    }

    #[test]
    fn mismatch_in_the_middle() {
        // 2 - 1 + 2 beats two gaps (2 - 1 - 1 + 2)
        assert_eq!(smith_waterman(&[1, 2, 3], &[1, 9, 3], &P), 3);
    }

    #[test]
    fn gap_bridging() {
        // a b c d vs a b d: 2 + 2 - 1 + 2
        assert_eq!(smith_waterman(&[1, 2, 3, 4], &[1, 2, 4], &P), 5);
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(smith_waterman(&[], &[1], &P), 0);
        assert_eq!(similarity(&[], &[1], &P), Err(MetricsError::EmptySequence));
    }

    #[test]
    fn normalization_arithmetic() {
        // |a| = 4, |b| = 9, score 6: 6 / (2 * 6)
        let a = [1, 2, 3, 0];
        let b = [1, 2, 3, 9, 9, 9, 9, 9, 9];
        assert_eq!(smith_waterman(&a, &b, &P), 6);
        assert_eq!(similarity(&a, &b, &P).unwrap(), 0.5);
    }

    #[test]
    fn params_validation() {
        assert!(AlignmentParams::new(0, -1, 1).is_err());
        assert!(AlignmentParams::new(2, 3, 1).is_err());
        assert!(AlignmentParams::new(1, 1, 0).is_ok());
        assert_eq!(AlignmentParams::default(), P);
    }
}
