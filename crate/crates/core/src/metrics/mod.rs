//! Tokenization metrics: tokens per character and alignment similarity.

mod alignment;
mod report;
pub mod stats;

pub use alignment::{similarity, smith_waterman, AlignmentParams};
pub use report::{
    compare_reports, pair_report, tpc_of_texts, tpc_report, Comparison, LanguageTpc, PairDiff,
    PairMean, SimilarityReport, TpcReport, TPC_HISTOGRAM_BINS,
};
pub use stats::{Histogram, LinearFit, Summary};

use crate::corpus::CorpusError;
use crate::tokenizer::{TokenSequence, Tokenize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("invalid alignment parameters: {0}")]
    InvalidParams(String),
    #[error("similarity is undefined for an empty token sequence")]
    EmptySequence,
    #[error("tokens per character is undefined for empty text")]
    EmptyText,
    #[error("corpus has no samples")]
    EmptyCorpus,
    #[error("need at least two languages, got {0}")]
    TooFewLanguages(usize),
    #[error("no sample has text in both {0} and {1}")]
    NoValidSamples(String, String),
    #[error("reports cover different language pairs: {0}")]
    PairMismatch(String),
    #[error("{0}")]
    Corpus(String),
}

impl From<CorpusError> for MetricsError {
    fn from(e: CorpusError) -> Self {
        MetricsError::Corpus(e.to_string())
    }
}

/// Tokens per character: `|seq| / original_length`, where the length counts
/// characters of the normalized text.
pub fn tpc(seq: &TokenSequence, original_length: usize) -> Result<f64, MetricsError> {
    if original_length == 0 {
        return Err(MetricsError::EmptyText);
    }
    Ok(seq.len() as f64 / original_length as f64)
}

/// Encodes `text` and returns its TPC, or `None` when the normalized text is
/// empty.
pub fn text_tpc(tokenizer: &dyn Tokenize, text: &str) -> Option<f64> {
    let chars = tokenizer.normalize(text).chars().count();
    tpc(&tokenizer.encode(text), chars).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(pieces: &[&str]) -> TokenSequence {
        let mut s = TokenSequence::default();
        for (i, p) in pieces.iter().enumerate() {
            s.push(i as u32 + 1, *p);
        }
        s
    }

    #[test]
    fn tpc_values() {
        assert_eq!(tpc(&seq(&["ma", "kan"]), 5).unwrap(), 0.4);
        assert_eq!(tpc(&seq(&["a", "b", "c"]), 3).unwrap(), 1.0);
        assert_eq!(tpc(&seq(&["makan"]), 5).unwrap(), 0.2);
        assert_eq!(tpc(&seq(&[]), 0), Err(MetricsError::EmptyText));
    }
}
