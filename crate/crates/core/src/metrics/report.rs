//! Corpus-level TPC distributions and pairwise similarity reports.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::{linear_fit, summarize, Histogram, LinearFit, Summary};
use super::{similarity, text_tpc, AlignmentParams, MetricsError};
use crate::corpus::ParallelCorpus;
use crate::numfmt::sig9;
use crate::tokenizer::Tokenize;

/// Bins of the TPC histogram over `[0, 1]`.
pub const TPC_HISTOGRAM_BINS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LanguageTpc {
    pub language: String,
    pub rows: usize,
    /// Rows with empty text, which have no TPC.
    pub skipped: usize,
    pub summary: Option<Summary>,
    pub histogram: Histogram,
    /// Per-row values in corpus order, `None` for skipped rows.
    #[serde(skip)]
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TpcReport {
    pub scheme: String,
    pub languages: Vec<LanguageTpc>,
}

/// TPC distribution of every language in `corpus`.
pub fn tpc_report(
    corpus: &ParallelCorpus,
    tokenizer: &dyn Tokenize,
) -> Result<TpcReport, MetricsError> {
    if corpus.is_empty() {
        return Err(MetricsError::EmptyCorpus);
    }
    let languages = corpus
        .languages()
        .iter()
        .map(|lang| {
            let texts: Vec<&str> = corpus.column(lang)?.collect();
            Ok(tpc_of_texts(lang, &texts, tokenizer))
        })
        .collect::<Result<_, MetricsError>>()?;
    Ok(TpcReport {
        scheme: tokenizer.scheme().to_string(),
        languages,
    })
}

/// TPC distribution of one language given as plain texts.
pub fn tpc_of_texts<S: AsRef<str> + Sync>(
    language: &str,
    texts: &[S],
    tokenizer: &dyn Tokenize,
) -> LanguageTpc {
    let values: Vec<Option<f64>> = texts
        .par_iter()
        .map(|t| text_tpc(tokenizer, t.as_ref()))
        .collect();
    let present: Vec<f64> = values.iter().flatten().copied().collect();
    LanguageTpc {
        language: language.to_string(),
        rows: values.len(),
        skipped: values.len() - present.len(),
        summary: summarize(&present),
        histogram: Histogram::new(&present, TPC_HISTOGRAM_BINS, 1.0),
        values,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairMean {
    pub lang_a: String,
    pub lang_b: String,
    #[serde(serialize_with = "sig9")]
    pub mean: f64,
    /// Samples where both sides are non-empty.
    pub samples: usize,
}

/// Mean similarity for every unordered pair of distinct languages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityReport {
    pub scheme: String,
    pub languages: Vec<String>,
    pub sample_count: usize,
    pub params: AlignmentParams,
    pub pairs: Vec<PairMean>,
}

impl SimilarityReport {
    /// Mean similarity of a pair in either order.
    pub fn mean(&self, a: &str, b: &str) -> Option<f64> {
        self.pairs
            .iter()
            .find(|p| (p.lang_a == a && p.lang_b == b) || (p.lang_a == b && p.lang_b == a))
            .map(|p| p.mean)
    }
}

/// Aligns every pair of translations in `corpus` and averages the
/// similarities per language pair.
pub fn pair_report(
    corpus: &ParallelCorpus,
    tokenizer: &dyn Tokenize,
    params: &AlignmentParams,
) -> Result<SimilarityReport, MetricsError> {
    params.validate()?;
    if corpus.is_empty() {
        return Err(MetricsError::EmptyCorpus);
    }
    let langs = corpus.languages();
    if langs.len() < 2 {
        return Err(MetricsError::TooFewLanguages(langs.len()));
    }
    let encoded: Vec<Vec<Vec<u32>>> = corpus
        .rows()
        .par_iter()
        .map(|row| row.iter().map(|t| tokenizer.encode(t).ids).collect())
        .collect();

    let pair_index: Vec<(usize, usize)> = (0..langs.len())
        .flat_map(|i| (i + 1..langs.len()).map(move |j| (i, j)))
        .collect();
    // per row, one similarity per pair
    let per_row: Vec<Vec<Option<f64>>> = encoded
        .par_iter()
        .map(|row| {
            pair_index
                .iter()
                .map(|&(i, j)| similarity(&row[i], &row[j], params).ok())
                .collect()
        })
        .collect();

    let mut pairs = Vec::with_capacity(pair_index.len());
    for (k, &(i, j)) in pair_index.iter().enumerate() {
        let (mut sum, mut n) = (0.0, 0usize);
        for v in per_row.iter().filter_map(|r| r[k]) {
            sum += v;
            n += 1;
        }
        if n == 0 {
            return Err(MetricsError::NoValidSamples(
                langs[i].clone(),
                langs[j].clone(),
            ));
        }
        pairs.push(PairMean {
            lang_a: langs[i].clone(),
            lang_b: langs[j].clone(),
            mean: sum / n as f64,
            samples: n,
        });
    }
    Ok(SimilarityReport {
        scheme: tokenizer.scheme().to_string(),
        languages: langs.to_vec(),
        sample_count: corpus.len(),
        params: *params,
        pairs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDiff {
    pub lang_a: String,
    pub lang_b: String,
    #[serde(serialize_with = "sig9")]
    pub candidate: f64,
    #[serde(serialize_with = "sig9")]
    pub baseline: f64,
    /// `candidate - baseline`.
    #[serde(serialize_with = "sig9")]
    pub diff: f64,
}

/// Candidate pair means regressed on baseline pair means.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub candidate_scheme: String,
    pub baseline_scheme: String,
    pub pairs: usize,
    #[serde(flatten)]
    pub fit: LinearFit,
    pub diffs: Vec<PairDiff>,
}

fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Fits `candidate = slope * baseline + intercept` over the shared language
/// pairs and lists per-pair differences in the candidate's pair order.
pub fn compare_reports(
    candidate: &SimilarityReport,
    baseline: &SimilarityReport,
) -> Result<Comparison, MetricsError> {
    let base: BTreeMap<(String, String), f64> = baseline
        .pairs
        .iter()
        .map(|p| (pair_key(&p.lang_a, &p.lang_b), p.mean))
        .collect();
    if base.len() != candidate.pairs.len() || base.len() != baseline.pairs.len() {
        return Err(MetricsError::PairMismatch(format!(
            "{} candidate pairs vs {} baseline pairs",
            candidate.pairs.len(),
            baseline.pairs.len()
        )));
    }
    let mut diffs = Vec::with_capacity(candidate.pairs.len());
    for p in &candidate.pairs {
        let b = *base.get(&pair_key(&p.lang_a, &p.lang_b)).ok_or_else(|| {
            MetricsError::PairMismatch(format!("{}-{} missing from baseline", p.lang_a, p.lang_b))
        })?;
        diffs.push(PairDiff {
            lang_a: p.lang_a.clone(),
            lang_b: p.lang_b.clone(),
            candidate: p.mean,
            baseline: b,
            diff: p.mean - b,
        });
    }
    let x: Vec<f64> = diffs.iter().map(|d| d.baseline).collect();
    let y: Vec<f64> = diffs.iter().map(|d| d.candidate).collect();
    Ok(Comparison {
        candidate_scheme: candidate.scheme.clone(),
        baseline_scheme: baseline.scheme.clone(),
        pairs: diffs.len(),
        fit: linear_fit(&x, &y),
        diffs,
    })
}
