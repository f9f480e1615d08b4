//! Inputs shared by the benchmarks, loaded from the bundled data directory.

use std::path::{Path, PathBuf};

use sukukata::corpus::{load_lines, load_wordlist};
use sukukata::vocab::{ascii_symbols, build_vocabulary_with, census};
use sukukata::{BpeModel, PhonologyConfig, SyllableTokenizer};

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn demo_words() -> Vec<String> {
    load_wordlist(&data_dir().join("wordlists/id_demo.txt")).expect("bundled word list")
}

pub fn heldout_sentences(lang: &str) -> Vec<String> {
    load_lines(&data_dir().join(format!("sentences/{lang}_heldout.txt")))
        .expect("bundled sentences")
}

/// Syllable tokenizer trained on the demo word list.
pub fn demo_tokenizer() -> SyllableTokenizer {
    let cfg = PhonologyConfig::default();
    let counts = census(demo_words(), &cfg);
    let vocab = build_vocabulary_with(&counts, 2843, ascii_symbols()).expect("demo vocabulary");
    SyllableTokenizer::new(vocab, cfg)
}

pub fn gpt2() -> BpeModel {
    let dir = data_dir().join("gpt2");
    BpeModel::load(dir.join("encoder.json"), dir.join("vocab.bpe")).expect("bundled GPT-2 files")
}
