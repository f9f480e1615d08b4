//! Syllable tokenization for Latin-script Austronesian text.
//!
//! Words are split into syllables with rules taken from Brahmic abugida
//! scripts ([`segmentation`]), a frequency-ranked syllable vocabulary is
//! trained from a word list ([`vocab`]), and text is tokenized with
//! per-character fallback ([`tokenizer`]). [`metrics`] scores tokenizers on
//! parallel corpora ([`corpus`]) against a byte-level BPE baseline ([`bpe`]).
//!
//! ```
//! use sukukata::vocab::{ascii_symbols, build_vocabulary_with, census};
//! use sukukata::{syllables, PhonologyConfig, SyllableTokenizer, Tokenize};
//!
//! let cfg = PhonologyConfig::default();
//! assert_eq!(syllables("struktur", &cfg).unwrap(), ["struk", "tur"]);
//!
//! let counts = census(["makan", "minum", "bantu"], &cfg);
//! let vocab = build_vocabulary_with(&counts, 2843, ascii_symbols()).unwrap();
//! let tok = SyllableTokenizer::new(vocab, cfg);
//! assert_eq!(tok.encode("Makan!").surface, ["ma", "kan", "!"]);
//! ```

pub mod bpe;
pub mod corpus;
pub mod metrics;
pub mod numfmt;
pub mod phonology;
pub mod segmentation;
pub mod tokenizer;
pub mod vocab;

pub use bpe::{BpeError, BpeModel};
pub use corpus::{CorpusError, LoadOptions, ParallelCorpus};
pub use metrics::{AlignmentParams, Comparison, MetricsError, SimilarityReport, TpcReport};
pub use phonology::{PhonologyConfig, PhonologyError};
pub use segmentation::{segment, syllables, InvalidCharacter, Segment};
pub use tokenizer::{SyllableTokenizer, TokenSequence, Tokenize, TokenizerError};
pub use vocab::{
    build_vocabulary, build_vocabulary_with, census, fit_power_law, PowerLawFit, SyllableCensus,
    VocabError, Vocabulary, UNK_ID,
};
