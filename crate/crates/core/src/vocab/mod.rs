//! Syllable census and vocabulary construction.

mod power_law;

pub use power_law::{fit_power_law, fit_power_law_counts, PowerLawError, PowerLawFit};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::phonology::PhonologyConfig;
use crate::segmentation::segment;

/// Token id reserved for characters the vocabulary cannot represent.
pub const UNK_ID: u32 = 0;
/// Display form of [`UNK_ID`]. Never stored in vocabulary files.
pub const UNK_TOKEN: &str = "<unk>";

#[derive(Debug, thiserror::Error)]
pub enum VocabError {
    #[error("target size {target} is smaller than the {base} base symbols")]
    TargetTooSmall { target: usize, base: usize },
    #[error("vocabulary line {line}: empty token")]
    EmptyToken { line: usize },
    #[error("vocabulary line {line}: duplicate token {token:?}")]
    DuplicateToken { line: usize, token: String },
    #[error("vocabulary line {line}: {token:?} is reserved")]
    ReservedToken { line: usize, token: String },
    #[error("vocabulary has more entries than fit in a u32 id")]
    TooLarge,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Syllable frequencies over a word list.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyllableCensus {
    pub counts: BTreeMap<String, u64>,
    pub total: u64,
    /// Words that segmented into exactly one syllable.
    pub monosyllables: BTreeSet<String>,
    pub words: u64,
    /// Words rejected because they contain a character that is neither a vowel
    /// nor a consonant.
    pub skipped: u64,
}

impl SyllableCensus {
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, syllable: &str) -> u64 {
        self.counts.get(syllable).copied().unwrap_or(0)
    }

    /// Every character that occurs in a counted syllable.
    pub fn base_characters(&self) -> BTreeSet<char> {
        self.counts.keys().flat_map(|s| s.chars()).collect()
    }

    fn add_word(&mut self, word: &str, cfg: &PhonologyConfig) {
        match segment(word, cfg) {
            Ok(segs) => {
                self.words += 1;
                if segs.len() == 1 {
                    self.monosyllables.insert(word.to_string());
                }
                for s in segs {
                    *self.counts.entry(s.surface()).or_insert(0) += 1;
                    self.total += 1;
                }
            }
            Err(_) => self.skipped += 1,
        }
    }
}

/// Counts syllables over `words`. Words are expected to be normalized already
/// (see [`crate::corpus::read_wordlist`]); empty words are ignored.
pub fn census<I, S>(words: I, cfg: &PhonologyConfig) -> SyllableCensus
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut c = SyllableCensus::default();
    for w in words {
        let w = w.as_ref();
        if !w.is_empty() {
            c.add_word(w, cfg);
        }
    }
    c
}

/// Ordered token inventory. Id 0 is always [`UNK_TOKEN`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    tokens: Vec<String>,
    index: HashMap<String, u32>,
    base_symbol_count: usize,
}

impl Vocabulary {
    /// Builds a vocabulary from tokens in id order, starting at id 1.
    pub fn from_tokens<I, S>(tokens: I) -> Result<Self, VocabError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut vocab = Self {
            tokens: vec![UNK_TOKEN.to_string()],
            index: HashMap::new(),
            base_symbol_count: 0,
        };
        for (i, tok) in tokens.into_iter().enumerate() {
            vocab.push(tok.into(), i + 1)?;
        }
        Ok(vocab)
    }

    fn push(&mut self, token: String, line: usize) -> Result<(), VocabError> {
        if token.is_empty() {
            return Err(VocabError::EmptyToken { line });
        }
        if token == UNK_TOKEN {
            return Err(VocabError::ReservedToken { line, token });
        }
        if self.index.contains_key(&token) {
            return Err(VocabError::DuplicateToken { line, token });
        }
        let id = u32::try_from(self.tokens.len()).map_err(|_| VocabError::TooLarge)?;
        if token.chars().nth(1).is_none() {
            self.base_symbol_count += 1;
        }
        self.index.insert(token.clone(), id);
        self.tokens.push(token);
        Ok(())
    }

    /// Number of ids, including the reserved unknown token.
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    /// True when the vocabulary holds nothing but the unknown token.
    pub fn is_empty(&self) -> bool {
        self.tokens.len() == 1
    }

    /// Single-character entries.
    pub fn base_symbol_count(&self) -> usize {
        self.base_symbol_count
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.index.get(token).copied()
    }

    pub fn token(&self, id: u32) -> Option<&str> {
        self.tokens.get(id as usize).map(String::as_str)
    }

    /// Tokens in id order, excluding the unknown token.
    pub fn tokens(&self) -> &[String] {
        &self.tokens[1..]
    }

    /// Writes one token per line; line `n` (1-based) holds id `n`.
    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        for t in self.tokens() {
            writeln!(w, "{t}")?;
        }
        w.flush()
    }

    /// Reads the format produced by [`Vocabulary::write_to`]. A trailing `\r` is
    /// stripped from each line; all other characters, including spaces, are
    /// part of the token.
    pub fn read_from<R: BufRead>(r: R) -> Result<Self, VocabError> {
        let mut vocab = Self::from_tokens(std::iter::empty::<String>())?;
        for (idx, line) in r.lines().enumerate() {
            let mut line = line?;
            if line.ends_with('\r') {
                line.pop();
            }
            vocab.push(line, idx + 1)?;
        }
        Ok(vocab)
    }

    /// SHA-256 over the serialized token list, hex encoded.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        for t in self.tokens() {
            h.update(t.as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }
}

/// Builds a vocabulary of at most `target_size` tokens (not counting the
/// unknown token).
///
/// Tokens are taken from one ranked list, truncated at `target_size`:
/// every base character of the census first (sorted), then monosyllabic
/// words, then the remaining syllables. Within the last two groups, higher
/// counts come first and ties are broken by the string. Growing `target_size`
/// therefore only ever appends tokens.
pub fn build_vocabulary(
    census: &SyllableCensus,
    target_size: usize,
) -> Result<Vocabulary, VocabError> {
    build_vocabulary_with(census, target_size, std::iter::empty())
}

/// Like [`build_vocabulary`], with additional base symbols (for example
/// whitespace and punctuation) that should never fall back to the unknown token.
pub fn build_vocabulary_with(
    census: &SyllableCensus,
    target_size: usize,
    extra_symbols: impl IntoIterator<Item = char>,
) -> Result<Vocabulary, VocabError> {
    let mut base = census.base_characters();
    base.extend(extra_symbols);
    if target_size == 0 || base.len() > target_size {
        return Err(VocabError::TargetTooSmall {
            target: target_size,
            base: base.len(),
        });
    }

    let by_count_then_text =
        |a: &&String, b: &&String| census.count(b).cmp(&census.count(a)).then_with(|| a.cmp(b));
    let mut mono: Vec<&String> = census.monosyllables.iter().collect();
    mono.sort_by(by_count_then_text);
    let mut rest: Vec<&String> = census.counts.keys().collect();
    rest.sort_by(by_count_then_text);

    let mut selected: Vec<String> = base.iter().map(char::to_string).collect();
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for cand in mono.into_iter().chain(rest) {
        if selected.len() >= target_size {
            break;
        }
        if cand.chars().nth(1).is_none() || !seen.insert(cand.as_str()) {
            continue;
        }
        selected.push(cand.clone());
    }
    Vocabulary::from_tokens(selected)
}

/// Printable ASCII except uppercase letters: space, digits, punctuation and `a` to `z`.
pub fn ascii_symbols() -> impl Iterator<Item = char> {
    (' '..='~').filter(|c| !c.is_ascii_uppercase())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> PhonologyConfig {
        PhonologyConfig::default()
    }

    #[test]
    fn census_counts_syllables() {
        let c = census(["makan", "makan"], &cfg());
        assert_eq!(
            c.counts,
            BTreeMap::from([("ma".into(), 2), ("kan".into(), 2)])
        );
        assert_eq!(c.total, 4);
        assert_eq!(c.words, 2);
    }

    #[test]
    fn census_empty_and_single() {
        let empty = census(Vec::<String>::new(), &cfg());
        assert_eq!(empty.total, 0);
        assert!(empty.counts.is_empty());

        let a = census(["a"], &cfg());
        assert_eq!(a.counts, BTreeMap::from([("a".into(), 1)]));
        assert!(a.monosyllables.contains("a"));
    }

    #[test]
    fn census_skips_invalid_words() {
        let c = census(["abal-abal", "dan", "x2"], &cfg());
        assert_eq!(c.skipped, 2);
        assert_eq!(c.words, 1);
        assert!(c.monosyllables.contains("dan"));
        assert_eq!(c.total, c.counts.values().sum::<u64>());
    }

    fn synthetic_census() -> SyllableCensus {
        SyllableCensus {
            counts: BTreeMap::from([("ma".into(), 5), ("kan".into(), 3), ("tra".into(), 1)]),
            total: 9,
            ..Default::default()
        }
    }

    #[test]
    fn build_takes_most_frequent_syllables() {
        let v = build_vocabulary(&synthetic_census(), 8).unwrap();
        assert_eq!(v.tokens(), ["a", "k", "m", "n", "r", "t", "ma", "kan"]);
        assert_eq!(v.base_symbol_count(), 6);
        assert_eq!(v.len(), 9);
        assert_eq!(v.id("a"), Some(1));
        assert_eq!(v.token(UNK_ID), Some(UNK_TOKEN));
    }

    #[test]
    fn build_at_base_size_is_only_base() {
        let v = build_vocabulary(&synthetic_census(), 6).unwrap();
        assert_eq!(v.tokens().len(), 6);
        assert!(v.tokens().iter().all(|t| t.chars().count() == 1));
    }

    #[test]
    fn build_rejects_small_targets() {
        assert!(matches!(
            build_vocabulary(&synthetic_census(), 5),
            Err(VocabError::TargetTooSmall { target: 5, base: 6 })
        ));
        assert!(matches!(
            build_vocabulary(&SyllableCensus::default(), 0),
            Err(VocabError::TargetTooSmall { target: 0, .. })
        ));
    }

    #[test]
    fn monosyllables_rank_before_frequent_syllables() {
        let mut c = synthetic_census();
        c.counts.insert("dan".into(), 1);
        c.monosyllables.insert("dan".into());
        let v = build_vocabulary(&c, 9).unwrap();
        // base chars: a d k m n r t
        assert_eq!(&v.tokens()[7..], ["dan", "ma"]);
    }

    #[test]
    fn ties_break_lexicographically() {
        let c = SyllableCensus {
            counts: BTreeMap::from([("zu".into(), 2), ("ba".into(), 2), ("ka".into(), 2)]),
            total: 6,
            ..Default::default()
        };
        let v = build_vocabulary(&c, 7).unwrap();
        assert_eq!(&v.tokens()[5..], ["ba", "ka"]);
    }

    #[test]
    fn extra_symbols_are_base() {
        let v = build_vocabulary_with(&synthetic_census(), 100, ascii_symbols()).unwrap();
        assert!(v.id(" ").is_some() && v.id(".").is_some() && v.id("z").is_some());
        assert!(v.id("A").is_none());
    }

    #[test]
    fn file_roundtrip_keeps_spaces() {
        let v = Vocabulary::from_tokens([" ", "a", "ma"]).unwrap();
        let mut buf = Vec::new();
        v.write_to(&mut buf).unwrap();
        assert_eq!(buf, b" \na\nma\n");
        let back = Vocabulary::read_from(&buf[..]).unwrap();
        assert_eq!(back, v);
        assert_eq!(back.fingerprint(), v.fingerprint());
    }

    #[test]
    fn read_rejects_duplicates_and_blanks() {
        assert!(matches!(
            Vocabulary::read_from(&b"a\nb\na\n"[..]),
            Err(VocabError::DuplicateToken { line: 3, .. })
        ));
        assert!(matches!(
            Vocabulary::read_from(&b"a\n\nb\n"[..]),
            Err(VocabError::EmptyToken { line: 2 })
        ));
        assert!(matches!(
            Vocabulary::read_from(&b"<unk>\n"[..]),
            Err(VocabError::ReservedToken { line: 1, .. })
        ));
    }
}
