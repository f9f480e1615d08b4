//! Alphabet classes that drive syllable segmentation.
//!
//! A [`PhonologyConfig`] holds four sets:
//!
//! * `vowels`: single characters that can fill a syllable nucleus.
//! * `digraphs`: two-letter consonant spellings read as a single onset (`ng`, `ny`, ...).
//! * `medials`: semivowels and liquids that may join a preceding consonant into a
//!   medial cluster (`tr`, `pl`, `kw`, ...).
//! * `special_codas`: consonant strings that attach to the preceding nucleus while
//!   scanning, mirroring the dedicated coda diacritics of the traditional scripts.
//!
//! Every alphabetic character that is not a vowel is a consonant.
//!
//! The plain-text format read by [`PhonologyConfig::parse`] has one section per set:
//!
//! ```text
//! # comment
//! [vowels]
//! a e i o u
//! [digraphs]
//! ng ny kh sy th dh
//! [medials]
//! r l w y
//! [codas]
//! ng h r l
//! ```

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PhonologyError {
    #[error("line {line}: unknown section [{name}]")]
    UnknownSection { line: usize, name: String },
    #[error("line {line}: entry outside of any section")]
    EntryOutsideSection { line: usize },
    #[error("line {line}: missing closing bracket in section header")]
    MalformedHeader { line: usize },
    #[error("vowel entry {0:?} must be a single alphabetic character")]
    InvalidVowel(String),
    #[error("digraph {0:?} must be exactly two alphabetic non-vowel characters")]
    InvalidDigraph(String),
    #[error("medial {0:?} must be a single alphabetic non-vowel character")]
    InvalidMedial(String),
    #[error("coda {0:?} must be a non-empty string of alphabetic non-vowel characters")]
    InvalidCoda(String),
    #[error("the vowel set is empty")]
    NoVowels,
}

/// The vowel, digraph, medial and coda sets used by the segmenter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhonologyConfig {
    vowels: BTreeSet<char>,
    digraphs: BTreeSet<String>,
    medials: BTreeSet<char>,
    special_codas: BTreeSet<String>,
    digraph_pairs: HashSet<(char, char)>,
    // longest first, so the first acceptable match is the longest one
    codas_by_len: Vec<Vec<char>>,
}

const DEFAULT_VOWELS: &[char] = &[
    'a', 'e', 'i', 'o', 'u', 'á', 'à', 'â', 'ä', 'é', 'è', 'ê', 'ë', 'í', 'ì', 'î', 'ï', 'ó', 'ò',
    'ô', 'ö', 'ú', 'ù', 'û', 'ü',
];
const DEFAULT_DIGRAPHS: &[&str] = &["ng", "ny", "kh", "sy", "th", "dh"];
const DEFAULT_MEDIALS: &[char] = &['r', 'l', 'w', 'y'];
const DEFAULT_CODAS: &[&str] = &["ng", "h", "r", "l"];

impl Default for PhonologyConfig {
    /// Latin-script Indonesian defaults.
    fn default() -> Self {
        Self::new(
            DEFAULT_VOWELS.iter().copied(),
            DEFAULT_DIGRAPHS.iter().map(|s| s.to_string()),
            DEFAULT_MEDIALS.iter().copied(),
            DEFAULT_CODAS.iter().map(|s| s.to_string()),
        )
        .expect("default phonology is valid")
    }
}

impl PhonologyConfig {
    pub fn new(
        vowels: impl IntoIterator<Item = char>,
        digraphs: impl IntoIterator<Item = String>,
        medials: impl IntoIterator<Item = char>,
        special_codas: impl IntoIterator<Item = String>,
    ) -> Result<Self, PhonologyError> {
        let vowels: BTreeSet<char> = vowels.into_iter().collect();
        if vowels.is_empty() {
            return Err(PhonologyError::NoVowels);
        }
        if let Some(v) = vowels.iter().find(|c| !c.is_alphabetic()) {
            return Err(PhonologyError::InvalidVowel(v.to_string()));
        }
        let is_consonant = |c: char| c.is_alphabetic() && !vowels.contains(&c);

        let digraphs: BTreeSet<String> = digraphs.into_iter().collect();
        for d in &digraphs {
            if d.chars().count() != 2 || !d.chars().all(is_consonant) {
                return Err(PhonologyError::InvalidDigraph(d.clone()));
            }
        }
        let medials: BTreeSet<char> = medials.into_iter().collect();
        if let Some(m) = medials.iter().find(|&&m| !is_consonant(m)) {
            return Err(PhonologyError::InvalidMedial(m.to_string()));
        }
        let special_codas: BTreeSet<String> = special_codas.into_iter().collect();
        for h in &special_codas {
            if h.is_empty() || !h.chars().all(is_consonant) {
                return Err(PhonologyError::InvalidCoda(h.clone()));
            }
        }

        let digraph_pairs = digraphs
            .iter()
            .map(|d| {
                let mut it = d.chars();
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect();
        let mut codas_by_len: Vec<Vec<char>> =
            special_codas.iter().map(|h| h.chars().collect()).collect();
        codas_by_len.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));

        Ok(Self {
            vowels,
            digraphs,
            medials,
            special_codas,
            digraph_pairs,
            codas_by_len,
        })
    }

    /// Parses the sectioned plain-text format described in the module docs.
    ///
    /// Sections that are absent fall back to empty sets, except `[vowels]`, which
    /// must be present and non-empty.
    pub fn parse(text: &str) -> Result<Self, PhonologyError> {
        #[derive(Clone, Copy)]
        enum Section {
            Vowels,
            Digraphs,
            Medials,
            Codas,
        }
        let mut section = None;
        let mut vowels = Vec::new();
        let mut digraphs = Vec::new();
        let mut medials = Vec::new();
        let mut codas = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or(PhonologyError::MalformedHeader { line: line_no })?
                    .trim()
                    .to_lowercase();
                section = Some(match name.as_str() {
                    "vowels" => Section::Vowels,
                    "digraphs" => Section::Digraphs,
                    "medials" => Section::Medials,
                    "codas" | "special_codas" => Section::Codas,
                    _ => {
                        return Err(PhonologyError::UnknownSection {
                            line: line_no,
                            name,
                        })
                    }
                });
                continue;
            }
            let section = section.ok_or(PhonologyError::EntryOutsideSection { line: line_no })?;
            for entry in line.split_whitespace() {
                match section {
                    Section::Vowels => {
                        let mut chars = entry.chars();
                        match (chars.next(), chars.next()) {
                            (Some(c), None) => vowels.push(c),
                            _ => return Err(PhonologyError::InvalidVowel(entry.to_string())),
                        }
                    }
                    Section::Medials => {
                        let mut chars = entry.chars();
                        match (chars.next(), chars.next()) {
                            (Some(c), None) => medials.push(c),
                            _ => return Err(PhonologyError::InvalidMedial(entry.to_string())),
                        }
                    }
                    Section::Digraphs => digraphs.push(entry.to_string()),
                    Section::Codas => codas.push(entry.to_string()),
                }
            }
        }
        Self::new(vowels, digraphs, medials, codas)
    }

    pub fn vowels(&self) -> &BTreeSet<char> {
        &self.vowels
    }

    pub fn digraphs(&self) -> &BTreeSet<String> {
        &self.digraphs
    }

    pub fn medials(&self) -> &BTreeSet<char> {
        &self.medials
    }

    pub fn special_codas(&self) -> &BTreeSet<String> {
        &self.special_codas
    }

    #[inline]
    pub fn is_vowel(&self, c: char) -> bool {
        self.vowels.contains(&c)
    }

    #[inline]
    pub fn is_consonant(&self, c: char) -> bool {
        c.is_alphabetic() && !self.vowels.contains(&c)
    }

    #[inline]
    pub fn is_medial(&self, c: char) -> bool {
        self.medials.contains(&c)
    }

    #[inline]
    pub fn is_digraph(&self, first: char, second: char) -> bool {
        self.digraph_pairs.contains(&(first, second))
    }

    pub fn is_special_coda(&self, s: &[char]) -> bool {
        self.codas_by_len.iter().any(|h| h.as_slice() == s)
    }

    pub(crate) fn codas_longest_first(&self) -> impl Iterator<Item = &[char]> {
        self.codas_by_len.iter().map(Vec::as_slice)
    }

    /// Canonical text form: sorted entries, fixed section order.
    pub fn to_canonical_string(&self) -> String {
        fn join<I: IntoIterator<Item = String>>(it: I) -> String {
            it.into_iter().collect::<Vec<_>>().join(" ")
        }
        format!(
            "[vowels]\n{}\n[digraphs]\n{}\n[medials]\n{}\n[codas]\n{}\n",
            join(self.vowels.iter().map(char::to_string)),
            join(self.digraphs.iter().cloned()),
            join(self.medials.iter().map(char::to_string)),
            join(self.special_codas.iter().cloned()),
        )
    }

    /// SHA-256 of the canonical form, hex encoded.
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(self.to_canonical_string().as_bytes()))
    }
}

impl FromStr for PhonologyConfig {
    type Err = PhonologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for PhonologyConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}
