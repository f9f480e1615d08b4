//! Byte-level BPE in the GPT-2 file format, used as the comparison baseline.
//!
//! Text is split with the GPT-2 pre-tokenization pattern, each piece is mapped
//! to bytes and then to printable proxy characters, and adjacent symbols are
//! merged lowest-rank first until no ranked pair is left.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::Path;

use fancy_regex::Regex;

use crate::tokenizer::{TokenSequence, Tokenize};

/// GPT-2 pre-tokenization pattern.
pub const GPT2_PATTERN: &str =
    r"'s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+";

#[derive(Debug, thiserror::Error)]
pub enum BpeError {
    #[error("malformed vocabulary: {0}")]
    MalformedVocab(String),
    #[error("malformed merges at line {line}: {reason}")]
    MalformedMerges { line: usize, reason: String },
    #[error("inconsistent model: {0}")]
    InconsistentModel(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// The fixed byte -> printable character table used by GPT-2 vocabularies.
///
/// Printable Latin-1 bytes map to themselves; the remaining 68 bytes are moved
/// to U+0100 and up, in byte order.
pub fn bytes_to_unicode() -> [char; 256] {
    let printable = |b: u32| {
        (0x21..=0x7e).contains(&b) || (0xa1..=0xac).contains(&b) || (0xae..=0xff).contains(&b)
    };
    let mut table = ['\0'; 256];
    let mut next = 256u32;
    for b in 0..256u32 {
        table[b as usize] = if printable(b) {
            char::from_u32(b).unwrap()
        } else {
            let c = char::from_u32(next).unwrap();
            next += 1;
            c
        };
    }
    table
}

#[derive(Debug, Clone)]
pub struct BpeModel {
    vocab: HashMap<String, u32>,
    id_to_token: HashMap<u32, String>,
    merges: Vec<(String, String)>,
    // (left, right) -> (rank, merged id)
    pair_ranks: HashMap<(u32, u32), (u32, u32)>,
    byte_ids: [u32; 256],
    byte_encoder: [char; 256],
    byte_decoder: HashMap<char, u8>,
    pattern: Regex,
}

impl BpeModel {
    /// Validates a vocabulary and an ordered merge list (rank = position).
    pub fn from_parts(
        vocab: HashMap<String, u32>,
        merges: Vec<(String, String)>,
    ) -> Result<Self, BpeError> {
        let mut id_to_token = HashMap::with_capacity(vocab.len());
        for (tok, &id) in &vocab {
            if let Some(prev) = id_to_token.insert(id, tok.clone()) {
                return Err(BpeError::MalformedVocab(format!(
                    "id {id} assigned to both {prev:?} and {tok:?}"
                )));
            }
        }

        let byte_encoder = bytes_to_unicode();
        let mut byte_ids = [0u32; 256];
        let mut byte_decoder = HashMap::with_capacity(256);
        for (b, &c) in byte_encoder.iter().enumerate() {
            let s = c.to_string();
            byte_ids[b] = *vocab.get(&s).ok_or_else(|| {
                BpeError::InconsistentModel(format!(
                    "byte symbol {s:?} (byte {b}) missing from vocabulary"
                ))
            })?;
            byte_decoder.insert(c, b as u8);
        }

        let mut pair_ranks = HashMap::with_capacity(merges.len());
        for (rank, (left, right)) in merges.iter().enumerate() {
            let lookup = |s: &str| {
                vocab.get(s).copied().ok_or_else(|| {
                    BpeError::InconsistentModel(format!(
                        "merge {left:?} {right:?}: {s:?} missing from vocabulary"
                    ))
                })
            };
            let l = lookup(left)?;
            let r = lookup(right)?;
            let merged = lookup(&format!("{left}{right}"))?;
            pair_ranks.entry((l, r)).or_insert((rank as u32, merged));
        }

        Ok(Self {
            vocab,
            id_to_token,
            merges,
            pair_ranks,
            byte_ids,
            byte_encoder,
            byte_decoder,
            pattern: Regex::new(GPT2_PATTERN).expect("valid pattern"),
        })
    }

    /// Loads `encoder.json` / `vocab.json` style JSON and a `merges.txt` /
    /// `vocab.bpe` style merge list.
    pub fn from_readers<V: Read, M: BufRead>(vocab: V, merges: M) -> Result<Self, BpeError> {
        let raw: BTreeMap<String, serde_json::Value> =
            serde_json::from_reader(vocab).map_err(|e| BpeError::MalformedVocab(e.to_string()))?;
        let mut map = HashMap::with_capacity(raw.len());
        for (tok, v) in raw {
            let id = v
                .as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| {
                    BpeError::MalformedVocab(format!("id for {tok:?} is not a u32: {v}"))
                })?;
            map.insert(tok, id);
        }
        Self::from_parts(map, parse_merges(merges)?)
    }

    pub fn load(
        vocab_path: impl AsRef<Path>,
        merges_path: impl AsRef<Path>,
    ) -> Result<Self, BpeError> {
        let v = BufReader::new(File::open(vocab_path)?);
        let m = BufReader::new(File::open(merges_path)?);
        Self::from_readers(v, m)
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab.len()
    }

    pub fn merges(&self) -> &[(String, String)] {
        &self.merges
    }

    pub fn token_id(&self, token: &str) -> Option<u32> {
        self.vocab.get(token).copied()
    }

    /// Token ids only.
    pub fn encode_ids(&self, text: &str) -> Vec<u32> {
        let mut ids = Vec::with_capacity(text.len() / 3 + 1);
        self.for_each_piece(text, |piece| self.merge_piece(piece, &mut ids));
        ids
    }

    fn for_each_piece<'t>(&self, text: &'t str, mut f: impl FnMut(&'t str)) {
        let mut last = 0;
        for m in self.pattern.find_iter(text) {
            match m {
                Ok(m) => {
                    f(m.as_str());
                    last = m.end();
                }
                // backtrack limit exceeded: encode the remainder as one piece
                Err(_) => {
                    f(&text[last..]);
                    return;
                }
            }
        }
    }

    fn merge_piece(&self, piece: &str, out: &mut Vec<u32>) {
        let mut symbols: Vec<u32> = piece.bytes().map(|b| self.byte_ids[b as usize]).collect();
        while symbols.len() > 1 {
            let best = symbols
                .windows(2)
                .filter_map(|w| {
                    self.pair_ranks
                        .get(&(w[0], w[1]))
                        .map(|&(rank, merged)| (rank, w[0], w[1], merged))
                })
                .min_by_key(|&(rank, ..)| rank);
            let Some((_, left, right, merged)) = best else {
                break;
            };
            let mut next = Vec::with_capacity(symbols.len());
            let mut i = 0;
            while i < symbols.len() {
                if i + 1 < symbols.len() && symbols[i] == left && symbols[i + 1] == right {
                    next.push(merged);
                    i += 2;
                } else {
                    next.push(symbols[i]);
                    i += 1;
                }
            }
            symbols = next;
        }
        out.extend(symbols);
    }

    /// Proxy-character spelling of a token, as stored in the vocabulary file.
    pub fn token(&self, id: u32) -> Option<&str> {
        self.id_to_token.get(&id).map(String::as_str)
    }

    /// Maps ids back to text; byte sequences that are not valid UTF-8 are
    /// replaced with U+FFFD.
    pub fn decode(&self, ids: &[u32]) -> Option<String> {
        let mut bytes = Vec::new();
        for id in ids {
            for c in self.token(*id)?.chars() {
                bytes.push(*self.byte_decoder.get(&c)?);
            }
        }
        Some(String::from_utf8_lossy(&bytes).into_owned())
    }

    /// Proxy-character spelling of raw bytes.
    pub fn byte_proxy(&self, bytes: &[u8]) -> String {
        bytes
            .iter()
            .map(|&b| self.byte_encoder[b as usize])
            .collect()
    }
}

fn parse_merges<M: BufRead>(merges: M) -> Result<Vec<(String, String)>, BpeError> {
    let mut out = Vec::new();
    for (idx, line) in merges.lines().enumerate() {
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if (idx == 0 && line.starts_with("#version")) || line.is_empty() {
            continue;
        }
        let mut parts = line.split(' ');
        match (parts.next(), parts.next(), parts.next()) {
            (Some(l), Some(r), None) if !l.is_empty() && !r.is_empty() => {
                out.push((l.to_string(), r.to_string()))
            }
            _ => {
                return Err(BpeError::MalformedMerges {
                    line: idx + 1,
                    reason: format!("expected two space-separated symbols, got {line:?}"),
                })
            }
        }
    }
    Ok(out)
}

impl Tokenize for BpeModel {
    fn scheme(&self) -> &str {
        "bpe"
    }

    fn normalize<'a>(&self, text: &'a str) -> Cow<'a, str> {
        Cow::Borrowed(text)
    }

    /// Surface strings are the vocabulary spellings (`Ġ` for a leading space).
    fn encode(&self, text: &str) -> TokenSequence {
        let ids = self.encode_ids(text);
        let surface = ids
            .iter()
            .map(|id| self.id_to_token.get(id).cloned().unwrap_or_default())
            .collect();
        TokenSequence { ids, surface }
    }
}
