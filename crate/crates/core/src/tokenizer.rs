//! Syllable tokenization with character fallback.

use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use crate::phonology::PhonologyConfig;
use crate::segmentation::segment;
use crate::vocab::{Vocabulary, UNK_ID};

/// Decoded form of the unknown token.
pub const UNK_CHAR: char = '\u{FFFD}';

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TokenizerError {
    #[error("token id {id} is outside the vocabulary (size {size})")]
    InvalidTokenId { id: u32, size: usize },
}

/// Encoded text: ids with the text piece each id covers.
///
/// `surface` always concatenates back to the normalized input, including for
/// pieces mapped to the unknown id.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenSequence {
    pub ids: Vec<u32>,
    pub surface: Vec<String>,
}

impl TokenSequence {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn push(&mut self, id: u32, piece: impl Into<String>) {
        self.ids.push(id);
        self.surface.push(piece.into());
    }

    pub fn text(&self) -> String {
        self.surface.concat()
    }
}

/// A text-to-tokens scheme that can be evaluated side by side with others.
pub trait Tokenize: Send + Sync {
    /// Short name used in reports, e.g. `"syllable"`.
    fn scheme(&self) -> &str;

    /// The text the tokenizer actually sees. TPC divides by its length.
    fn normalize<'a>(&self, text: &'a str) -> Cow<'a, str>;

    fn encode(&self, text: &str) -> TokenSequence;
}

/// Segments alphabetic runs into syllables and looks each syllable up in the
/// vocabulary, spelling out unknown syllables character by character.
#[derive(Debug, Clone)]
pub struct SyllableTokenizer {
    vocab: Vocabulary,
    phonology: PhonologyConfig,
    lowercase: bool,
}

impl SyllableTokenizer {
    pub fn new(vocab: Vocabulary, phonology: PhonologyConfig) -> Self {
        Self {
            vocab,
            phonology,
            lowercase: true,
        }
    }

    /// Disables lowercasing. Uppercase letters then only match
    /// vocabulary entries that contain them.
    pub fn with_lowercase(mut self, lowercase: bool) -> Self {
        self.lowercase = lowercase;
        self
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn phonology(&self) -> &PhonologyConfig {
        &self.phonology
    }

    fn push_char(&self, out: &mut TokenSequence, c: char, buf: &mut [u8; 4]) {
        let s: &str = c.encode_utf8(buf);
        out.push(self.vocab.id(s).unwrap_or(UNK_ID), s);
    }

    fn encode_run(&self, run: &str, out: &mut TokenSequence) {
        let mut buf = [0u8; 4];
        let segments = match segment(run, &self.phonology) {
            Ok(s) => s,
            Err(_) => {
                run.chars().for_each(|c| self.push_char(out, c, &mut buf));
                return;
            }
        };
        let mut piece = String::new();
        for seg in segments {
            piece.clear();
            seg.write_surface(&mut piece);
            match self.vocab.id(&piece) {
                Some(id) => out.push(id, piece.as_str()),
                None => piece.chars().for_each(|c| self.push_char(out, c, &mut buf)),
            }
        }
    }

    pub fn decode(&self, ids: &[u32]) -> Result<String, TokenizerError> {
        let mut out = String::new();
        for &id in ids {
            if id == UNK_ID {
                out.push(UNK_CHAR);
                continue;
            }
            let tok = self.vocab.token(id).ok_or(TokenizerError::InvalidTokenId {
                id,
                size: self.vocab.len(),
            })?;
            out.push_str(tok);
        }
        Ok(out)
    }
}

impl Tokenize for SyllableTokenizer {
    fn scheme(&self) -> &str {
        "syllable"
    }

    fn normalize<'a>(&self, text: &'a str) -> Cow<'a, str> {
        if self.lowercase && text.chars().any(char::is_uppercase) {
            Cow::Owned(text.to_lowercase())
        } else {
            Cow::Borrowed(text)
        }
    }

    fn encode(&self, text: &str) -> TokenSequence {
        let text = self.normalize(text);
        let mut out = TokenSequence::default();
        let mut buf = [0u8; 4];
        let mut run_start = None;
        for (pos, c) in text.char_indices() {
            if c.is_alphabetic() {
                run_start.get_or_insert(pos);
                continue;
            }
            if let Some(start) = run_start.take() {
                self.encode_run(&text[start..pos], &mut out);
            }
            self.push_char(&mut out, c, &mut buf);
        }
        if let Some(start) = run_start {
            self.encode_run(&text[start..], &mut out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocab::{ascii_symbols, build_vocabulary_with, census};

    fn tokenizer(extra: &[&str]) -> SyllableTokenizer {
        let cfg = PhonologyConfig::default();
        let mut tokens: Vec<String> = ascii_symbols().map(String::from).collect();
        tokens.extend(extra.iter().map(|s| s.to_string()));
        SyllableTokenizer::new(Vocabulary::from_tokens(tokens).unwrap(), cfg)
    }

    #[test]
    fn known_syllables_become_single_tokens() {
        let t = tokenizer(&["ma", "kan"]);
        let seq = t.encode("makan");
        assert_eq!(seq.surface, ["ma", "kan"]);
        assert_eq!(
            seq.ids,
            [t.vocab().id("ma").unwrap(), t.vocab().id("kan").unwrap()]
        );
    }

    #[test]
    fn unknown_syllables_fall_back_to_characters() {
        let t = tokenizer(&[]);
        assert_eq!(t.encode("makan").surface, ["m", "a", "k", "a", "n"]);
    }

    #[test]
    fn empty_text() {
        let t = tokenizer(&[]);
        assert!(t.encode("").is_empty());
        assert_eq!(t.decode(&[]).unwrap(), "");
    }

    #[test]
    fn punctuation_and_spaces_are_own_tokens() {
        let t = tokenizer(&["sa", "ya", "ma", "kan"]);
        let seq = t.encode("Saya makan, 2x!");
        assert_eq!(
            seq.surface,
            ["sa", "ya", " ", "ma", "kan", ",", " ", "2", "x", "!"]
        );
        assert_eq!(t.decode(&seq.ids).unwrap(), "saya makan, 2x!");
    }

    #[test]
    fn unknown_characters_map_to_unk_but_keep_surface() {
        let t = tokenizer(&[]);
        let seq = t.encode("a€b");
        assert_eq!(seq.ids[1], UNK_ID);
        assert_eq!(seq.text(), "a€b");
        assert_eq!(t.decode(&seq.ids).unwrap(), "a\u{FFFD}b");
    }

    #[test]
    fn non_latin_letters_fall_back() {
        let t = tokenizer(&[]);
        let seq = t.encode("ꦲꦏ꧀");
        assert_eq!(seq.text(), "ꦲꦏ꧀");
        assert!(seq.ids.iter().all(|&id| id == UNK_ID));
    }

    #[test]
    fn lowercase_can_be_disabled() {
        let t = tokenizer(&["ma"]).with_lowercase(false);
        let seq = t.encode("MAma ma");
        assert_eq!(seq.text(), "MAma ma");
        // "MAma" is one unit (uppercase letters are not vowels) and spells out
        assert_eq!(seq.surface, ["M", "A", "m", "a", " ", "ma"]);
        assert_eq!(&seq.ids[..2], [UNK_ID, UNK_ID]);
    }

    #[test]
    fn decode_rejects_out_of_range_ids() {
        let t = tokenizer(&[]);
        let size = t.vocab().len();
        assert_eq!(
            t.decode(&[size as u32]),
            Err(TokenizerError::InvalidTokenId {
                id: size as u32,
                size
            })
        );
    }

    #[test]
    fn trained_vocab_roundtrip() {
        let cfg = PhonologyConfig::default();
        let words = ["makan", "minum", "struktur", "bangun", "nyanyi"];
        let c = census(words, &cfg);
        let v = build_vocabulary_with(&c, 200, ascii_symbols()).unwrap();
        let t = SyllableTokenizer::new(v, cfg);
        let text = "Nyanyi, makan & minum: struktur bangunan!";
        let seq = t.encode(text);
        assert_eq!(t.decode(&seq.ids).unwrap(), text.to_lowercase());
        assert!(seq.len() < text.chars().count());
    }
}
