//! Syllable segmentation of Latin-alphabet words following abugida logic.
//!
//! [`segment`] composes three passes:
//!
//! 1. [`scan`] walks the word left to right and cuts it into candidate
//!    `(onset, nucleus, coda)` units, the way a reader would pick out base
//!    aksara with their vowel signs and coda diacritics.
//! 2. [`virama_pass`] walks backwards and folds every nucleus-less unit into the
//!    coda of the unit before it (the vowel killer).
//! 3. [`cluster_pass`] walks forwards and pushes any nucleus-less unit that is
//!    left (a word-initial consonant cluster) into the onset of the next unit.
//!
//! All passes conserve characters: concatenating the surface forms always gives
//! back the input word.

use std::fmt;

use crate::phonology::PhonologyConfig;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid character {character:?} at position {position} of {word:?}")]
pub struct InvalidCharacter {
    pub word: String,
    pub character: char,
    /// Character (not byte) offset into `word`.
    pub position: usize,
}

/// One syllabic unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Segment {
    pub onset: String,
    pub nucleus: Option<char>,
    pub coda: String,
}

impl Segment {
    pub fn new(onset: impl Into<String>, nucleus: Option<char>, coda: impl Into<String>) -> Self {
        Self {
            onset: onset.into(),
            nucleus,
            coda: coda.into(),
        }
    }

    pub fn has_nucleus(&self) -> bool {
        self.nucleus.is_some()
    }

    pub fn surface(&self) -> String {
        let mut s = String::with_capacity(self.onset.len() + self.coda.len() + 4);
        self.write_surface(&mut s);
        s
    }

    pub fn write_surface(&self, out: &mut String) {
        out.push_str(&self.onset);
        if let Some(v) = self.nucleus {
            out.push(v);
        }
        out.push_str(&self.coda);
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.onset)?;
        if let Some(v) = self.nucleus {
            write!(f, "{v}")?;
        }
        f.write_str(&self.coda)
    }
}

/// First pass: left-to-right onset/nucleus/coda identification.
///
/// The onset is a digraph if one starts at the cursor, otherwise a single
/// consonant. It grows into a medial cluster when the next character is a
/// medial, the character after that is a vowel, and the onset itself is neither
/// a special coda nor a medial. A vowel right after the onset becomes the
/// nucleus, and the longest special coda that follows is attached as coda,
/// unless taking it would steal the onset of a following vowel or cut a
/// digraph in half. An onset with no vowel after it becomes a unit of its own.
pub fn scan(word: &str, cfg: &PhonologyConfig) -> Result<Vec<Segment>, InvalidCharacter> {
    let chars: Vec<char> = word.chars().collect();
    scan_chars(&chars, cfg).map_err(|position| InvalidCharacter {
        word: word.to_string(),
        character: chars[position],
        position,
    })
}

fn scan_chars(chars: &[char], cfg: &PhonologyConfig) -> Result<Vec<Segment>, usize> {
    let n = chars.len();
    let mut out = Vec::with_capacity(n / 2 + 1);
    let mut i = 0;
    while i < n {
        let c = chars[i];
        if cfg.is_vowel(c) {
            i += 1;
            let coda_len = coda_at(chars, i, cfg);
            out.push(Segment {
                onset: String::new(),
                nucleus: Some(c),
                coda: chars[i..i + coda_len].iter().collect(),
            });
            i += coda_len;
            continue;
        }
        if !cfg.is_consonant(c) {
            return Err(i);
        }

        let alpha_len = if i + 1 < n && cfg.is_digraph(c, chars[i + 1]) {
            2
        } else {
            1
        };
        let alpha = &chars[i..i + alpha_len];
        let mut onset_len = alpha_len;
        if let (Some(&beta), Some(&after)) =
            (chars.get(i + alpha_len), chars.get(i + alpha_len + 1))
        {
            let alpha_is_medial = alpha_len == 1 && cfg.is_medial(alpha[0]);
            if cfg.is_medial(beta)
                && cfg.is_vowel(after)
                && !cfg.is_special_coda(alpha)
                && !alpha_is_medial
            {
                onset_len += 1;
            }
        }
        let onset: String = chars[i..i + onset_len].iter().collect();
        i += onset_len;

        match chars.get(i) {
            Some(&v) if cfg.is_vowel(v) => {
                i += 1;
                let coda_len = coda_at(chars, i, cfg);
                out.push(Segment {
                    onset,
                    nucleus: Some(v),
                    coda: chars[i..i + coda_len].iter().collect(),
                });
                i += coda_len;
            }
            _ => out.push(Segment {
                onset,
                nucleus: None,
                coda: String::new(),
            }),
        }
    }
    Ok(out)
}

/// Length of the special coda to attach at `start`, or 0.
fn coda_at(chars: &[char], start: usize, cfg: &PhonologyConfig) -> usize {
    let rest = &chars[start..];
    for h in cfg.codas_longest_first() {
        if !rest.starts_with(h) {
            continue;
        }
        let end = start + h.len();
        if chars.get(end).is_some_and(|&c| cfg.is_vowel(c)) {
            continue;
        }
        if end < chars.len() && cfg.is_digraph(chars[end - 1], chars[end]) {
            continue;
        }
        return h.len();
    }
    0
}

/// Second pass: fold nucleus-less units into the coda of their predecessor,
/// iterating from the last unit down to the second.
///
/// Because the sweep runs backwards, a run of nucleus-less units collapses
/// into the first unit before the run. Only the first unit of the word can
/// remain without a nucleus afterwards.
pub fn virama_pass(mut segments: Vec<Segment>) -> Vec<Segment> {
    let mut i = segments.len();
    while i > 1 {
        i -= 1;
        if !segments[i].has_nucleus() {
            let unit = segments.remove(i);
            unit.write_surface(&mut segments[i - 1].coda);
        }
    }
    segments
}

/// Third pass: move nucleus-less units forward into the onset of the next
/// unit. A trailing nucleus-less unit has no successor and stays.
pub fn cluster_pass(segments: Vec<Segment>) -> Vec<Segment> {
    let last = segments.len().saturating_sub(1);
    let mut out = Vec::with_capacity(segments.len());
    let mut carry = String::new();
    for (idx, mut seg) in segments.into_iter().enumerate() {
        if !seg.has_nucleus() && idx < last {
            seg.write_surface(&mut carry);
            continue;
        }
        if !carry.is_empty() {
            carry.push_str(&seg.onset);
            seg.onset = std::mem::take(&mut carry);
        }
        out.push(seg);
    }
    out
}

/// Full segmentation: `cluster_pass(virama_pass(scan(word)))`.
pub fn segment(word: &str, cfg: &PhonologyConfig) -> Result<Vec<Segment>, InvalidCharacter> {
    Ok(cluster_pass(virama_pass(scan(word, cfg)?)))
}

/// Surface forms of [`segment`].
pub fn syllables(word: &str, cfg: &PhonologyConfig) -> Result<Vec<String>, InvalidCharacter> {
    Ok(segment(word, cfg)?.iter().map(Segment::surface).collect())
}
