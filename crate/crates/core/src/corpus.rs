//! Parallel corpora and word lists.
//!
//! A parallel corpus is either one delimited file whose header names the
//! language of each column, or a directory holding one file per language
//! (language = file stem) with a `text` column. Per-language files are joined
//! on their `id` column when every file has one, otherwise on row position.
//! Files ending in `.tsv` or `.tab` are tab-separated, everything else is CSV.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{path}: missing column {column:?}")]
    MissingColumn { path: PathBuf, column: String },
    #[error("row count mismatch: {left} has {left_rows} rows, {right} has {right_rows}")]
    RowCountMismatch {
        left: String,
        left_rows: usize,
        right: String,
        right_rows: usize,
    },
    #[error("{path}: row id {id:?} has no match in {other}")]
    IdMismatch {
        path: PathBuf,
        id: String,
        other: String,
    },
    #[error("{path}: input is not valid UTF-8")]
    EncodingError { path: PathBuf },
    #[error("{path}: {message}")]
    Malformed { path: PathBuf, message: String },
    #[error("duplicate language {0:?}")]
    DuplicateLanguage(String),
    #[error("unknown language {0:?}")]
    UnknownLanguage(String),
    #[error("corpora have different languages: {0:?} vs {1:?}")]
    LanguageMismatch(Vec<String>, Vec<String>),
    #[error("no corpus files found in {0}")]
    Empty(PathBuf),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

/// Column selection for [`load_parallel_with`].
#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    /// Column holding a row identifier (single-file layout). A column with an
    /// empty header name is always treated as the identifier.
    pub id_column: Option<String>,
    /// Keep only these languages, in this order.
    pub languages: Option<Vec<String>>,
    /// Text column of per-language files. Defaults to `text`.
    pub text_column: Option<String>,
}

/// Sentences aligned across languages, one row per sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelCorpus {
    languages: Vec<String>,
    ids: Option<Vec<String>>,
    rows: Vec<Vec<String>>,
}

impl ParallelCorpus {
    pub fn new(languages: Vec<String>, rows: Vec<Vec<String>>) -> Result<Self, CorpusError> {
        Self::with_ids(languages, None, rows)
    }

    pub fn with_ids(
        languages: Vec<String>,
        ids: Option<Vec<String>>,
        rows: Vec<Vec<String>>,
    ) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        for l in &languages {
            if !seen.insert(l) {
                return Err(CorpusError::DuplicateLanguage(l.clone()));
            }
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != languages.len()) {
            return Err(CorpusError::Malformed {
                path: PathBuf::new(),
                message: format!(
                    "row with {} fields for {} languages",
                    bad.len(),
                    languages.len()
                ),
            });
        }
        if let Some(ids) = &ids {
            if ids.len() != rows.len() {
                return Err(CorpusError::Malformed {
                    path: PathBuf::new(),
                    message: format!("{} ids for {} rows", ids.len(), rows.len()),
                });
            }
        }
        Ok(Self {
            languages,
            ids,
            rows,
        })
    }

    pub fn languages(&self) -> &[String] {
        &self.languages
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ids(&self) -> Option<&[String]> {
        self.ids.as_deref()
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn language_index(&self, language: &str) -> Result<usize, CorpusError> {
        self.languages
            .iter()
            .position(|l| l == language)
            .ok_or_else(|| CorpusError::UnknownLanguage(language.to_string()))
    }

    pub fn column(&self, language: &str) -> Result<impl Iterator<Item = &str> + '_, CorpusError> {
        let idx = self.language_index(language)?;
        Ok(self.rows.iter().map(move |r| r[idx].as_str()))
    }

    /// Keeps the given languages, in the given order.
    pub fn select(&self, languages: &[String]) -> Result<Self, CorpusError> {
        let idx: Vec<usize> = languages
            .iter()
            .map(|l| self.language_index(l))
            .collect::<Result<_, _>>()?;
        let rows = self
            .rows
            .iter()
            .map(|r| idx.iter().map(|&i| r[i].clone()).collect())
            .collect();
        Self::with_ids(languages.to_vec(), self.ids.clone(), rows)
    }

    /// Appends the rows of `other`, which must have the same languages.
    pub fn extend(&mut self, other: ParallelCorpus) -> Result<(), CorpusError> {
        if self.languages != other.languages {
            return Err(CorpusError::LanguageMismatch(
                self.languages.clone(),
                other.languages,
            ));
        }
        let n = self.rows.len();
        self.ids = match (self.ids.take(), other.ids) {
            (Some(mut a), Some(b)) => {
                a.extend(b);
                Some(a)
            }
            (None, None) => None,
            (a, b) => Some(
                a.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect())
                    .into_iter()
                    .chain(b.unwrap_or_else(|| {
                        (n..n + other.rows.len()).map(|i| i.to_string()).collect()
                    }))
                    .collect(),
            ),
        };
        self.rows.extend(other.rows);
        Ok(())
    }

    /// Writes the single-file layout; [`load_parallel`] reads it back unchanged.
    pub fn write<W: Write>(&self, w: W, delimiter: u8) -> Result<(), CorpusError> {
        let io_err = |e: csv::Error| CorpusError::Malformed {
            path: PathBuf::new(),
            message: e.to_string(),
        };
        let mut wr = csv::WriterBuilder::new()
            .delimiter(delimiter)
            .from_writer(w);
        let mut header: Vec<&str> = Vec::new();
        if self.ids.is_some() {
            header.push("");
        }
        header.extend(self.languages.iter().map(String::as_str));
        wr.write_record(&header).map_err(io_err)?;
        for (i, row) in self.rows.iter().enumerate() {
            let mut rec: Vec<&str> = Vec::with_capacity(row.len() + 1);
            if let Some(ids) = &self.ids {
                rec.push(&ids[i]);
            }
            rec.extend(row.iter().map(String::as_str));
            wr.write_record(&rec).map_err(io_err)?;
        }
        wr.flush().map_err(|e| CorpusError::Io {
            path: PathBuf::new(),
            source: e,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), CorpusError> {
        let file = File::create(path).map_err(|e| CorpusError::Io {
            path: path.to_path_buf(),
            source: e,
        })?;
        self.write(io::BufWriter::new(file), delimiter_for(path))
    }
}

fn delimiter_for(path: &Path) -> u8 {
    match path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .as_deref()
    {
        Some("tsv") | Some("tab") => b'\t',
        _ => b',',
    }
}

fn is_corpus_file(path: &Path) -> bool {
    matches!(
        path.extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref(),
        Some("csv") | Some("tsv") | Some("tab")
    )
}

fn csv_error(path: &Path, e: csv::Error) -> CorpusError {
    match e.kind() {
        csv::ErrorKind::Utf8 { .. } => CorpusError::EncodingError {
            path: path.to_path_buf(),
        },
        csv::ErrorKind::Io(err) if err.kind() == io::ErrorKind::InvalidData => {
            CorpusError::EncodingError {
                path: path.to_path_buf(),
            }
        }
        _ => CorpusError::Malformed {
            path: path.to_path_buf(),
            message: e.to_string(),
        },
    }
}

struct Table {
    header: Vec<String>,
    records: Vec<Vec<String>>,
}

fn read_table<R: Read>(path: &Path, reader: R) -> Result<Table, CorpusError> {
    let mut rd = csv::ReaderBuilder::new()
        .delimiter(delimiter_for(path))
        .has_headers(true)
        .from_reader(reader);
    let header: Vec<String> = rd
        .headers()
        .map_err(|e| csv_error(path, e))?
        .iter()
        .map(|h| h.trim_start_matches('\u{feff}').trim().to_string())
        .collect();
    let mut records = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| csv_error(path, e))?;
        records.push(rec.iter().map(str::to_string).collect());
    }
    Ok(Table { header, records })
}

fn open(path: &Path) -> Result<File, CorpusError> {
    File::open(path).map_err(|e| CorpusError::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

/// Loads a parallel corpus from a single delimited file or a directory of
/// per-language files.
pub fn load_parallel(path: &Path) -> Result<ParallelCorpus, CorpusError> {
    load_parallel_with(path, &LoadOptions::default())
}

pub fn load_parallel_with(path: &Path, opts: &LoadOptions) -> Result<ParallelCorpus, CorpusError> {
    let corpus = if path.is_dir() {
        load_language_dir(path, opts)?
    } else {
        load_single_file(path, opts)?
    };
    match &opts.languages {
        Some(langs) => corpus.select(langs),
        None => Ok(corpus),
    }
}

/// Loads several corpora (for example train/valid/test splits) and
/// concatenates their rows in the given order.
pub fn load_parallel_many(
    paths: &[PathBuf],
    opts: &LoadOptions,
) -> Result<ParallelCorpus, CorpusError> {
    let mut iter = paths.iter();
    let first = iter
        .next()
        .ok_or_else(|| CorpusError::Empty(PathBuf::new()))?;
    let mut corpus = load_parallel_with(first, opts)?;
    for p in iter {
        corpus.extend(load_parallel_with(p, opts)?)?;
    }
    Ok(corpus)
}

fn load_single_file(path: &Path, opts: &LoadOptions) -> Result<ParallelCorpus, CorpusError> {
    let table = read_table(path, open(path)?)?;
    let id_col = match &opts.id_column {
        Some(name) => Some(table.header.iter().position(|h| h == name).ok_or_else(|| {
            CorpusError::MissingColumn {
                path: path.to_path_buf(),
                column: name.clone(),
            }
        })?),
        None => table.header.iter().position(String::is_empty),
    };
    let lang_cols: Vec<usize> = (0..table.header.len())
        .filter(|&i| Some(i) != id_col)
        .collect();
    let languages = lang_cols.iter().map(|&i| table.header[i].clone()).collect();
    let ids = id_col.map(|c| table.records.iter().map(|r| r[c].clone()).collect());
    let rows = table
        .records
        .into_iter()
        .map(|r| lang_cols.iter().map(|&i| r[i].clone()).collect())
        .collect();
    ParallelCorpus::with_ids(languages, ids, rows)
}

struct LanguageColumn {
    language: String,
    path: PathBuf,
    ids: Option<Vec<String>>,
    texts: Vec<String>,
}

fn load_language_dir(dir: &Path, opts: &LoadOptions) -> Result<ParallelCorpus, CorpusError> {
    let text_col = opts.text_column.as_deref().unwrap_or("text");
    let id_col = opts.id_column.as_deref().unwrap_or("id");
    let entries = fs::read_dir(dir).map_err(|e| CorpusError::Io {
        path: dir.to_path_buf(),
        source: e,
    })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && is_corpus_file(p))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CorpusError::Empty(dir.to_path_buf()));
    }

    let mut columns = Vec::with_capacity(files.len());
    for path in files {
        let table = read_table(&path, open(&path)?)?;
        let t = table
            .header
            .iter()
            .position(|h| h == text_col)
            .ok_or_else(|| CorpusError::MissingColumn {
                path: path.clone(),
                column: text_col.to_string(),
            })?;
        let i = table.header.iter().position(|h| h == id_col);
        let language = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or_default()
            .to_string();
        columns.push(LanguageColumn {
            language,
            ids: i.map(|i| table.records.iter().map(|r| r[i].clone()).collect()),
            texts: table
                .records
                .into_iter()
                .map(|mut r| r.swap_remove(t))
                .collect(),
            path,
        });
    }

    let first = &columns[0];
    for c in &columns[1..] {
        if c.texts.len() != first.texts.len() {
            return Err(CorpusError::RowCountMismatch {
                left: first.path.display().to_string(),
                left_rows: first.texts.len(),
                right: c.path.display().to_string(),
                right_rows: c.texts.len(),
            });
        }
    }

    let languages: Vec<String> = columns.iter().map(|c| c.language.clone()).collect();
    let n = first.texts.len();
    if columns.iter().all(|c| c.ids.is_some()) {
        let order = first.ids.clone().unwrap();
        let mut rows = vec![Vec::with_capacity(columns.len()); n];
        for c in &columns {
            let pos: HashMap<&str, usize> = c
                .ids
                .as_ref()
                .unwrap()
                .iter()
                .enumerate()
                .map(|(i, id)| (id.as_str(), i))
                .collect();
            for (row, id) in rows.iter_mut().zip(&order) {
                let i = *pos
                    .get(id.as_str())
                    .ok_or_else(|| CorpusError::IdMismatch {
                        path: first.path.clone(),
                        id: id.clone(),
                        other: c.path.display().to_string(),
                    })?;
                row.push(c.texts[i].clone());
            }
        }
        ParallelCorpus::with_ids(languages, Some(order), rows)
    } else {
        let rows = (0..n)
            .map(|i| columns.iter().map(|c| c.texts[i].clone()).collect())
            .collect();
        ParallelCorpus::new(languages, rows)
    }
}

/// Lowercases `token` and trims leading and trailing characters that are
/// neither letters nor digits. Returns an empty string for pure punctuation.
pub fn normalize_word(token: &str) -> String {
    token
        .trim_matches(|c: char| !c.is_alphanumeric())
        .to_lowercase()
}

/// Distinct normalized whitespace-separated words in one language column.
pub fn unique_words(corpus: &ParallelCorpus, language: &str) -> Result<usize, CorpusError> {
    let mut set = BTreeSet::new();
    for text in corpus.column(language)? {
        for tok in text.split_whitespace() {
            let w = normalize_word(tok);
            if !w.is_empty() {
                set.insert(w);
            }
        }
    }
    Ok(set.len())
}

/// Reads a word list: one word per line, `#` starts a comment line, blank
/// lines are skipped, words are trimmed and lowercased.
pub fn read_wordlist<R: BufRead>(reader: R) -> io::Result<Vec<String>> {
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let w = line.trim();
        if w.is_empty() || w.starts_with('#') {
            continue;
        }
        out.push(w.to_lowercase());
    }
    Ok(out)
}

pub fn load_wordlist(path: &Path) -> Result<Vec<String>, CorpusError> {
    read_wordlist(BufReader::new(open(path)?)).map_err(|e| {
        if e.kind() == io::ErrorKind::InvalidData {
            CorpusError::EncodingError {
                path: path.to_path_buf(),
            }
        } else {
            CorpusError::Io {
                path: path.to_path_buf(),
                source: e,
            }
        }
    })
}

/// Reads non-empty lines of a UTF-8 text file, keeping their content intact.
pub fn load_lines(path: &Path) -> Result<Vec<String>, CorpusError> {
    let mut text = String::new();
    open(path)?.read_to_string(&mut text).map_err(|e| {
        if e.kind() == io::ErrorKind::InvalidData {
            CorpusError::EncodingError {
                path: path.to_path_buf(),
            }
        } else {
            CorpusError::Io {
                path: path.to_path_buf(),
                source: e,
            }
        }
    })?;
    Ok(text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_string)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, content: &[u8]) -> PathBuf {
        let p = dir.join(name);
        fs::write(&p, content).unwrap();
        p
    }

    #[test]
    fn single_tsv() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            dir.path(),
            "c.tsv",
            b"x\ty\tz\nsatu\tsiji\thiji\ndua\tloro\t\"dua, dua\"\n",
        );
        let c = load_parallel(&p).unwrap();
        assert_eq!(c.languages(), ["x", "y", "z"]);
        assert_eq!(c.len(), 2);
        assert_eq!(c.rows()[1][2], "dua, dua");
        assert!(c.ids().is_none());
    }

    #[test]
    fn unnamed_first_column_is_row_id() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "c.csv", b",id,en\n0,makan,eat\n1,minum,drink\n");
        let c = load_parallel(&p).unwrap();
        assert_eq!(c.languages(), ["id", "en"]);
        assert_eq!(c.ids().unwrap(), ["0", "1"]);
    }

    #[test]
    fn explicit_id_column_and_selection() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "c.csv", b"sid,ind,jav,sun\n7,a,b,c\n");
        let opts = LoadOptions {
            id_column: Some("sid".into()),
            languages: Some(vec!["sun".into(), "ind".into()]),
            ..Default::default()
        };
        let c = load_parallel_with(&p, &opts).unwrap();
        assert_eq!(c.languages(), ["sun", "ind"]);
        assert_eq!(c.rows()[0], ["c", "a"]);
        assert_eq!(c.ids().unwrap(), ["7"]);

        let bad = LoadOptions {
            id_column: Some("nope".into()),
            ..Default::default()
        };
        assert!(matches!(
            load_parallel_with(&p, &bad),
            Err(CorpusError::MissingColumn { .. })
        ));
    }

    #[test]
    fn language_directory_joins_on_id() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "ind.csv", b"id,text\n1,makan\n2,minum\n");
        write(
            dir.path(),
            "jav.csv",
            b"id,text,label\n2,ngombe,x\n1,mangan,y\n",
        );
        write(dir.path(), "notes.txt", b"ignored");
        let c = load_parallel(dir.path()).unwrap();
        assert_eq!(c.languages(), ["ind", "jav"]);
        assert_eq!(c.rows(), [vec!["makan", "mangan"], vec!["minum", "ngombe"]]);
    }

    #[test]
    fn language_directory_row_count_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "a.csv", b"text\nx\ny\n");
        write(dir.path(), "b.csv", b"text\nx\n");
        assert!(matches!(
            load_parallel(dir.path()),
            Err(CorpusError::RowCountMismatch { .. })
        ));
    }

    #[test]
    fn language_directory_missing_text_column() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), "a.csv", b"sentence\nx\n");
        assert!(matches!(
            load_parallel(dir.path()),
            Err(CorpusError::MissingColumn { .. })
        ));
    }

    #[test]
    fn invalid_utf8_is_an_encoding_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "c.csv", b"a,b\n\xff\xfe,x\n");
        assert!(matches!(
            load_parallel(&p),
            Err(CorpusError::EncodingError { .. })
        ));
    }

    #[test]
    fn ragged_rows_are_malformed() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(dir.path(), "c.csv", b"a,b\n1,2,3\n");
        assert!(matches!(
            load_parallel(&p),
            Err(CorpusError::Malformed { .. })
        ));
    }

    #[test]
    fn save_load_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let c = ParallelCorpus::with_ids(
            vec!["id".into(), "en".into()],
            Some(vec!["a".into(), "b".into()]),
            vec![
                vec![
                    "Saya \"makan\", lalu\tpergi".into(),
                    "I eat\nthen go".into(),
                ],
                vec!["".into(), " spaced ".into()],
            ],
        )
        .unwrap();
        for name in ["out.csv", "out.tsv"] {
            let p = dir.path().join(name);
            c.save(&p).unwrap();
            assert_eq!(load_parallel(&p).unwrap(), c);
        }
    }

    #[test]
    fn extend_requires_same_languages() {
        let mut a = ParallelCorpus::new(vec!["x".into()], vec![vec!["1".into()]]).unwrap();
        let b = ParallelCorpus::new(vec!["x".into()], vec![vec!["2".into()]]).unwrap();
        a.extend(b).unwrap();
        assert_eq!(a.len(), 2);
        let c = ParallelCorpus::new(vec!["y".into()], vec![]).unwrap();
        assert!(matches!(
            a.extend(c),
            Err(CorpusError::LanguageMismatch(..))
        ));
    }

    #[test]
    fn duplicate_languages_rejected() {
        assert!(matches!(
            ParallelCorpus::new(vec!["x".into(), "x".into()], vec![]),
            Err(CorpusError::DuplicateLanguage(_))
        ));
    }

    #[test]
    fn unique_word_counts() {
        let c = ParallelCorpus::new(
            vec!["x".into(), "y".into()],
            vec![vec!["a b".into(), "".into()], vec!["b c".into(), "".into()]],
        )
        .unwrap();
        assert_eq!(unique_words(&c, "x").unwrap(), 3);
        assert_eq!(unique_words(&c, "y").unwrap(), 0);
        assert!(matches!(
            unique_words(&c, "z"),
            Err(CorpusError::UnknownLanguage(_))
        ));

        let c = ParallelCorpus::new(
            vec!["x".into()],
            vec![vec!["Makan, makan! \"MAKAN\" -- anak-anak".into()]],
        )
        .unwrap();
        assert_eq!(unique_words(&c, "x").unwrap(), 2);
    }

    #[test]
    fn wordlist_parsing() {
        let words = read_wordlist(&b"# header\nMakan\n\n  minum \n#skip\n"[..]).unwrap();
        assert_eq!(words, ["makan", "minum"]);
    }
}
