use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "sukukata",
    version,
    about = "Syllable tokenization and tokenizer evaluation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train a syllable vocabulary from a word list.
    TrainVocab(TrainVocabArgs),
    /// Tokenize text, one JSON record per input line.
    Tokenize(TokenizeArgs),
    /// Tokens-per-character distribution per language.
    Tpc(TpcArgs),
    /// Mean alignment similarity for every language pair of a parallel corpus.
    Align(AlignArgs),
    /// Regress one similarity report on another.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Syllable,
    Bpe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file. Standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run manifest path. Defaults to `<out>.manifest.json`, or standard
    /// error when writing to standard output.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainVocabArgs {
    /// Word list, one word per line; `#` lines are comments.
    #[arg(long)]
    pub wordlist: PathBuf,
    /// Phonology file. The built-in Indonesian defaults when omitted.
    #[arg(long)]
    pub phonology: Option<PathBuf>,
    /// Maximum number of tokens, excluding the unknown token.
    #[arg(long, default_value_t = 2843)]
    pub target_size: usize,
    /// Do not reserve printable ASCII (space, digits, punctuation) as base
    /// symbols.
    #[arg(long)]
    pub no_ascii_symbols: bool,
    /// Output directory for vocab.txt, vocab.meta.json and manifest.json.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    #[arg(long, value_enum, default_value_t = Scheme::Syllable)]
    pub scheme: Scheme,
    /// Syllable vocabulary (required for the syllable scheme).
    #[arg(long)]
    pub vocab: Option<PathBuf>,
    #[arg(long)]
    pub phonology: Option<PathBuf>,
    /// Keep case instead of lowercasing before syllable tokenization.
    #[arg(long)]
    pub no_lowercase: bool,
    /// GPT-2 style `encoder.json` (required for the bpe scheme).
    #[arg(long)]
    pub bpe_vocab: Option<PathBuf>,
    /// GPT-2 style `vocab.bpe` merges (required for the bpe scheme).
    #[arg(long)]
    pub bpe_merges: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Parallel corpus: a CSV/TSV file with one column per language, or a
    /// directory with one file per language. Repeat to concatenate splits.
    #[arg(long)]
    pub corpus: Vec<PathBuf>,
    /// Column holding row ids.
    #[arg(long)]
    pub id_column: Option<String>,
    /// Comma-separated languages to keep, in order.
    #[arg(long, value_delimiter = ',')]
    pub languages: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct TokenizeArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Text file, one text per line. `-` reads standard input.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TpcArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Plain text input as LANG=FILE, one text per line. Repeatable.
    #[arg(long, value_parser = parse_lang_file)]
    pub text: Vec<(String, PathBuf)>,
    /// `json` writes the summary report, `csv` writes per-row values.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct AlignArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[command(flatten)]
    pub corpus: CorpusArgs,
    #[arg(long = "match", default_value_t = 2, allow_negative_numbers = true)]
    pub match_score: i32,
    #[arg(long = "mismatch", default_value_t = -1, allow_negative_numbers = true)]
    pub mismatch_score: i32,
    /// Cost of each gap position.
    #[arg(long = "gap", default_value_t = 1)]
    pub gap_penalty: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Report of the candidate scheme (the regression's y).
    pub candidate: PathBuf,
    /// Report of the baseline scheme (the regression's x).
    pub baseline: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_lang_file(s: &str) -> Result<(String, PathBuf), String> {
    match s.split_once('=') {
        Some((lang, path)) if !lang.is_empty() && !path.is_empty() => {
            Ok((lang.to_string(), PathBuf::from(path)))
        }
        _ => Err(format!("expected LANG=FILE, got {s:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_mismatch_parses() {
        let cli =
            Cli::try_parse_from(["sukukata", "align", "--corpus", "c.tsv", "--mismatch", "-3"])
                .unwrap();
        match cli.command {
            Command::Align(a) => {
                assert_eq!((a.match_score, a.mismatch_score, a.gap_penalty), (2, -3, 1))
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn lang_file_pairs() {
        assert_eq!(
            parse_lang_file("id=a.txt").unwrap(),
            ("id".into(), PathBuf::from("a.txt"))
        );
        assert!(parse_lang_file("a.txt").is_err());
        assert!(parse_lang_file("=a.txt").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
