use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::json;
use sukukata::corpus::{self, LoadOptions};
use sukukata::metrics::{self, AlignmentParams, LanguageTpc, TpcReport};
use sukukata::numfmt::{fmt_sig9, round_sig};
use sukukata::vocab::{ascii_symbols, build_vocabulary_with, census, fit_power_law, UNK_TOKEN};
use sukukata::{
    BpeModel, ParallelCorpus, PhonologyConfig, SimilarityReport, SyllableTokenizer, Tokenize,
    Vocabulary, UNK_ID,
};

use crate::args::{
    AlignArgs, CompareArgs, CorpusArgs, Format, OutputArgs, Scheme, SchemeArgs, TokenizeArgs,
    TpcArgs, TrainVocabArgs,
};
use crate::error::usage;
use crate::manifest::RunManifest;

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("reports serialize");
    v.push(b'\n');
    v
}

fn load_phonology(path: Option<&Path>, manifest: &mut RunManifest) -> Result<PhonologyConfig> {
    let Some(path) = path else {
        return Ok(PhonologyConfig::default());
    };
    let bytes = read_file(path)?;
    manifest.input_bytes(&path.display().to_string(), &bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| io::Error::new(io::ErrorKind::InvalidData, "phonology file is not UTF-8"))
        .with_context(|| format!("reading {}", path.display()))?;
    let cfg: PhonologyConfig = text
        .parse()
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(cfg)
}

/// Sends the primary output to `--out` or standard output and the manifest
/// to its destination.
fn emit(output: &OutputArgs, bytes: &[u8], mut manifest: RunManifest) -> Result<()> {
    match &output.out {
        Some(path) => {
            let name = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            manifest.output(&name, bytes);
            write_file(path, bytes)?;
        }
        None => {
            manifest.output("-", bytes);
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
        }
    }
    let manifest = manifest.finish().to_json();
    let dest = output.manifest.clone().or_else(|| {
        output.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".manifest.json");
            PathBuf::from(s)
        })
    });
    match dest {
        Some(p) => write_file(&p, manifest.as_bytes()),
        None => {
            io::stderr().write_all(manifest.as_bytes())?;
            Ok(())
        }
    }
}

pub fn train_vocab(args: &TrainVocabArgs) -> Result<()> {
    let mut manifest = RunManifest::new("train-vocab");
    let cfg = load_phonology(args.phonology.as_deref(), &mut manifest)?;
    manifest
        .input(&args.wordlist)
        .with_context(|| format!("reading {}", args.wordlist.display()))?;
    let words = corpus::load_wordlist(&args.wordlist)?;

    let counts = census(&words, &cfg);
    let extra: Vec<char> = if args.no_ascii_symbols {
        Vec::new()
    } else {
        ascii_symbols().collect()
    };
    let vocab = build_vocabulary_with(&counts, args.target_size, extra)?;
    let (power_law, power_law_error) = match fit_power_law(&counts) {
        Ok(fit) => (Some(fit), None),
        Err(e) => (None, Some(e.to_string())),
    };

    manifest.param("target_size", args.target_size);
    manifest.param("ascii_symbols", !args.no_ascii_symbols);
    manifest.param("phonology", cfg.fingerprint());
    manifest.vocab_hash = Some(vocab.fingerprint());

    let meta = json!({
        "target_size": args.target_size,
        "size": vocab.tokens().len(),
        "base_symbols": vocab.base_symbol_count(),
        "unk_id": UNK_ID,
        "unk_token": UNK_TOKEN,
        "words": counts.words,
        "skipped_words": counts.skipped,
        "syllable_tokens": counts.total,
        "distinct_syllables": counts.distinct(),
        "monosyllabic_words": counts.monosyllables.len(),
        "power_law": power_law,
        "power_law_error": power_law_error,
        "phonology_hash": cfg.fingerprint(),
        "vocab_hash": vocab.fingerprint(),
    });

    let mut ranked: Vec<(&String, &u64)> = counts.counts.iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(a.1).then_with(|| a.0.cmp(b.0)));
    let mut wr = csv::Writer::from_writer(Vec::new());
    wr.write_record(["rank", "syllable", "count"])?;
    for (rank, (syl, count)) in ranked.iter().enumerate() {
        wr.write_record([(rank + 1).to_string(), syl.to_string(), count.to_string()])?;
    }
    let freq = wr.into_inner().map_err(|e| e.into_error())?;

    let mut vocab_bytes = Vec::new();
    vocab.write_to(&mut vocab_bytes)?;
    let meta_bytes = to_json(&meta);

    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    for (name, bytes) in [
        ("vocab.txt", &vocab_bytes),
        ("vocab.meta.json", &meta_bytes),
        ("syllables.csv", &freq),
    ] {
        manifest.output(name, bytes);
        write_file(&args.out.join(name), bytes)?;
    }
    write_file(
        &args.out.join("manifest.json"),
        manifest.finish().to_json().as_bytes(),
    )
}

fn build_tokenizer(args: &SchemeArgs, manifest: &mut RunManifest) -> Result<Box<dyn Tokenize>> {
    match args.scheme {
        Scheme::Syllable => {
            if args.bpe_vocab.is_some() || args.bpe_merges.is_some() {
                return Err(usage("--bpe-vocab/--bpe-merges apply only to --scheme bpe"));
            }
            let vocab_path = args
                .vocab
                .as_deref()
                .ok_or_else(|| usage("--scheme syllable requires --vocab"))?;
            let cfg = load_phonology(args.phonology.as_deref(), manifest)?;
            let bytes = read_file(vocab_path)?;
            manifest.input_bytes(&vocab_path.display().to_string(), &bytes);
            let vocab = Vocabulary::read_from(&bytes[..])
                .with_context(|| format!("reading {}", vocab_path.display()))?;
            manifest.param("scheme", "syllable");
            manifest.param("phonology", cfg.fingerprint());
            manifest.param("lowercase", !args.no_lowercase);
            manifest.vocab_hash = Some(vocab.fingerprint());
            Ok(Box::new(
                SyllableTokenizer::new(vocab, cfg).with_lowercase(!args.no_lowercase),
            ))
        }
        Scheme::Bpe => {
            if args.vocab.is_some() || args.phonology.is_some() || args.no_lowercase {
                return Err(usage(
                    "--vocab, --phonology and --no-lowercase apply only to --scheme syllable",
                ));
            }
            let (Some(v), Some(m)) = (&args.bpe_vocab, &args.bpe_merges) else {
                return Err(usage("--scheme bpe requires --bpe-vocab and --bpe-merges"));
            };
            let vb = read_file(v)?;
            let mb = read_file(m)?;
            manifest.input_bytes(&v.display().to_string(), &vb);
            manifest.input_bytes(&m.display().to_string(), &mb);
            let model = BpeModel::from_readers(&vb[..], &mb[..])
                .with_context(|| format!("loading {} and {}", v.display(), m.display()))?;
            manifest.param("scheme", "bpe");
            let mut both = vb;
            both.extend_from_slice(&mb);
            manifest.vocab_hash = Some(crate::manifest::sha256_hex(&both));
            Ok(Box::new(model))
        }
    }
}

fn load_corpus(args: &CorpusArgs, manifest: &mut RunManifest) -> Result<ParallelCorpus> {
    if args.corpus.is_empty() {
        return Err(usage("--corpus is required"));
    }
    for p in &args.corpus {
        manifest
            .input(p)
            .with_context(|| format!("reading {}", p.display()))?;
    }
    let opts = LoadOptions {
        id_column: args.id_column.clone(),
        languages: args.languages.clone(),
        text_column: None,
    };
    manifest.param("id_column", &args.id_column);
    manifest.param("languages", &args.languages);
    Ok(corpus::load_parallel_many(&args.corpus, &opts)?)
}

fn read_input_lines(path: &Path, manifest: &mut RunManifest) -> Result<Vec<String>> {
    let bytes = if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().lock().read_to_end(&mut buf)?;
        buf
    } else {
        read_file(path)?
    };
    manifest.input_bytes(&path.display().to_string(), &bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| io::Error::new(io::ErrorKind::InvalidData, "input is not UTF-8"))
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(text.lines().map(str::to_string).collect())
}

#[derive(Serialize)]
struct TokenizedLine<'a> {
    line: usize,
    ids: &'a [u32],
    tokens: &'a [String],
    chars: usize,
    tpc: Option<f64>,
}

pub fn tokenize(args: &TokenizeArgs) -> Result<()> {
    let mut manifest = RunManifest::new("tokenize");
    let tokenizer = build_tokenizer(&args.scheme, &mut manifest)?;
    let lines = read_input_lines(&args.input, &mut manifest)?;
    manifest.param("format", format_name(args.format));

    let mut out = Vec::new();
    let mut csv_out = match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["line", "tokens", "chars", "tpc", "ids"])?;
            Some(w)
        }
        Format::Json => None,
    };
    for (i, text) in lines.iter().enumerate() {
        let seq = tokenizer.encode(text);
        let chars = tokenizer.normalize(text).chars().count();
        let tpc = metrics::tpc(&seq, chars).ok().map(round_sig);
        if let Some(w) = csv_out.as_mut() {
            let ids: Vec<String> = seq.ids.iter().map(u32::to_string).collect();
            w.write_record([
                (i + 1).to_string(),
                seq.len().to_string(),
                chars.to_string(),
                tpc.map(fmt_sig9).unwrap_or_default(),
                ids.join(" "),
            ])?;
            continue;
        }
        let rec = TokenizedLine {
            line: i + 1,
            ids: &seq.ids,
            tokens: &seq.surface,
            chars,
            tpc,
        };
        serde_json::to_writer(&mut out, &rec)?;
        out.push(b'\n');
    }
    if let Some(w) = csv_out {
        out = w.into_inner().map_err(|e| e.into_error())?;
    }
    emit(&args.output, &out, manifest)
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
    }
}

pub fn tpc(args: &TpcArgs) -> Result<()> {
    let mut manifest = RunManifest::new("tpc");
    if args.corpus.corpus.is_empty() && args.text.is_empty() {
        return Err(usage("tpc needs --corpus or --text"));
    }
    let tokenizer = build_tokenizer(&args.scheme, &mut manifest)?;
    manifest.param("format", format_name(args.format));

    let mut languages: Vec<LanguageTpc> = Vec::new();
    if !args.corpus.corpus.is_empty() {
        let corpus = load_corpus(&args.corpus, &mut manifest)?;
        languages.extend(metrics::tpc_report(&corpus, tokenizer.as_ref())?.languages);
    }
    for (lang, path) in &args.text {
        if languages.iter().any(|l| &l.language == lang) {
            return Err(usage(format!("language {lang:?} given twice")));
        }
        let lines = read_input_lines(path, &mut manifest)?;
        languages.push(metrics::tpc_of_texts(lang, &lines, tokenizer.as_ref()));
    }
    let report = TpcReport {
        scheme: tokenizer.scheme().to_string(),
        languages,
    };

    let bytes = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["language", "row", "tpc"])?;
            for l in &report.languages {
                for (i, v) in l.values.iter().enumerate() {
                    w.write_record([
                        l.language.clone(),
                        (i + 1).to_string(),
                        v.map(fmt_sig9).unwrap_or_default(),
                    ])?;
                }
            }
            w.into_inner().map_err(|e| e.into_error())?
        }
    };
    emit(&args.output, &bytes, manifest)
}

pub fn align(args: &AlignArgs) -> Result<()> {
    let mut manifest = RunManifest::new("align");
    let params = AlignmentParams::new(args.match_score, args.mismatch_score, args.gap_penalty)
        .map_err(|e| usage(e.to_string()))?;
    let tokenizer = build_tokenizer(&args.scheme, &mut manifest)?;
    let corpus = load_corpus(&args.corpus, &mut manifest)?;
    manifest.param("alignment", params);
    manifest.param("format", format_name(args.format));

    let report = metrics::pair_report(&corpus, tokenizer.as_ref(), &params)?;
    let bytes = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["lang_a", "lang_b", "value", "samples"])?;
            for p in &report.pairs {
                w.write_record([
                    p.lang_a.clone(),
                    p.lang_b.clone(),
                    fmt_sig9(p.mean),
                    p.samples.to_string(),
                ])?;
            }
            w.into_inner().map_err(|e| e.into_error())?
        }
    };
    emit(&args.output, &bytes, manifest)
}

fn read_report(path: &Path, manifest: &mut RunManifest) -> Result<SimilarityReport> {
    let bytes = read_file(path)?;
    manifest.input_bytes(&path.display().to_string(), &bytes);
    serde_json::from_slice(&bytes).with_context(|| format!("parsing report {}", path.display()))
}

pub fn compare(args: &CompareArgs) -> Result<()> {
    let mut manifest = RunManifest::new("compare");
    let candidate = read_report(&args.candidate, &mut manifest)?;
    let baseline = read_report(&args.baseline, &mut manifest)?;
    manifest.param("format", format_name(args.format));

    let cmp = metrics::compare_reports(&candidate, &baseline)?;
    let bytes = match args.format {
        Format::Json => to_json(&cmp),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["lang_a", "lang_b", "candidate", "baseline", "diff"])?;
            for d in &cmp.diffs {
                w.write_record([
                    d.lang_a.clone(),
                    d.lang_b.clone(),
                    fmt_sig9(d.candidate),
                    fmt_sig9(d.baseline),
                    fmt_sig9(d.diff),
                ])?;
            }
            w.into_inner().map_err(|e| e.into_error())?
        }
    };
    emit(&args.output, &bytes, manifest)
}
