use std::fmt;
use std::io;

use sukukata::metrics::MetricsError;
use sukukata::vocab::PowerLawError;
use sukukata::{
    BpeError, CorpusError, InvalidCharacter, PhonologyError, TokenizerError, VocabError,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

/// Invalid combination of arguments that clap cannot express.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return EXIT_USAGE;
        }
        if cause.is::<io::Error>()
            || cause.is::<serde_json::Error>()
            || cause.is::<csv::Error>()
            || cause.is::<VocabError>()
            || cause.is::<CorpusError>()
            || cause.is::<BpeError>()
            || cause.is::<PhonologyError>()
            || cause.is::<MetricsError>()
            || cause.is::<TokenizerError>()
            || cause.is::<PowerLawError>()
            || cause.is::<InvalidCharacter>()
        {
            return EXIT_DATA;
        }
    }
    EXIT_INTERNAL
}
