use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Provenance record written next to every output.
///
/// Everything except `timestamp` is a function of the inputs, the parameters
/// and the tool version. `timestamp` honours `SOURCE_DATE_EPOCH`.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub parameters: BTreeMap<String, Value>,
    /// SHA-256 of the canonical JSON encoding of `parameters`.
    pub config_hash: String,
    pub vocab_hash: Option<String>,
    /// Input path, as given, to SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    /// Output file name to SHA-256 of its bytes; `-` is standard output.
    pub outputs: BTreeMap<String, String>,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(command: &'static str) -> Self {
        Self {
            tool: "sukukata",
            version: env!("CARGO_PKG_VERSION"),
            command,
            parameters: BTreeMap::new(),
            config_hash: String::new(),
            vocab_hash: None,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            timestamp: timestamp(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("parameters serialize");
        self.parameters.insert(key.to_string(), v);
    }

    /// Records the digest of a file, or of every file below a directory.
    pub fn input(&mut self, path: &Path) -> io::Result<()> {
        if path.is_dir() {
            let mut entries: Vec<_> = fs::read_dir(path)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.is_file())
                .collect();
            entries.sort();
            for p in entries {
                self.input(&p)?;
            }
            return Ok(());
        }
        let bytes = fs::read(path)?;
        self.input_bytes(&path.display().to_string(), &bytes);
        Ok(())
    }

    pub fn input_bytes(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.insert(name.to_string(), sha256_hex(bytes));
    }

    pub fn output(&mut self, name: &str, bytes: &[u8]) {
        self.outputs.insert(name.to_string(), sha256_hex(bytes));
    }

    pub fn finish(mut self) -> Self {
        let canonical = serde_json::to_string(&self.parameters).expect("parameters serialize");
        self.config_hash = sha256_hex(canonical.as_bytes());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

fn timestamp() -> u64 {
    if let Some(v) = std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.trim().parse().ok())
    {
        return v;
    }
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}
