//! `run.json`: what went into an apply run and what came out.
//!
//! Only inputs that change the outputs are recorded, so two runs over the
//! same inputs write byte-identical manifests.

use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const MANIFEST_FILE: &str = "run.json";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: &Path) -> io::Result<Self> {
        let bytes = fs::read(path)?;
        Ok(FileDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
        })
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub lexicons: Vec<FileDigest>,
    pub corpus: Vec<FileDigest>,
    pub abbreviations: Option<FileDigest>,
    pub replacements: Option<FileDigest>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunCounts {
    pub word_tokens: u64,
    pub known_simple: u64,
    pub in_compound_only: u64,
    pub unknown: u64,
    pub err_forms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Arguments that shape the outputs, in a fixed order. The output
    /// directory and job count are left out on purpose.
    pub arguments: Vec<String>,
    pub corpus_id: String,
    pub dict_id: String,
    pub case_policy: String,
    pub inputs: Inputs,
    pub counts: RunCounts,
    pub outputs: Vec<FileDigest>,
}

impl RunManifest {
    pub fn write(&self, dir: &Path) -> io::Result<()> {
        let mut text = serde_json::to_string_pretty(self).map_err(io::Error::other)?;
        text.push('\n');
        fs::write(dir.join(MANIFEST_FILE), text)
    }

    pub fn read(dir: &Path) -> io::Result<Self> {
        let text = fs::read_to_string(dir.join(MANIFEST_FILE))?;
        serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
    }
}

/// Digests of files inside `dir`, recorded by their name relative to it.
pub fn output_digests(dir: &Path, names: &[&str]) -> io::Result<Vec<FileDigest>> {
    names
        .iter()
        .map(|n| {
            let bytes = fs::read(dir.join(n))?;
            Ok(FileDigest {
                path: (*n).to_string(),
                sha256: sha256_hex(&bytes),
            })
        })
        .collect()
}
