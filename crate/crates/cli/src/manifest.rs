//! Run manifest: echoes the invocation and records a checksum per emitted
//! file, so identical inputs are provably reproducing identical bytes.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct FileEntry {
    pub name: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub model_path: String,
    pub output_dir: String,
    /// Echoed flag values, sorted by name.
    pub parameters: BTreeMap<String, String>,
    pub tool_version: String,
    pub files: Vec<FileEntry>,
}

impl RunManifest {
    pub fn new(command: &str, model_path: &str, output_dir: &str) -> Self {
        Self {
            command: command.to_string(),
            model_path: model_path.to_string(),
            output_dir: output_dir.to_string(),
            parameters: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            files: Vec::new(),
        }
    }

    pub fn parameter(&mut self, key: &str, value: impl ToString) {
        self.parameters.insert(key.to_string(), value.to_string());
    }

    pub fn record_file(&mut self, name: &str, bytes: &[u8]) {
        self.files.push(FileEntry {
            name: name.to_string(),
            sha256: sha256_hex(bytes),
        });
        self.files.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        text
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn files_sorted_and_checksummed() {
        let mut m = RunManifest::new("roa", "paper.toml", "out");
        m.record_file("b.csv", b"x");
        m.record_file("a.csv", b"y");
        assert_eq!(m.files[0].name, "a.csv");
        assert_eq!(m.files[1].sha256, sha256_hex(b"x"));
    }

    #[test]
    fn json_is_stable() {
        let mut m = RunManifest::new("roa", "paper.toml", "out");
        m.parameter("s", "0:0.5:15");
        assert_eq!(m.to_json(), m.to_json());
        assert!(m.to_json().ends_with('\n'));
    }
}
