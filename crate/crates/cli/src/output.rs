//! Output sink: writes each table in the selected format and accumulates
//! the manifest entries.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;

use typea_stab_core::{Error, Result};

use crate::manifest::RunManifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct Sink {
    dir: PathBuf,
    format: Format,
    pub manifest: RunManifest,
}

impl Sink {
    pub fn new(dir: &Path, format: Format, command: &str, model_path: &str) -> Result<Self> {
        fs::create_dir_all(dir)
            .map_err(|e| Error::Parse(format!("output dir {}: {e}", dir.display())))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            format,
            manifest: RunManifest::new(command, model_path, &dir.display().to_string()),
        })
    }

    /// Writes one logical table from its CSV text, converting to JSON when
    /// requested, and records the file in the manifest.
    pub fn write_table(&mut self, stem: &str, csv_text: &str) -> Result<()> {
        let (name, bytes) = match self.format {
            Format::Csv => (format!("{stem}.csv"), csv_text.as_bytes().to_vec()),
            Format::Json => (format!("{stem}.json"), csv_to_json(csv_text).into_bytes()),
        };
        self.write_raw(&name, &bytes)
    }

    fn write_raw(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, bytes).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        self.manifest.record_file(name, bytes);
        Ok(())
    }

    /// Writes `manifest.json` and returns the list of emitted files.
    pub fn finish(self) -> Result<Vec<String>> {
        let names: Vec<String> = self.manifest.files.iter().map(|f| f.name.clone()).collect();
        let path = self.dir.join("manifest.json");
        fs::write(&path, self.manifest.to_json())
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Ok(names)
    }
}

/// Lossless, deterministic JSON view of a CSV table: column names, rows
/// with numbers where fields parse as numbers, and `#` comment lines kept
/// verbatim.
fn csv_to_json(csv_text: &str) -> String {
    let mut lines = csv_text.lines();
    let columns: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
    let mut rows = Vec::new();
    let mut comments = Vec::new();
    for line in lines {
        if line.starts_with('#') {
            comments.push(serde_json::Value::String(line.to_string()));
            continue;
        }
        let row: Vec<serde_json::Value> = line
            .split(',')
            .map(|field| match field.parse::<f64>() {
                Ok(x) if x.is_finite() => serde_json::json!(x),
                _ => serde_json::Value::String(field.to_string()),
            })
            .collect();
        rows.push(serde_json::Value::Array(row));
    }
    let value = serde_json::json!({
        "columns": columns,
        "rows": rows,
        "comments": comments,
    });
    let mut text = serde_json::to_string_pretty(&value).expect("table serializes");
    text.push('\n');
    text
}
