//! Golden regression fixtures: every headline analysis re-run against the
//! bundled reference model, with byte checksums pinned in
//! `goldens/manifest.json`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde::{Deserialize, Serialize};

use typea_stab_core::{Error, Result};

use crate::manifest::sha256_hex;
use crate::{cmds, Cli, RegenGoldensArgs};

/// One golden fixture: a CLI invocation and the data files it pins.
struct GoldenSpec {
    name: &'static str,
    args: &'static [&'static str],
}

/// The full golden set; one fixture per headline analysis output.
const GOLDEN_SET: &[GoldenSpec] = &[
    GoldenSpec {
        name: "torque_slip",
        args: &["torque-curves", "--v", "1.0", "--s=-0.4:0.4:801"],
    },
    GoldenSpec {
        name: "torque_families_wind",
        args: &[
            "torque-curves",
            "--v",
            "0.6,0.8,0.9,1.0,1.1",
            "--s",
            "0:0.4:401",
        ],
    },
    GoldenSpec {
        name: "shifted_field_v06",
        args: &[
            "lyapunov",
            "--v",
            "0.6",
            "--window=-0.05:0.05",
            "--n",
            "201",
        ],
    },
    GoldenSpec {
        name: "shifted_field_v08",
        args: &[
            "lyapunov",
            "--v",
            "0.8",
            "--window=-0.05:0.05",
            "--n",
            "201",
        ],
    },
    GoldenSpec {
        name: "shifted_field_v10",
        args: &[
            "lyapunov",
            "--v",
            "1.0",
            "--window=-0.05:0.05",
            "--n",
            "201",
        ],
    },
    GoldenSpec {
        name: "lyapunov_v06",
        args: &[
            "lyapunov",
            "--v",
            "0.6",
            "--window=-0.01:0.01",
            "--n",
            "401",
        ],
    },
    GoldenSpec {
        name: "lyapunov_v10",
        args: &[
            "lyapunov",
            "--v",
            "1.0",
            "--window=-0.01:0.01",
            "--n",
            "401",
        ],
    },
    GoldenSpec {
        name: "lyapunov_v105",
        args: &[
            "lyapunov",
            "--v",
            "1.05",
            "--window=-0.01:0.01",
            "--n",
            "401",
        ],
    },
    GoldenSpec {
        name: "region_of_attraction",
        args: &["roa", "--s", "0:0.5:15", "--v", "0.6:1.2:12"],
    },
    GoldenSpec {
        name: "compensation_sweep",
        args: &["sweep-comp", "--yc", "0,0.1,0.2,0.25", "--s", "0:0.4:401"],
    },
    GoldenSpec {
        name: "rotor_resistance_sweep",
        args: &["sweep-rotor", "--r", "1,2,3,4", "--s", "0:0.4:401"],
    },
];

#[derive(Debug, Serialize, Deserialize)]
struct GoldenEntry {
    name: String,
    command: Vec<String>,
    /// file name -> sha256 of its bytes
    files: BTreeMap<String, String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GoldenManifest {
    fixtures: Vec<GoldenEntry>,
}

pub fn run(cli: &Cli, args: &RegenGoldensArgs) -> Result<ExitCode> {
    let stored: Option<GoldenManifest> = read_manifest(&args.goldens_dir)?;
    let mut produced = Vec::with_capacity(GOLDEN_SET.len());
    let mut drifted: Vec<String> = Vec::new();

    for (idx, spec) in GOLDEN_SET.iter().enumerate() {
        let tmp = scratch_dir(idx)?;
        let files = run_fixture(cli, spec, &tmp)?;
        let expected = stored
            .as_ref()
            .and_then(|m| m.fixtures.iter().find(|f| f.name == spec.name));
        match expected {
            Some(entry) => {
                for (name, sha) in &files {
                    if entry.files.get(name) != Some(sha) {
                        drifted.push(format!("{}/{}", spec.name, name));
                    }
                }
                for name in entry.files.keys() {
                    if !files.contains_key(name) {
                        drifted.push(format!("{}/{} (missing)", spec.name, name));
                    }
                }
                // the stored copies must match their recorded checksums too
                for (name, sha) in &entry.files {
                    let stored = args.goldens_dir.join(spec.name).join(name);
                    match fs::read(&stored) {
                        Ok(bytes) if &sha256_hex(&bytes) == sha => {}
                        Ok(_) => {
                            drifted.push(format!("{}/{} (stored file corrupted)", spec.name, name))
                        }
                        Err(_) => {
                            drifted.push(format!("{}/{} (stored file unreadable)", spec.name, name))
                        }
                    }
                }
            }
            None => drifted.push(format!("{} (new fixture)", spec.name)),
        }
        if !args.check {
            install_fixture(&args.goldens_dir, spec.name, &tmp, &files)?;
        }
        fs::remove_dir_all(&tmp).ok();
        produced.push(GoldenEntry {
            name: spec.name.to_string(),
            command: spec.args.iter().map(|s| s.to_string()).collect(),
            files,
        });
    }
    if let Some(m) = &stored {
        for entry in &m.fixtures {
            if !GOLDEN_SET.iter().any(|s| s.name == entry.name) {
                drifted.push(format!("{} (stale fixture)", entry.name));
            }
        }
    }

    drifted.sort();
    drifted.dedup();
    if args.check {
        if drifted.is_empty() {
            println!("goldens: no drift ({} fixtures)", GOLDEN_SET.len());
            Ok(ExitCode::SUCCESS)
        } else {
            eprintln!("goldens: drift in {} file(s):", drifted.len());
            for name in &drifted {
                eprintln!("  {name}");
            }
            Ok(ExitCode::from(1))
        }
    } else {
        write_manifest(&args.goldens_dir, &GoldenManifest { fixtures: produced })?;
        if drifted.is_empty() {
            println!("goldens: regenerated, no drift");
        } else {
            println!("goldens: regenerated, {} file(s) changed:", drifted.len());
            for name in &drifted {
                println!("  {name}");
            }
        }
        Ok(ExitCode::SUCCESS)
    }
}

/// Runs one fixture into `tmp` and returns name -> sha256 of each data file.
fn run_fixture(cli: &Cli, spec: &GoldenSpec, tmp: &Path) -> Result<BTreeMap<String, String>> {
    let mut argv: Vec<String> = vec![
        "typea-stab".into(),
        "--model".into(),
        cli.model.display().to_string(),
        "--output-dir".into(),
        tmp.display().to_string(),
        "--format".into(),
        "csv".into(),
    ];
    argv.extend(spec.args.iter().map(|s| s.to_string()));
    let parsed = Cli::try_parse_from(&argv)
        .map_err(|e| Error::Parse(format!("golden {}: {e}", spec.name)))?;
    cmds::run(&parsed)?;
    let mut files = BTreeMap::new();
    let mut entries: Vec<PathBuf> = fs::read_dir(tmp)
        .map_err(|e| Error::Parse(format!("{}: {e}", tmp.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    entries.sort();
    for path in entries {
        let name = path
            .file_name()
            .and_then(|n| n.to_str())
            .unwrap_or_default()
            .to_string();
        if name == "manifest.json" {
            continue;
        }
        let bytes =
            fs::read(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        files.insert(name, sha256_hex(&bytes));
    }
    Ok(files)
}

fn install_fixture(
    goldens_dir: &Path,
    name: &str,
    tmp: &Path,
    files: &BTreeMap<String, String>,
) -> Result<()> {
    let dir = goldens_dir.join(name);
    fs::create_dir_all(&dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    for file in files.keys() {
        fs::copy(tmp.join(file), dir.join(file))
            .map_err(|e| Error::Parse(format!("copy {file}: {e}")))?;
    }
    Ok(())
}

fn read_manifest(goldens_dir: &Path) -> Result<Option<GoldenManifest>> {
    let path = goldens_dir.join("manifest.json");
    if !path.exists() {
        return Ok(None);
    }
    let text =
        fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let manifest = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(Some(manifest))
}

fn write_manifest(goldens_dir: &Path, manifest: &GoldenManifest) -> Result<()> {
    fs::create_dir_all(goldens_dir)
        .map_err(|e| Error::Parse(format!("{}: {e}", goldens_dir.display())))?;
    let path = goldens_dir.join("manifest.json");
    let mut text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    text.push('\n');
    fs::write(&path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn scratch_dir(idx: usize) -> Result<PathBuf> {
    let dir = std::env::temp_dir().join(format!("typea-stab-goldens-{}-{idx}", std::process::id()));
    if dir.exists() {
        fs::remove_dir_all(&dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    }
    fs::create_dir_all(&dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    Ok(dir)
}
