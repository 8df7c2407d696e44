use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "origami-lab.manifest/1";
pub const FILE_NAME: &str = "manifest.json";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub schema: String,
    pub command: String,
    /// Arguments needed to reproduce the run, without `--out` and `--threads`.
    pub argv: Vec<String>,
    pub parameters: serde_json::Value,
    pub seed: u64,
    pub threads: Option<usize>,
    pub version: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
    pub wall_time_seconds: f64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Manifest, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let m: Manifest = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        if m.schema != SCHEMA {
            return Err(format!("unsupported manifest schema `{}` (expected `{SCHEMA}`)", m.schema));
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// Drop `--out`/`--threads` (and their values) from an argument list.
pub fn reproducible_argv(args: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        match a.as_str() {
            "--out" | "--threads" => skip = true,
            _ if a.starts_with("--out=") || a.starts_with("--threads=") => {}
            _ => out.push(a.clone()),
        }
    }
    out
}

/// Names whose hashes differ between two output maps, including names present on one side only.
pub fn differing(expected: &BTreeMap<String, String>, actual: &BTreeMap<String, String>) -> Vec<String> {
    let mut names: Vec<&String> = expected.keys().chain(actual.keys()).collect();
    names.sort();
    names.dedup();
    names.into_iter().filter(|n| expected.get(*n) != actual.get(*n)).cloned().collect()
}
