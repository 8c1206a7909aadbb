//! Run manifests: input/output digests, configuration, and wall clock.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug, Serialize)]
pub struct RunConfig {
    pub budget: u64,
    pub max_stages: usize,
    pub prune: bool,
    pub window: usize,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub config: RunConfig,
    pub outputs: BTreeMap<String, String>,
    pub wall_clock_ms: u64,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().fold(String::new(), |mut acc, b| {
        acc.push_str(&format!("{b:02x}"));
        acc
    })
}

/// Collects outputs, digests everything, and writes the manifest last.
pub struct RunWriter {
    out_dir: PathBuf,
    command: Vec<String>,
    config: RunConfig,
    inputs: BTreeMap<String, String>,
    outputs: BTreeMap<String, String>,
    started: Instant,
}

impl RunWriter {
    pub fn new(out_dir: &Path, command: &[String], config: RunConfig) -> std::io::Result<Self> {
        fs::create_dir_all(out_dir)?;
        Ok(RunWriter {
            out_dir: out_dir.to_path_buf(),
            command: command.to_vec(),
            config,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            started: Instant::now(),
        })
    }

    /// Reads an input file and records its digest.
    pub fn read_input(&mut self, path: &Path) -> std::io::Result<String> {
        let bytes = fs::read(path)?;
        self.inputs
            .insert(path.display().to_string(), sha256_hex(&bytes));
        Ok(String::from_utf8_lossy(&bytes).into_owned())
    }

    /// Writes one output file atomically and records its digest.
    pub fn write_output(&mut self, name: &str, contents: &str) -> std::io::Result<()> {
        let path = self.out_dir.join(name);
        let tmp = self.out_dir.join(format!(".{name}.tmp"));
        fs::write(&tmp, contents)?;
        fs::rename(&tmp, &path)?;
        self.outputs
            .insert(name.to_string(), sha256_hex(contents.as_bytes()));
        Ok(())
    }

    /// Writes the manifest; call once, after all outputs.
    pub fn finish(self) -> std::io::Result<()> {
        let manifest = RunManifest {
            command: self.command,
            inputs: self.inputs,
            config: self.config,
            outputs: self.outputs,
            wall_clock_ms: self.started.elapsed().as_millis() as u64,
        };
        let value = serde_json::to_value(&manifest).expect("manifest serializes");
        let line = format!("{value}\n");
        let tmp = self.out_dir.join(".manifest.json.tmp");
        fs::write(&tmp, &line)?;
        fs::rename(tmp, self.out_dir.join("manifest.json"))?;
        Ok(())
    }
}
