use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const GIT_DESCRIBE: &str = env!("HONEYFLOW_GIT_DESCRIBE");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub experiment: String,
    pub seed: u64,
    pub trials: usize,
    pub git_describe: String,
    pub version: String,
    /// Echo of the parameters the report was produced with.
    pub params: serde_json::Value,
    /// Only filled for timing runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub machine: Option<Machine>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Machine {
    pub os: String,
    pub arch: String,
    pub threads: usize,
}

impl Machine {
    pub fn current() -> Self {
        Machine {
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            threads: rayon::current_num_threads(),
        }
    }
}

impl Metadata {
    pub fn new(experiment: &str, seed: u64, trials: usize, params: &impl Serialize) -> Result<Self> {
        Ok(Metadata {
            experiment: experiment.to_string(),
            seed,
            trials,
            git_describe: GIT_DESCRIBE.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            params: serde_json::to_value(params)?,
            machine: None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport<R> {
    pub metadata: Metadata,
    pub rows: Vec<R>,
}

impl<R: Serialize> ExperimentReport<R> {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn metadata_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.metadata)? + "\n")
    }

    /// Writes the CSV to `path` and the metadata to `<path>.meta.json`.
    /// Returns the sidecar path.
    pub fn write_files(&self, path: &Path) -> Result<PathBuf> {
        fs::write(path, self.to_csv_string()?)?;
        let mut sidecar = path.as_os_str().to_owned();
        sidecar.push(".meta.json");
        let sidecar = PathBuf::from(sidecar);
        fs::write(&sidecar, self.metadata_json()?)?;
        Ok(sidecar)
    }
}
