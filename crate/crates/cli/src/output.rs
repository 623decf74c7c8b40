//! Row output (CSV or JSON) and run manifests.

use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::CliError;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: &'static str,
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub timestamp: u64,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(
        command: &'static str,
        params: &impl Serialize,
        seed: Option<u64>,
    ) -> Result<Self, CliError> {
        Ok(RunManifest {
            command,
            params: serde_json::to_value(params)?,
            seed,
            version: env!("CARGO_PKG_VERSION"),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            outputs: Vec::new(),
        })
    }

    /// Writes `<first output>.manifest.json`; nothing when all output went to stdout.
    pub fn finish(self) -> Result<(), CliError> {
        let Some(first) = self.outputs.first() else {
            return Ok(());
        };
        let path = manifest_path(first);
        let mut file = File::create(&path)?;
        serde_json::to_writer_pretty(&mut file, &self)?;
        writeln!(file)?;
        Ok(())
    }
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

/// Writes `rows` as CSV (header from field names) or as a JSON array, to
/// `path` or stdout, and records the path in the manifest.
pub fn emit<T: Serialize>(
    rows: &[T],
    json: bool,
    path: Option<&Path>,
    manifest: &mut RunManifest,
) -> Result<(), CliError> {
    let mut out = sink(path)?;
    if json {
        serde_json::to_writer_pretty(&mut out, rows)?;
        writeln!(out)?;
    } else {
        let mut w = csv::Writer::from_writer(&mut out);
        for row in rows {
            w.serialize(row)?;
        }
        w.flush()?;
    }
    out.flush()?;
    if let Some(p) = path {
        manifest.outputs.push(p.to_path_buf());
    }
    Ok(())
}
