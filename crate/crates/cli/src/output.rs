use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::{config_hash, Resolved, RunConfig, Source};
use crate::error::{CliError, CliResult};

#[derive(Debug, Serialize)]
pub struct Metadata<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub core_version: &'static str,
    pub command: &'a str,
    pub seed: u64,
    pub config_hash: String,
    pub config: &'a RunConfig,
    pub sources: &'a BTreeMap<&'static str, Source>,
    pub parameters: &'a serde_json::Value,
}

impl<'a> Metadata<'a> {
    pub fn new(
        command: &'a str,
        parameters: &'a serde_json::Value,
        resolved: &'a Resolved,
    ) -> Self {
        Self {
            tool: "qclass",
            version: env!("CARGO_PKG_VERSION"),
            core_version: qclass_core::VERSION,
            command,
            seed: resolved.config.seed,
            config_hash: config_hash(command, parameters, &resolved.config),
            config: &resolved.config,
            sources: &resolved.sources,
            parameters,
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    metadata: &'a Metadata<'a>,
    result: &'a T,
}

pub fn to_json<T: Serialize>(metadata: &Metadata, result: &T) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { metadata, result }).expect("serializable");
    s.push('\n');
    s
}

fn write_file(path: &Path, content: &str) -> CliResult<()> {
    std::fs::write(path, content).map_err(|e| CliError::io(path, e))
}

/// Sends `content` to `path`, or to stdout without one. The one-line
/// `summary` always goes to stderr so stdout carries only data.
pub fn emit(path: Option<&Path>, content: &str, summary: &str) -> CliResult<()> {
    match path {
        Some(p) => {
            write_file(p, content)?;
            eprintln!("{summary} -> {}", p.display());
        }
        None => {
            print!("{content}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

/// Like [`emit`] for CSV, plus a `<path>.meta.json` sidecar with the
/// metadata when writing to a file.
pub fn emit_csv(
    path: Option<&Path>,
    csv: &str,
    metadata: &Metadata,
    summary: &str,
) -> CliResult<()> {
    emit(path, csv, summary)?;
    if let Some(p) = path {
        write_file(&sidecar(p), &to_json(metadata, &serde_json::Value::Null))?;
    }
    Ok(())
}

pub fn sidecar(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Nine significant digits for human-readable summaries.
pub fn sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-5..9).contains(&exponent) {
        let decimals = (8 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.8e}")
    }
}
