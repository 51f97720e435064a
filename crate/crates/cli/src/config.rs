//! Run configuration resolved from flags, a TOML file, the environment and
//! built-in defaults, in that order of precedence.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use qclass_core::Tolerances;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const SEED_ENV: &str = "QCLASS_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Cli,
    File,
    Env,
    Default,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: u64,
    pub grid_resolution: usize,
    pub orbit_restarts: usize,
    pub orbit_budget: usize,
    pub tolerances: Tolerances,
    /// Where results go; does not affect their content.
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 10_000,
            grid_resolution: 64,
            orbit_restarts: 20,
            orbit_budget: 20_000,
            tolerances: Tolerances::default(),
            output_path: None,
        }
    }
}

/// Contents of a `--config` file. Every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    seed: Option<u64>,
    samples: Option<u64>,
    grid_resolution: Option<usize>,
    orbit_restarts: Option<usize>,
    orbit_budget: Option<usize>,
    output: Option<PathBuf>,
    #[serde(default)]
    tolerances: BTreeMap<String, f64>,
}

/// Values given on the command line.
#[derive(Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub grid_resolution: Option<usize>,
    pub orbit_restarts: Option<usize>,
    pub orbit_budget: Option<usize>,
    pub tolerances: Vec<String>,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Resolved {
    pub config: RunConfig,
    pub sources: BTreeMap<&'static str, Source>,
}

fn pick<T>(cli: Option<T>, file: Option<T>, default: T) -> (T, Source) {
    match (cli, file) {
        (Some(v), _) => (v, Source::Cli),
        (None, Some(v)) => (v, Source::File),
        (None, None) => (default, Source::Default),
    }
}

fn parse_tolerance(spec: &str) -> CliResult<(String, f64)> {
    let (name, value) = spec.split_once('=').ok_or_else(|| {
        CliError::schema(format!("tolerance override `{spec}` is not NAME=VALUE"))
    })?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|e| CliError::schema(format!("tolerance `{name}`: {e}")))?;
    if !(value.is_finite() && value >= 0.0) {
        return Err(CliError::schema(format!(
            "tolerance `{name}` must be finite and nonnegative"
        )));
    }
    Ok((name.trim().to_string(), value))
}

fn read_file(path: &Path) -> CliResult<FileConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    toml::from_str(&text).map_err(|e| CliError::schema(format!("{}: {e}", path.display())))
}

pub fn resolve(
    cli: Overrides,
    file: Option<&Path>,
    env_seed: Option<String>,
) -> CliResult<Resolved> {
    let file = match file {
        Some(p) => read_file(p)?,
        None => FileConfig::default(),
    };
    let defaults = RunConfig::default();
    let mut sources = BTreeMap::new();

    let env_seed = env_seed
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|e| CliError::schema(format!("{SEED_ENV}=`{s}`: {e}")))
        })
        .transpose()?;
    let (seed, seed_source) = match (cli.seed, file.seed, env_seed) {
        (Some(v), _, _) => (v, Source::Cli),
        (None, Some(v), _) => (v, Source::File),
        (None, None, Some(v)) => (v, Source::Env),
        (None, None, None) => (defaults.seed, Source::Default),
    };
    sources.insert("seed", seed_source);

    let (samples, s) = pick(cli.samples, file.samples, defaults.samples);
    sources.insert("samples", s);
    let (grid_resolution, s) = pick(
        cli.grid_resolution,
        file.grid_resolution,
        defaults.grid_resolution,
    );
    sources.insert("grid_resolution", s);
    let (orbit_restarts, s) = pick(
        cli.orbit_restarts,
        file.orbit_restarts,
        defaults.orbit_restarts,
    );
    sources.insert("orbit_restarts", s);
    let (orbit_budget, s) = pick(cli.orbit_budget, file.orbit_budget, defaults.orbit_budget);
    sources.insert("orbit_budget", s);
    let (output_path, _) = pick(cli.output.map(Some), file.output.map(Some), None);

    let mut tolerances = Tolerances::default();
    let mut tol_source = Source::Default;
    for (name, value) in &file.tolerances {
        if !tolerances.set(name, *value) {
            return Err(CliError::schema(format!(
                "unknown tolerance `{name}` in config file"
            )));
        }
        tol_source = Source::File;
    }
    for spec in &cli.tolerances {
        let (name, value) = parse_tolerance(spec)?;
        if !tolerances.set(&name, value) {
            return Err(CliError::schema(format!(
                "unknown tolerance `{name}` (expected boundary, simplex or orbit)"
            )));
        }
        tol_source = Source::Cli;
    }
    sources.insert("tolerances", tol_source);

    let config = RunConfig {
        seed,
        samples,
        grid_resolution,
        orbit_restarts,
        orbit_budget,
        tolerances,
        output_path,
    };
    if config.samples < 1 {
        return Err(CliError::schema("samples must be at least 1"));
    }
    if config.grid_resolution < 2 {
        return Err(CliError::schema("grid resolution must be at least 2"));
    }
    if config.orbit_restarts < 1 {
        return Err(CliError::schema("orbit restarts must be at least 1"));
    }
    Ok(Resolved { config, sources })
}

/// SHA-256 of the canonical JSON of the command, its parameters and the
/// resolved configuration.
pub fn config_hash(command: &str, parameters: &serde_json::Value, config: &RunConfig) -> String {
    let canonical = serde_json::to_vec(&(command, parameters, config)).expect("serializable");
    Sha256::digest(&canonical)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "seed = 5\nsamples = 7\n[tolerances]\norbit = 1e-5\n").unwrap();

        let r = resolve(Overrides::default(), None, Some("9".into())).unwrap();
        assert_eq!((r.config.seed, r.sources["seed"]), (9, Source::Env));

        let r = resolve(Overrides::default(), Some(&path), Some("9".into())).unwrap();
        assert_eq!((r.config.seed, r.sources["seed"]), (5, Source::File));
        assert_eq!(r.config.samples, 7);
        assert_eq!(r.config.tolerances.orbit, 1e-5);

        let cli = Overrides {
            seed: Some(1),
            tolerances: vec!["orbit=1e-4".into()],
            ..Default::default()
        };
        let r = resolve(cli, Some(&path), Some("9".into())).unwrap();
        assert_eq!((r.config.seed, r.sources["seed"]), (1, Source::Cli));
        assert_eq!(
            (r.config.tolerances.orbit, r.sources["tolerances"]),
            (1e-4, Source::Cli)
        );
        assert_eq!(r.sources["grid_resolution"], Source::Default);
    }

    #[test]
    fn rejects_bad_values() {
        let bad = |o: Overrides| resolve(o, None, None).unwrap_err().kind;
        use crate::error::Kind::Schema;
        assert_eq!(
            bad(Overrides {
                samples: Some(0),
                ..Default::default()
            }),
            Schema
        );
        assert_eq!(
            bad(Overrides {
                grid_resolution: Some(1),
                ..Default::default()
            }),
            Schema
        );
        assert_eq!(
            bad(Overrides {
                tolerances: vec!["nope=1".into()],
                ..Default::default()
            }),
            Schema
        );
        assert_eq!(
            bad(Overrides {
                tolerances: vec!["orbit".into()],
                ..Default::default()
            }),
            Schema
        );
        assert!(resolve(Overrides::default(), None, Some("x".into())).is_err());
    }

    #[test]
    fn hash_tracks_content_not_output_path() {
        let a = RunConfig::default();
        let b = RunConfig {
            output_path: Some("x".into()),
            ..RunConfig::default()
        };
        let c = RunConfig {
            seed: 1,
            ..RunConfig::default()
        };
        let p = serde_json::json!({});
        assert_eq!(config_hash("sample", &p, &a), config_hash("sample", &p, &b));
        assert_ne!(config_hash("sample", &p, &a), config_hash("sample", &p, &c));
        assert_eq!(config_hash("sample", &p, &a).len(), 64);
    }
}
