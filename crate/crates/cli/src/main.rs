mod args;
mod commands;
mod config;
mod error;
mod output;

use clap::Parser;

use args::{Cli, Command};
use config::{Overrides, SEED_ENV};
use error::{CliError, CliResult};

fn overrides(cli: &Cli) -> Overrides {
    let g = &cli.global;
    let mut o = Overrides {
        seed: g.seed,
        tolerances: g.tolerances.clone(),
        output: g.output.clone(),
        ..Default::default()
    };
    match &cli.command {
        Command::Classify(a) => {
            o.orbit_restarts = a.restarts;
            o.orbit_budget = a.budget;
        }
        Command::Minimize(a) => {
            o.orbit_restarts = a.restarts;
            o.orbit_budget = a.budget;
        }
        Command::Sample(a) => o.samples = a.n,
        Command::Radius(a) => o.grid_resolution = a.resolution,
        Command::Figures(a) => o.grid_resolution = a.resolution,
        Command::Kernel(_) | Command::Polytope(_) => {}
    }
    o
}

fn run(cli: Cli) -> CliResult<()> {
    let resolved = config::resolve(
        overrides(&cli),
        cli.global.config.as_deref(),
        std::env::var(SEED_ENV).ok(),
    )?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.global.threads {
        if n == 0 {
            return Err(CliError::schema("--threads must be at least 1"));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::schema(format!("thread pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Classify(a) => commands::classify(a, &resolved),
        Command::Kernel(a) => commands::kernel(a, &resolved),
        Command::Polytope(a) => commands::polytope(a, &resolved),
        Command::Minimize(a) => commands::minimize(a, &resolved),
        Command::Sample(a) => commands::sample(a, &resolved),
        Command::Radius(a) => commands::radius(a, &resolved),
        Command::Figures(a) => commands::figures(a, &resolved),
    })
}

fn main() {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.kind.exit_code());
    }
}
