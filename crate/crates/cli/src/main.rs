mod config;
mod error;
mod run;
mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use sha2::{Digest, Sha256};

use config::{Format, RunConfig, Scenario};
use error::CliError;
use run::{Ctx, SweepArgs};

#[derive(Debug, Parser)]
#[command(name = "tpqhe", version, about = "Two-photon pumped heat engine models")]
struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Overrides the format in the config.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coherent and thermal population curves with the mismatch summary.
    Populations,
    /// Effective hot-bath fit.
    BathFit,
    /// Maximum power and efficiency over a τ × c_p grid.
    EngineSweep(SweepArgs),
    /// Bandwidths of the efficiency-bound tables.
    Bounds(SweepArgs),
    /// Spectroscopic power maxima over a τ × c_p grid.
    Spectro(SweepArgs),
    /// Joint spectral intensity of the down-converted pair.
    Spdc,
    /// Named invariant checks.
    OracleCheck,
}

impl Command {
    fn scenario(&self) -> Scenario {
        match self {
            Command::Populations => Scenario::Populations,
            Command::BathFit => Scenario::BathFit,
            Command::EngineSweep(_) => Scenario::EngineSweep,
            Command::Bounds(_) => Scenario::Bounds,
            Command::Spectro(_) => Scenario::Spectro,
            Command::Spdc => Scenario::Spdc,
            Command::OracleCheck => Scenario::OracleCheck,
        }
    }

    fn sweep(&self) -> SweepArgs {
        match self {
            Command::EngineSweep(s) | Command::Bounds(s) | Command::Spectro(s) => s.clone(),
            _ => SweepArgs::default(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            let err = CliError::Config(msg.lines().next().unwrap_or("usage error").to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load(path: Option<&Path>) -> Result<(RunConfig, Option<String>), CliError> {
    match path {
        Some(p) => {
            let (cfg, text) = RunConfig::load(p)?;
            Ok((cfg, Some(text)))
        }
        None => Ok((RunConfig::parse("")?, None)),
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let scenario = cli.command.scenario();
    let (cfg, text) = load(cli.config.as_deref())?;
    if let Some(s) = cfg.scenario {
        if s != scenario {
            return Err(CliError::Config(format!(
                "config is for `{}`, not `{}`",
                s.label(),
                scenario.label()
            )));
        }
    }
    let format = cli.format.or(cfg.format).unwrap_or_default();
    let jobs = match cli.jobs {
        Some(0) => return Err(CliError::Config("--jobs must be at least 1".into())),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    std::fs::create_dir_all(&cli.out)?;

    let sweep = cli.command.sweep();
    let ctx = Ctx {
        cfg: &cfg,
        out: &cli.out,
        format,
        pool: &pool,
        sweep: &sweep,
    };
    let outcome = run::run(scenario, &ctx)?;

    let manifest = json!({
        "tool": "tpqhe",
        "version": env!("CARGO_PKG_VERSION"),
        "scenario": scenario.label(),
        "config_sha256": text.map(|t| hex(&Sha256::digest(t.as_bytes()))),
        "provenance": cfg.provenance,
        "format": format,
        "options": {
            "kind": sweep.kind.map(|k| format!("{k:?}").to_lowercase()),
            "tau_range": sweep.tau_range.map(|s| [s.min, s.max]),
            "cp_range": sweep.cp_range.map(|s| [s.min, s.max]),
            "grid": sweep.grid.map(|(n, m)| [n, m]),
        },
        "resolved": outcome.resolved,
        "artifacts": outcome.artifacts,
    });
    let mut body = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    body.push('\n');
    std::fs::write(cli.out.join("manifest.json"), body)?;

    for line in &outcome.lines {
        println!("{line}");
    }
    match outcome.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
