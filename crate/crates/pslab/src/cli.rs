//! Argument parsing and the run loop shared by every subcommand.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::cache::SieveCache;
use crate::commands::{self, Context};
use crate::error::CliError;
use crate::exec::Pool;
use crate::output::{self, Manifest, Table};
use crate::params::{parse_u64, Params};

#[derive(Debug, Parser)]
#[command(name = "pslab", version, about = "Experiments on linear equations in Piatetski-Shapiro primes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count primes in PS_{1/γ} up to x.
    PsCount(Params),
    /// Weighted k-term arithmetic progressions up to X.
    ApCount(Params),
    /// Weighted representations N = n1 + n2 + n3.
    Goldbach3(Params),
    /// Compare PS-prime and prime sums twisted by a phase or nilsequence.
    Discorrelate(Params),
    /// Check the sawtooth approximation and its error majorant.
    SawtoothCheck(Params),
    /// Van der Corput's second-derivative estimate for h·n^γ.
    VdcCheck(Params),
    /// Erdős–Turán inequality on random sequences.
    EtCheck(Params),
    /// Brute-force Gowers norm on Z_N.
    Gowers(Params),
    /// Majorization of the W-tricked PS primes by ν.
    MajorantCheck(Params),
    /// Average of ν over a system of linear forms on Z_N.
    LffAverage(Params),
    /// Exponential sum of Σ h_i ψ_i(x)^γ over an interval.
    PhaseSum(Params),
    /// Local densities β_p of a linear system.
    LocalDensity(Params),
}

impl Command {
    pub fn split(self) -> (&'static str, Params) {
        match self {
            Command::PsCount(p) => ("ps-count", p),
            Command::ApCount(p) => ("ap-count", p),
            Command::Goldbach3(p) => ("goldbach3", p),
            Command::Discorrelate(p) => ("discorrelate", p),
            Command::SawtoothCheck(p) => ("sawtooth-check", p),
            Command::VdcCheck(p) => ("vdc-check", p),
            Command::EtCheck(p) => ("et-check", p),
            Command::Gowers(p) => ("gowers", p),
            Command::MajorantCheck(p) => ("majorant-check", p),
            Command::LffAverage(p) => ("lff-average", p),
            Command::PhaseSum(p) => ("phase-sum", p),
            Command::LocalDensity(p) => ("local-density", p),
        }
    }
}

#[derive(Debug)]
pub struct RunSummary {
    pub csv: PathBuf,
    pub table: Table,
    pub manifest: Manifest,
}

/// Merges the config file (if any) under the flags, runs the command, and
/// writes the CSV and its manifest.
pub fn run(command: &str, flags: Params) -> Result<RunSummary, CliError> {
    let spec = commands::find(command).ok_or_else(|| CliError::Config(format!("unknown command `{command}`")))?;
    let base = match &flags.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            Params::from_json(&text)?
        }
        None => Params::default(),
    };
    if let Some(c) = &base.command {
        if c != command {
            return Err(CliError::Config(format!("config is for `{c}`, not `{command}`")));
        }
    }
    let mut params = base.overlay(Params { config: None, ..flags });
    params.command = None;
    params.check_keys(command, spec.keys)?;

    let threads = parse_u64("threads", params.threads.as_deref().unwrap_or("0"))? as usize;
    let pool = Pool::new(threads).map_err(|e| CliError::Config(format!("cannot start {threads} threads: {e}")))?;
    let ctx = Context {
        seed: parse_u64("seed", params.seed.as_deref().unwrap_or("0"))?,
        cache: SieveCache::from_env(),
        pool,
    };
    let start = Instant::now();
    let outcome = (spec.run)(&params, &ctx)?;
    let wall = start.elapsed().as_secs_f64();

    let csv = PathBuf::from(params.out.clone().unwrap_or_else(|| format!("{command}.csv")));
    let manifest = Manifest {
        manifest_version: output::MANIFEST_VERSION,
        command: command.to_string(),
        config: Params {
            command: Some(command.to_string()),
            ..params
        },
        gamma_path: outcome
            .gamma
            .as_ref()
            .map(|g| if g.is_exact() { "exact" } else { "certified" }),
        gamma: outcome.gamma.as_ref().map(|g| g.describe()),
        threads: ctx.pool.threads(),
        wall_time_seconds: wall,
        csv: csv.clone(),
        versions: output::versions(),
    };
    output::write_outputs(&csv, &outcome.table, &manifest)?;
    Ok(RunSummary {
        csv,
        table: outcome.table,
        manifest,
    })
}
