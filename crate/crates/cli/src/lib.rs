// Copyright (C) 2026, The maxdep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License in the LICENSE file at the
// root of this repository, or online at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Experiment harness for maxima of dependent sequences.
//!
//! Subcommands `diagonal`, `distortion`, `bound`, `converge` and `mixing`
//! each produce one table, written as CSV or JSON lines behind a metadata
//! line that records the full configuration and seed.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use maxdep::samplers::Execution;

pub mod commands;
pub mod config;
pub mod specs;
pub mod table;

pub use config::{Command, ExperimentConfig, Format, Params};
pub use table::{Cell, Table};

/// Seed used when neither flag, config file nor `MAXDEP_SEED` sets one.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// 2 for usage errors, 3 for numeric-domain errors, 1 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<maxdep::Error> for CliError {
    fn from(e: maxdep::Error) -> Self {
        use maxdep::Error as E;
        match e {
            E::InvalidParameter(_) | E::Unsupported(_) | E::Contract(_) => CliError::Usage(e.to_string()),
            E::Domain(_) | E::NoNormalizer(_) | E::UnknownRate(_) | E::Precision(_) => {
                CliError::Numeric(e.to_string())
            }
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "maxdep", version, about = "Limit laws of maxima of dependent sequences")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Diagonal δ_n(u) and its power distortion
    #[command(allow_negative_numbers = true)]
    Diagonal(Flags),
    /// Limit distortion, density and quantile
    #[command(allow_negative_numbers = true)]
    Distortion(Flags),
    /// Composite rate bounds along an n schedule
    #[command(allow_negative_numbers = true)]
    Bound(Flags),
    /// Monte Carlo convergence of normalized maxima
    #[command(allow_negative_numbers = true)]
    Converge(Flags),
    /// Block-dependence discrepancy trajectory
    #[command(allow_negative_numbers = true)]
    Mixing(Flags),
}

#[derive(Args)]
struct Flags {
    #[command(flatten)]
    params: Params,
    /// Flat key=value config file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads for Monte Carlo replications
    #[arg(long)]
    threads: Option<usize>,
}

/// Merge config file, flags and the environment seed into one configuration.
fn resolve(command: Command, flags: &Flags, env_seed: Option<&str>) -> Result<ExperimentConfig, CliError> {
    let mut cfg = ExperimentConfig::new(command);
    if let Some(path) = &flags.config {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let (file_cmd, params) = config::parse_kv(&text)?;
        if file_cmd.is_some_and(|c| c != command) {
            return Err(CliError::Usage(format!("config file is for `{}`", file_cmd.unwrap())));
        }
        cfg.params = params;
    }
    cfg.params.overlay(&flags.params);
    if let Some(s) = env_seed {
        let seed = s.trim().parse().map_err(|_| CliError::Usage(format!("MAXDEP_SEED `{s}` is not a 64-bit integer")))?;
        cfg.params.seed = Some(seed);
    }
    cfg.params.seed.get_or_insert(DEFAULT_SEED);
    Ok(cfg)
}

/// Run one configured experiment.
pub fn execute(cfg: &ExperimentConfig, exec: Execution) -> Result<Table, CliError> {
    let p = &cfg.params;
    match cfg.command {
        Command::Diagonal => commands::cmd_diagonal(p),
        Command::Distortion => commands::cmd_distortion(p),
        Command::Bound => commands::cmd_bound(p),
        Command::Converge => commands::cmd_converge(p, exec),
        Command::Mixing => commands::cmd_mixing(p),
    }
}

fn execute_with_threads(cfg: &ExperimentConfig, threads: Option<usize>) -> Result<Table, CliError> {
    match threads {
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        #[cfg(feature = "parallel")]
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Io(e.to_string()))?
            .install(|| execute(cfg, Execution::Parallel)),
        _ => execute(cfg, Execution::Parallel),
    }
}

/// Entry point shared by the binary and the tests. Tables go to `--out` when
/// given, otherwise to `stdout`.
pub fn run<I, T>(args: I, env_seed: Option<&str>, stdout: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            write!(stdout, "{e}")?;
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    let (command, flags) = match &cli.command {
        Sub::Diagonal(f) => (Command::Diagonal, f),
        Sub::Distortion(f) => (Command::Distortion, f),
        Sub::Bound(f) => (Command::Bound, f),
        Sub::Converge(f) => (Command::Converge, f),
        Sub::Mixing(f) => (Command::Mixing, f),
    };
    let cfg = resolve(command, flags, env_seed)?;
    let table = execute_with_threads(&cfg, flags.threads)?;
    let format = cfg.params.format.unwrap_or_default();
    match &cfg.params.out {
        Some(path) => {
            let mut f = io::BufWriter::new(fs::File::create(path)?);
            table.write(&cfg, format, &mut f)?;
            f.flush()?;
        }
        None => table.write(&cfg, format, stdout)?,
    }
    Ok(())
}
