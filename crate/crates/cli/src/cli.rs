//! Argument parsing and dispatch.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use conj_core::EnumerationPlan;

use crate::arcs;
use crate::commands::{self, CliError, PlanFlags};
use crate::format::{parse_structure, parse_system, read};
use crate::gallery;
use crate::report::{Report, ReplayToken, EXIT_INPUT_ERROR};

#[derive(Debug, Parser)]
#[command(name = "conjcheck", version, about = "Checks conjugation semigroups, Schreier extensions, crossed data and admissibility diagrams")]
pub struct Cli {
    /// exhaustive, bounded=N or sampled=N. Defaults to exhaustive on finite
    /// inputs and sampled=1000 otherwise.
    #[arg(long, global = true, value_parser = parse_plan)]
    pub plan: Option<EnumerationPlan>,
    /// Seed for sampled plans.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Re-evaluate a witness printed by an earlier run.
    #[arg(long, global = true, value_name = "WITNESS")]
    pub replay: Option<String>,
    /// Where to write the arc data (demo-arcs) or the report as JSON.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Axioms, cancellation, derived identities and Ore for one structure.
    Verify { path: PathBuf },
    /// Schreier retraction, its laws and the semidirect round trip.
    Schreier { path: PathBuf },
    /// Equivariance, Peiffer and kernel-group conditions, and the internal
    /// graph, category or groupoid they give.
    Classify { path: PathBuf },
    /// Admissibility criterion against the closure oracle.
    Admissible { path: PathBuf },
    /// Samples composable arcs on the rational circle and checks composition.
    DemoArcs {
        #[arg(long, default_value_t = arcs::DEFAULT_COUNT)]
        count: usize,
    },
    /// The built-in suite with its expected failures.
    Gallery,
}

fn parse_plan(s: &str) -> Result<EnumerationPlan, String> {
    s.parse().map_err(|e: conj_core::PlanError| e.to_string())
}

fn write_json(path: &Path, report: &Report) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report).expect("reports serialize");
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let flags = PlanFlags { plan: cli.plan, seed: cli.seed };
    let report = match &cli.command {
        Command::Verify { path } => commands::verify(&parse_structure(&read(path)?)?, &flags)?,
        Command::Schreier { path } => commands::schreier(&parse_system(&read(path)?)?, &flags)?,
        Command::Classify { path } => commands::classify_cmd(&parse_system(&read(path)?)?, &flags)?,
        Command::Admissible { path } => commands::admissible(&parse_system(&read(path)?)?, &flags)?,
        Command::DemoArcs { count } => return arcs::demo_arcs(*count, flags.seed.unwrap_or(0), cli.out.as_deref()),
        Command::Gallery => gallery::gallery(&flags)?,
    };
    if let Some(out) = &cli.out {
        write_json(out, &report)?;
    }
    Ok(report)
}

/// Runs a parsed command line, printing to stdout and stderr, and returns
/// the exit status.
pub fn run(cli: &Cli) -> i32 {
    let token = match cli.replay.as_deref().map(ReplayToken::decode).transpose() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: malformed --replay token: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let report = match execute(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    match token {
        Some(token) => {
            let r = commands::replay(&report, &token);
            println!("{}", r.text);
            r.exit
        }
        None => {
            print!("{}", report.render());
            report.exit_code()
        }
    }
}
