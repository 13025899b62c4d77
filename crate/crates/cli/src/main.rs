//! `mset-ramsey`: runs one experiment and prints a JSON report.
//!
//! Exit codes: 0 for a completed run whatever the verdict, 1 for bad input
//! or usage, 2 when a configured cap is exceeded.

mod commands;
mod load;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use load::{CliError, InputRef, Inputs};

#[derive(Parser, Debug)]
#[command(name = "mset-ramsey", version, about = "Finite Ramsey experiments on M-sets, chains and forests")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Worker threads for arrow searches and trials; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for every random choice in the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest hom-set or carrier enumerated.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub cap: usize,
    /// Largest |hom(A,C)| searched exhaustively by the arrow engine.
    #[arg(long, global = true, default_value_t = 64)]
    pub exhaustive_cap: usize,
    /// Random colorings tried past the exhaustive cap.
    #[arg(long, global = true, default_value_t = 2000)]
    pub samples: usize,
    /// Print elapsed time to standard error.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate monoid, M-set, unary algebra, chain or forest files.
    Validate(commands::ValidateArgs),
    /// Check the comonad laws exhaustively on a small carrier.
    Laws(commands::LawsArgs),
    /// Decide C → (B)^A_{k,t}.
    ArrowCheck(commands::ArrowArgs),
    /// Bracket the small Ramsey degree of A.
    DegreeProbe(commands::ProbeArgs),
    /// Transport a chain witness to Ê(W) and certify it.
    Transport(commands::TransportArgs),
    /// Truncated big Ramsey experiment on Ê(ω_N).
    Bigramsey(commands::BigRamseyArgs),
    /// Sum per-ordering degrees over all orderings of A.
    DegreeBound(commands::DegreeBoundArgs),
    /// Encode an ordered rooted forest as an A† coalgebra.
    Forest(commands::ForestArgs),
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    inputs: Vec<InputRef>,
    parameters: serde_json::Value,
    verdicts: serde_json::Value,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let started = Instant::now();
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.threads.max(1))
        .build_global()
        .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    let mut inputs = Inputs::default();
    let (command, parameters, verdicts) = commands::dispatch(&cli.command, &cli.global, &mut inputs)?;
    let report = RunReport {
        command,
        inputs: inputs.refs,
        parameters,
        verdicts,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    match &cli.global.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("--out {}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    if cli.global.timing {
        eprintln!("elapsed: {:.3} s", started.elapsed().as_secs_f64());
    }
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
