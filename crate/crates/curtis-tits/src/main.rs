use clap::Parser;
use curtis_tits::cli::{self, Command, RunConfig};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

/// Curtis-Tits amalgam toolkit: classification, verification, oracles,
/// completion witnesses and presentation dumps.
#[derive(Parser, Debug)]
#[command(name = "ctamalg", version)]
struct Args {
    /// One of: classify, verify, oracle, complete, emit
    #[arg(long)]
    command: String,

    /// Field as "p^m", e.g. "2^2" for GF(4); requires p^m >= 4
    #[arg(long)]
    field: String,

    /// Path to the diagram file (vertex/edge lines)
    #[arg(long)]
    diagram: PathBuf,

    /// Optional path to a pointing file (delta lines); defaults to trivial
    #[arg(long)]
    pointing: Option<PathBuf>,

    /// Seed for sampled oracle cross-checks
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let code = match run(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            cli::EXIT_INPUT
        }
    };
    ExitCode::from(code as u8)
}

fn run(args: &Args) -> curtis_tits::Result<i32> {
    let command = Command::parse(&args.command)?;
    let diagram_text = fs::read_to_string(&args.diagram)?;
    let pointing_text = match &args.pointing {
        None => None,
        Some(p) => Some(fs::read_to_string(p)?),
    };
    let config = RunConfig {
        command,
        field: args.field.clone(),
        diagram_text,
        pointing_text,
        seed: args.seed,
    };
    let outcome = cli::run(&config)?;
    match &args.out {
        Some(path) => fs::write(path, outcome.report.as_bytes())?,
        None => print!("{}", outcome.report),
    }
    Ok(outcome.exit_code)
}
