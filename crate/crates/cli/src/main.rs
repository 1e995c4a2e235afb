use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use folnerlab_cli::config::load_config;
use folnerlab_cli::experiments::{self, Context, ExperimentError, ExperimentOutcome};

/// Finite-section spectral laboratory over Følner exhaustions.
#[derive(Parser)]
#[command(name = "folnerlab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Experiment configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output directory for CSV tables.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads (0 = all cores). Output bytes do not depend on
    /// this.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized Betti numbers along the ladder vs. the L² oracle.
    Betti(RunArgs),
    /// Normalized heat traces vs. the Γ-trace oracle.
    Heat(RunArgs),
    /// Integrated density of states under both boundary conditions.
    Ids(RunArgs),
    /// Heat-kernel boundary-decay fit against the lattice kernel.
    Nfb(RunArgs),
    /// Finite zeta values vs. the L² zeta oracle.
    Zeta(RunArgs),
    /// Euler identities and McKean–Singer residuals.
    Euler(RunArgs),
    /// Small-λ power-law fit of the spectral density.
    Nsfit(RunArgs),
    /// Validate a complex and its smallest sections.
    Validate(RunArgs),
}

type Runner = fn(&Context) -> Result<ExperimentOutcome, ExperimentError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args, runner): (&str, &RunArgs, Runner) = match &cli.command {
        Command::Betti(a) => ("betti", a, experiments::betti::run),
        Command::Heat(a) => ("heat", a, experiments::heat::run),
        Command::Ids(a) => ("ids", a, experiments::ids::run),
        Command::Nfb(a) => ("nfb", a, experiments::nfb::run),
        Command::Zeta(a) => ("zeta", a, experiments::zeta::run),
        Command::Euler(a) => ("euler", a, experiments::euler::run),
        Command::Nsfit(a) => ("nsfit", a, experiments::nsfit::run),
        Command::Validate(a) => ("validate", a, experiments::validate::run),
    };

    let (config, hash) = match load_config(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("configuration error: {e}");
            return ExitCode::from(3);
        }
    };
    let threads = if args.threads == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        args.threads
    };
    let ctx = Context::new(config, hash, args.out.clone(), threads);

    match runner(&ctx) {
        Ok(outcome) => {
            for csv in &outcome.csv_files {
                println!("{name}: wrote {}", csv.display());
            }
            for a in &outcome.assertions {
                println!(
                    "{name}: [{}] {} — {}",
                    if a.passed { "pass" } else { "FAIL" },
                    a.name,
                    a.detail
                );
            }
            if outcome.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(ExperimentError::Config(e)) => {
            eprintln!("configuration error: {e}");
            ExitCode::from(3)
        }
        Err(ExperimentError::Lab(e)) => {
            eprintln!("{name}: {e}");
            ExitCode::from(3)
        }
        Err(ExperimentError::Io(e)) => {
            eprintln!("{name}: io error: {e}");
            ExitCode::from(3)
        }
    }
}
