use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use trialg_cli::{RunOptions, Selection};

#[derive(Parser)]
#[command(
    name = "trialg",
    version,
    about = "Verify zero-product functional identities on finite triangular rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse the config and construct every object, without running tasks.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the `solve` tasks.
    Solve(RunArgs),
    /// Run the `decompose` tasks.
    Decompose(RunArgs),
    /// Run the verification, diagnostics and property tasks.
    Verify(RunArgs),
    /// Run every task.
    Report(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value = "reports")]
    out_dir: PathBuf,
    /// Threads for the solver; never changes any report.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Overrides the config's enumeration bound.
    #[arg(long)]
    bound: Option<u64>,
    /// Seed for the randomized property tasks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, selection) = match cli.command {
        Command::Validate { config } => {
            return match trialg_cli::validate(&config) {
                Ok((loaded, ws)) => {
                    print!("{}", trialg_cli::describe(&loaded, &ws));
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{e}");
                    ExitCode::from(e.exit_code())
                }
            };
        }
        Command::Solve(a) => (a, Selection::Solve),
        Command::Decompose(a) => (a, Selection::Decompose),
        Command::Verify(a) => (a, Selection::Verify),
        Command::Report(a) => (a, Selection::All),
    };
    let opts = RunOptions {
        out_dir: args.out_dir,
        workers: args.workers,
        bound: args.bound,
        seed: args.seed,
    };
    match trialg_cli::run(&args.config, selection, &opts) {
        Ok(summary) => {
            print!("{}", summary.text);
            ExitCode::from(summary.exit_code)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
