//! `pareto-lens`: generate MOMKP benchmark instances, run the evolutionary
//! solution pipeline, and analyse approximation sets with the four-step
//! relationship analysis (correlations, ranges, region maps, scatter plots).

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::analyze::AnalyzeCommand;
use commands::generate::GenerateArgs;
use commands::report::ReportArgs;
use commands::solve::SolveArgs;

#[derive(Parser)]
#[command(name = "pareto-lens", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate seeded MOMKP benchmark instances.
    Generate(GenerateArgs),
    /// Run the evolutionary pipeline on an instance file.
    Solve(SolveArgs),
    /// Run one analysis step on approximation-set files.
    #[command(subcommand)]
    Analyze(AnalyzeCommand),
    /// Run all four analysis steps and write a linked report bundle.
    Report(ReportArgs),
}

fn main() -> ExitCode {
    // Optional cap on worker threads; stages and inputs process in parallel.
    if let Ok(threads) = std::env::var("PARETO_LENS_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }

    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => commands::generate::run(args),
        Command::Solve(args) => commands::solve::run(args),
        Command::Analyze(cmd) => commands::analyze::run(cmd),
        Command::Report(args) => commands::report::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
