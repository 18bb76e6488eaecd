use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stablehom_cli::exec::{probe_rings, render, run_scenario, verify_record, Format, Options, Record};
use stablehom_cli::scenario::parse_scenario;
use stablehom_lab::report::Tree;
use stablehom_lab::suite::{selftest, suite_tree, Corpora};

#[derive(Parser)]
#[command(name = "stablehom", version, about = "Stable module theory checks over graded quotient rings")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Width of the degree window used for degreewise dimensions.
    #[arg(long, global = true, default_value_t = 4)]
    max_degree: i32,
    #[arg(long, global = true, default_value_t = 6)]
    max_resolution: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Morphisms per ring in generated corpora.
    #[arg(long, global = true, default_value_t = 50)]
    corpus_size: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of a scenario file.
    Run { file: PathBuf },
    /// Probe every ring declared in a scenario file.
    ProbeGorenstein { file: PathBuf },
    /// Run one verifier over a generated corpus.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        ring: String,
    },
    /// Run every verifier, the mutation check and the anchors.
    Selftest,
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        seed: cli.seed,
        max_degree: cli.max_degree,
        max_resolution: cli.max_resolution,
        corpus_size: cli.corpus_size,
    };
    let result: Result<(Vec<Tree>, bool), String> = match &cli.command {
        Command::Run { file } | Command::ProbeGorenstein { file } => read(file).and_then(|text| {
            let sc = parse_scenario(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let records = match cli.command {
                Command::Run { .. } => run_scenario(&sc, &opts),
                _ => probe_rings(&sc, &opts),
            }
            .map_err(|e| e.to_string())?;
            let failed = records.iter().any(|r| r.failed);
            Ok((records.into_iter().map(|r: Record| r.tree).collect(), failed))
        }),
        Command::Verify { theorem, ring } => {
            let r = verify_record(theorem, ring, &opts);
            Ok((vec![r.tree], r.failed))
        }
        Command::Selftest => Corpora::generate(opts.seed, &opts.size())
            .and_then(|c| selftest(&c, &opts.lab_config()))
            .map(|reports| {
                let failed = reports.iter().any(|r| !r.passed());
                (vec![suite_tree(opts.seed, &reports)], failed)
            })
            .map_err(|e| e.to_string()),
    };
    match result {
        Ok((trees, failed)) => {
            print!("{}", render(&trees, cli.format));
            if failed {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
