use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use cooling_core::harness::{
    fit_records, inspect_word, read_csv, run_verification, simulate, summary_for, write_csv, Mode,
    Model, SimulateConfig,
};
use cooling_core::{parse_configuration, DEFAULT_STEP_CAP};

#[derive(Debug, Parser)]
#[command(
    name = "cooling",
    about = "Cooling-process simulations and exact verifiers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Monte Carlo convergence times, one CSV row per replicate.
    Simulate {
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        /// Starting word for `--mode word`.
        #[arg(long)]
        word: Option<String>,
        /// Comma-separated even word lengths.
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Per-length mean/std/stderr as JSON.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Worker threads (defaults to all cores). Does not affect output.
        #[arg(long)]
        threads: Option<usize>,
        /// Fill the wall_time_s column (makes the CSV non-reproducible).
        #[arg(long)]
        wall_time: bool,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        step_cap: u64,
    },
    /// Least-squares fit of mean T against c*n^3 or c*n^(5/2)*ln n.
    Fit {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = parse_model)]
        model: Model,
    },
    /// Run every exact verifier up to length `--max-n`.
    Verify {
        #[arg(long = "max-n", default_value_t = 12)]
        max_n: usize,
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75")]
        alphas: Vec<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Exact facts about a single word.
    Oracle {
        #[arg(long)]
        word: String,
        #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75")]
        alphas: Vec<f64>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: cooling_core::Error| e.to_string())
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse().map_err(|e: cooling_core::Error| e.to_string())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Simulate {
            mode,
            word,
            n_list,
            reps,
            seed,
            out,
            summary,
            threads,
            wall_time,
            step_cap,
        } => {
            let mut cfg = SimulateConfig::new(mode, n_list, reps, seed);
            cfg.word = word.as_deref().map(parse_configuration).transpose()?;
            cfg.threads = threads;
            cfg.record_wall_time = wall_time;
            cfg.step_cap = step_cap;
            let records = simulate(&cfg)?;
            let file =
                File::create(&out).with_context(|| format!("cannot write {}", out.display()))?;
            write_csv(&records, BufWriter::new(file))?;
            let sum = summary_for(&cfg, &records);
            if let Some(path) = summary {
                let mut f = BufWriter::new(
                    File::create(&path)
                        .with_context(|| format!("cannot write {}", path.display()))?,
                );
                serde_json::to_writer_pretty(&mut f, &sum)?;
                writeln!(f)?;
            }
            for s in &sum.per_n {
                println!(
                    "n={} reps={} mean_T={:.3} std_T={:.3} stderr_T={:.3}",
                    s.n, s.reps, s.mean_t, s.std_t, s.stderr_t
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fit { input, model } => {
            let file =
                File::open(&input).with_context(|| format!("cannot read {}", input.display()))?;
            let records = read_csv(file)?;
            let fit = fit_records(&records, model)?;
            println!("{}", serde_json::to_string_pretty(&fit)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            max_n,
            alphas,
            json,
        } => {
            let report = run_verification(max_n, &alphas)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("{report}");
            }
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Oracle { word, alphas, json } => {
            let w = parse_configuration(word.trim())?;
            let report = inspect_word(&w, &alphas)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
