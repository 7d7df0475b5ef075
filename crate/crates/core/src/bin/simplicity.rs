use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use simplicity_bench::app::{run_bench, run_costcurve, BenchConfig, CurveConfig};
use simplicity_bench::learners::{Depth, DEFAULT_MIN_BUCKET};

#[derive(Parser)]
#[command(name = "simplicity", version, about = "Decision-tree ladder benchmarks and cost curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cross-validate zero-, one- and two-level trees on every CSV in a directory.
    Bench {
        /// Directory of `.csv` files, each with an optional `.manifest`.
        #[arg(long)]
        data: PathBuf,
        /// Cross-validation repeats.
        #[arg(long, default_value_t = 9)]
        repeats: usize,
        /// Folds per repeat.
        #[arg(long, default_value_t = 25)]
        folds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Smallest majority count of a one-level interval.
        #[arg(long, default_value_t = DEFAULT_MIN_BUCKET)]
        min_bucket: usize,
        /// Where `report.csv` and `report.txt` go.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare two-class classifiers with cost curves on a holdout split.
    Costcurve {
        /// Dataset CSV.
        #[arg(long)]
        data: PathBuf,
        /// Positive class label (default: the second class).
        #[arg(long)]
        positive: Option<String>,
        /// Keep only these two classes, e.g. `--keep a,b`.
        #[arg(long, value_parser = parse_pair)]
        keep: Option<(String, String)>,
        /// Built-in learners: any of d0, d1, d2.
        #[arg(long, value_delimiter = ',', default_value = "d1,d2")]
        classifiers: Vec<String>,
        /// Prediction file (`instance,true,predicted`); repeatable.
        #[arg(long)]
        external: Vec<PathBuf>,
        /// Fraction of each class held out for testing.
        #[arg(long, default_value_t = 1.0 / 3.0)]
        holdout: f64,
        /// Confidence level of the bootstrap bands.
        #[arg(long, default_value_t = 0.95)]
        level: f64,
        #[arg(long, default_value_t = 1000)]
        resamples: usize,
        /// Number of PC(+) samples.
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MIN_BUCKET)]
        min_bucket: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the test instances as `instance,true` for external classifiers.
        #[arg(long)]
        write_split: Option<PathBuf>,
    },
}

fn parse_depth(s: &str) -> Result<Depth, String> {
    match s.trim() {
        "d0" | "0" => Ok(Depth::Zero),
        "d1" | "1" => Ok(Depth::One),
        "d2" | "2" => Ok(Depth::Two),
        other => Err(format!("unknown classifier '{other}' (expected d0, d1 or d2)")),
    }
}

fn parse_pair(s: &str) -> Result<(String, String), String> {
    match s.split_once(',') {
        Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() && !b.contains(',') => {
            Ok((a.trim().to_string(), b.trim().to_string()))
        }
        _ => Err(format!("expected two comma-separated classes, got '{s}'")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Bench {
            data,
            repeats,
            folds,
            seed,
            min_bucket,
            out,
        } => run_bench(&BenchConfig {
            data_dir: data,
            repeats,
            folds,
            seed,
            min_bucket,
            out_dir: out,
        })
        .map(|outcome| {
            for (path, why) in &outcome.failures {
                eprintln!("skipped {}: {why}", path.display());
            }
            print!("{}", outcome.table.to_text());
        }),
        Command::Costcurve {
            data,
            positive,
            keep,
            classifiers,
            external,
            holdout,
            level,
            resamples,
            grid,
            seed,
            min_bucket,
            svg,
            csv,
            write_split,
        } => {
            let depths = match classifiers
                .iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_depth(s))
                .collect::<Result<Vec<_>, _>>()
            {
                Ok(d) => d,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(1);
                }
            };
            let config = CurveConfig {
                dataset: data,
                positive,
                keep_classes: keep.map(|(a, b)| [a, b]),
                classifiers: depths,
                external,
                test_fraction: holdout,
                level,
                resamples,
                grid_size: grid,
                seed,
                min_bucket,
                svg,
                csv,
                split_out: write_split,
            };
            run_costcurve(&config).map(|outcome| print!("{}", outcome.summary))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
