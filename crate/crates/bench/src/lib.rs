//! Command-line harness around the `hullsieve` filter.
//!
//! Subcommands: `filter`, `verify`, `scaling`, `bench` and `lemmas`. Exit
//! codes are 0 on success, 1 when a verification or statistical threshold
//! fails, and 2 on usage or I/O errors.

pub mod cli;
pub mod commands;
pub mod error;
pub mod fit;
pub mod report;
pub mod scaling;
pub mod svg;
pub mod timing;

use std::io::Write;

use hullsieve::stats::{run_lemmas, Checked, LemmaConfig, TrialReport};
use hullsieve::GenSpec;
use serde::Serialize;

use cli::{Cli, Command, Format, PointSetArgs, Pow2Range};
use commands::{cmd_filter, cmd_verify, Input};
use error::CliError;
use report::{csv_string, json_string, write_file};
use scaling::{run_scaling, ScalingConfig};
use timing::{run_bench, BenchConfig};

/// Result of a subcommand that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }
}

const SCALING_DEFAULT: Pow2Range = Pow2Range { lo: 10, hi: 20 };
const BENCH_DEFAULT: Pow2Range = Pow2Range { lo: 16, hi: 22 };
const MIN_LEMMA_TRIALS: u64 = 1000;

fn input_of(args: &PointSetArgs) -> Result<Input, CliError> {
    match (&args.input, args.n) {
        (Some(path), None) => Ok(Input::File(path.clone())),
        (None, Some(n)) => Ok(Input::Generated(GenSpec {
            n,
            bbox: args.common.bbox.0,
            seed: args.common.seed,
        })),
        (Some(_), Some(_)) => Err(CliError::Usage(
            "use either --input or --n, not both".into(),
        )),
        (None, None) => Err(CliError::Usage("one of --input or --n is required".into())),
    }
}

fn emit(stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))
}

#[derive(Serialize)]
struct BenchSummary<'a> {
    rows: &'a [timing::BenchRow],
    ratios: &'a [f64],
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<Status, CliError> {
    match cli.command {
        Command::Filter(args) => {
            let out = args
                .out
                .clone()
                .ok_or_else(|| CliError::Usage("filter requires --out".into()))?;
            let points = input_of(&args)?.load()?;
            let summary = cmd_filter(&points, &out)?;
            emit(stdout, &json_string(&summary)?)?;
            Ok(Status::Pass)
        }
        Command::Verify(args) => {
            let points = input_of(&args.points)?.load()?;
            let outcome = cmd_verify(&points, &args.fixture_dir)?;
            emit(stdout, &json_string(&outcome)?)?;
            Ok(if outcome.passed {
                Status::Pass
            } else {
                Status::Fail
            })
        }
        Command::Scaling(args) => {
            if args.trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let report = run_scaling(&ScalingConfig {
                n_list: args.sizes.resolve(SCALING_DEFAULT),
                trials: args.trials,
                seed: args.common.seed,
                bbox: args.common.bbox.0,
            });
            let body = match args.common.format {
                Format::Csv => csv_string(&report.rows)?,
                Format::Json => json_string(&report)?,
            };
            write_file(&args.out, &body)?;
            let svg_path = args.svg.unwrap_or_else(|| args.out.with_extension("svg"));
            write_file(&svg_path, &report.svg())?;
            emit(
                stdout,
                &json_string(&serde_json::json!({
                    "fit": report.fit,
                    "hull_mismatches": report.hull_mismatches,
                }))?,
            )?;
            Ok(if report.hull_mismatches == 0 {
                Status::Pass
            } else {
                Status::Fail
            })
        }
        Command::Bench(args) => {
            if args.trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let report = run_bench(&BenchConfig {
                n_list: args.sizes.resolve(BENCH_DEFAULT),
                trials: args.trials,
                seed: args.common.seed,
                bbox: args.common.bbox.0,
            });
            let body = match args.common.format {
                Format::Csv => csv_string(&report.rows)?,
                Format::Json => json_string(&report)?,
            };
            write_file(&args.out, &body)?;
            emit(
                stdout,
                &json_string(&BenchSummary {
                    rows: &report.rows,
                    ratios: &report.ratios,
                })?,
            )?;
            Ok(Status::Pass)
        }
        Command::Lemmas(args) => {
            if args.trials < MIN_LEMMA_TRIALS {
                return Err(CliError::Usage(format!(
                    "--trials must be at least {MIN_LEMMA_TRIALS}"
                )));
            }
            let checks = run_lemmas(&LemmaConfig {
                trials: args.trials,
                count_n: args.count_n,
                count_trials: args.count_trials,
                seed: args.common.seed,
            });
            let reports: Vec<TrialReport> = checks
                .iter()
                .flat_map(|c| c.reports.iter().cloned())
                .collect();
            let body = match args.common.format {
                Format::Csv => csv_string(&reports)?,
                Format::Json => json_string(&checks)?,
            };
            if let Some(out) = &args.out {
                write_file(out, &body)?;
            }
            emit(stdout, &body)?;
            let failed: Vec<&Checked> = checks.iter().filter(|c| !c.passed).collect();
            if failed.is_empty() {
                Ok(Status::Pass)
            } else {
                for c in failed {
                    eprintln!("threshold failure: {}", json_string(c)?);
                }
                Ok(Status::Fail)
            }
        }
    }
}
