//! `matgeo` command-line front end.
//!
//! Every run prints a JSON report on stdout. Exit status is 0 when every
//! check passed, 1 when a check failed (the report carries a counterexample)
//! and 2 on usage or input errors.

mod commands;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use matgeo::matspace::DEFAULT_BUDGET;
use matgeo::preserver::CertifyMode;

use report::{Outcome, Parameters, Report};

#[derive(Parser)]
#[command(
    name = "matgeo",
    version,
    about = "Adjacency, full-rank difference and preservers on finite matrix spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct SpaceArgs {
    /// Field order q.
    #[arg(long = "field", value_name = "Q")]
    q: u32,
    /// Number of rows m.
    #[arg(long = "rows", value_name = "M")]
    m: usize,
    /// Number of columns n.
    #[arg(long = "cols", value_name = "N")]
    n: usize,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Args, Clone, Copy)]
struct SamplingArgs {
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: Mode,
    /// Number of random cases in sampled mode.
    #[arg(long, value_name = "K", default_value_t = 10_000)]
    samples: u64,
    #[arg(long, value_name = "N", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Check that adjacency is expressible through full-rank difference alone.
    #[command(name = "verify-prop22")]
    VerifyProp22 {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, value_name = "B", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Also write the report here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Certify a table file and recover its standard form.
    Decompose {
        table: PathBuf,
        #[arg(long, value_name = "B", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Write the decomposition document here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Check whether a table file preserves full-rank difference both ways.
    Certify {
        table: PathBuf,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, value_name = "B", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Also write the report here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Write the table of a random standard preserver and its parameters
    /// (to `<FILE>.truth.json`).
    Generate {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_name = "N", default_value_t = 0)]
        seed: u64,
        /// Never draw the transposed form.
        #[arg(long)]
        no_transpose: bool,
        #[arg(long, value_name = "B", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Count Grassmann points and check the correspondence with matrices.
    Grassmann {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_name = "B", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Rank distribution, cross-checked against enumeration.
    Count {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_name = "B", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn space_params(space: SpaceArgs, budget: u64) -> Parameters {
    Parameters {
        q: Some(space.q),
        m: Some(space.m),
        n: Some(space.n),
        budget: Some(budget),
        ..Default::default()
    }
}

fn sampling_params(params: &mut Parameters, sampling: SamplingArgs) {
    params.mode = Some(match sampling.mode {
        Mode::Exhaustive => "exhaustive".into(),
        Mode::Sampled => "sampled".into(),
    });
    params.samples = Some(sampling.samples);
    params.seed = Some(sampling.seed);
}

fn certify_mode(sampling: SamplingArgs) -> CertifyMode {
    match sampling.mode {
        Mode::Exhaustive => CertifyMode::Exhaustive,
        Mode::Sampled => CertifyMode::Sampled {
            samples: sampling.samples,
            seed: sampling.seed,
        },
    }
}

fn path_string(path: &Path) -> String {
    path.display().to_string()
}

/// Runs one command. Returns the report and the file, if any, that should
/// receive a copy of it.
fn run(command: Command) -> (Report, Option<PathBuf>) {
    let (mut report, copy_to, result) = match command {
        Command::VerifyProp22 {
            space,
            sampling,
            budget,
            out,
        } => {
            let mut params = space_params(space, budget);
            sampling_params(&mut params, sampling);
            params.out = out.as_deref().map(path_string);
            let mut report = Report::new("verify-prop22", params);
            let result = commands::space(space.q, space.m, space.n).and_then(|s| {
                commands::verify_prop22(
                    &mut report,
                    &s,
                    sampling.mode == Mode::Exhaustive,
                    sampling.samples,
                    sampling.seed,
                    budget,
                )
            });
            (report, out, result)
        }
        Command::Decompose { table, budget, out } => {
            let params = Parameters {
                budget: Some(budget),
                input: Some(path_string(&table)),
                out: out.as_deref().map(path_string),
                ..Default::default()
            };
            let mut report = Report::new("decompose", params);
            let result = commands::decompose_table(&mut report, &table, budget, out.as_deref());
            (report, None, result)
        }
        Command::Certify {
            table,
            sampling,
            budget,
            out,
        } => {
            let mut params = Parameters {
                budget: Some(budget),
                input: Some(path_string(&table)),
                out: out.as_deref().map(path_string),
                ..Default::default()
            };
            sampling_params(&mut params, sampling);
            let mut report = Report::new("certify", params);
            let result = commands::certify(&mut report, &table, certify_mode(sampling), budget);
            (report, out, result)
        }
        Command::Generate {
            space,
            seed,
            no_transpose,
            budget,
            out,
        } => {
            let mut params = space_params(space, budget);
            params.seed = Some(seed);
            params.allow_transpose = Some(!no_transpose);
            params.out = Some(path_string(&out));
            let mut report = Report::new("generate", params);
            let result = commands::space(space.q, space.m, space.n).and_then(|s| {
                commands::generate(&mut report, &s, seed, !no_transpose, budget, &out)
            });
            (report, None, result)
        }
        Command::Grassmann { space, budget, out } => {
            let mut params = space_params(space, budget);
            params.out = out.as_deref().map(path_string);
            let mut report = Report::new("grassmann", params);
            let result = commands::space(space.q, space.m, space.n)
                .and_then(|s| commands::grassmann(&mut report, &s, budget));
            (report, out, result)
        }
        Command::Count { space, budget, out } => {
            let mut params = space_params(space, budget);
            params.out = out.as_deref().map(path_string);
            let mut report = Report::new("count", params);
            let result = commands::space(space.q, space.m, space.n)
                .and_then(|s| commands::count(&mut report, &s, budget));
            (report, out, result)
        }
    };
    if let Err(message) = result {
        report.outcome = Outcome::Error;
        report.error = Some(message);
    }
    (report, copy_to)
}

fn finish(report: &Report, copy_to: Option<&Path>) -> ExitCode {
    let text = report.to_json();
    print!("{text}");
    if let Some(message) = &report.error {
        eprintln!("error: {message}");
    }
    if let Some(path) = copy_to {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.outcome.exit_code() as u8)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            let command = std::env::args().nth(1).unwrap_or_default();
            let mut report = Report::new(&command, Parameters::default());
            report.outcome = Outcome::Error;
            report.error = Some(e.kind().to_string());
            eprint!("{e}");
            print!("{}", report.to_json());
            return ExitCode::from(2);
        }
    };
    let (mut report, copy_to) = run(cli.command);
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    finish(&report, copy_to.as_deref())
}
