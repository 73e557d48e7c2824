//! `bmjet`: evaluate, verify and sweep the rheonomic Berwald-Moór geometry.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on invalid
//! input (bad flags, unreadable or invalid config, points off the cone).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bmjet::harness::output::{render_suite, render_sweep};
use bmjet::harness::{eval_point, parse_config, parse_grid, parse_report, parse_y, run_verify, summarize, sweep};
use bmjet::harness::{Format, RunConfig, SweepField};
use bmjet::{JetError, JetPoint, TimeMetric};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bmjet", version, about = "Jet-space geometry of the rheonomic Berwald-Moór metric")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Json => Format::Json,
            OutFormat::Csv => Format::Csv,
        }
    }
}

#[derive(clap::Args)]
struct ConfigArgs {
    /// TOML run configuration; defaults to Berwald-Moór with h₁₁ = 1.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    #[arg(long, value_name = "N")]
    samples: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Dump every tensor at one point as JSON.
    Eval {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        /// Comma-separated y¹,y²,y³,y⁴.
        #[arg(long, default_value = "1,1,1,1")]
        y: String,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Run the verification suite.
    Verify {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Tabulate a scalar output over a grid.
    Sweep {
        #[command(flatten)]
        cfg: ConfigArgs,
        /// One of Sc, xi11, T1, Ti, Tyi, G1111.
        #[arg(long, value_name = "NAME")]
        field: String,
        /// e.g. `t=0:1:5;s=1,2,4` or `y1=1;y2=1:2:3;y3=1;y4=1`.
        #[arg(long, value_name = "SPEC", allow_hyphen_values = true)]
        grid: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutFormat,
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Summarize a JSON report written by `verify`.
    Report {
        #[arg(value_name = "PATH")]
        path: PathBuf,
    },
}

enum Failure {
    Invalid(String),
    Checks,
}

impl From<JetError> for Failure {
    fn from(e: JetError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn load(args: &ConfigArgs) -> Result<RunConfig, Failure> {
    let mut cfg = match &args.config {
        Some(path) => parse_config(&read(path)?)?,
        None => RunConfig::berwald_moor(TimeMetric::constant(1.0)?),
    };
    if let Some(seed) = args.seed {
        cfg.sampling.seed = seed;
    }
    if let Some(n) = args.samples {
        cfg.sampling.samples = n;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Eval { cfg, t, y, output } => {
            let cfg = load(&cfg)?;
            let p = JetPoint::at(t, parse_y(&y)?)?;
            let dump = eval_point(&cfg, &p)?;
            let mut text = serde_json::to_string_pretty(&dump).map_err(|e| Failure::Invalid(e.to_string()))?;
            text.push('\n');
            emit(&text, output.as_deref())
        }
        Command::Verify { cfg, format, output } => {
            let cfg = load(&cfg)?;
            let result = run_verify(&cfg)?;
            emit(&render_suite(&result, format.into())?, output.as_deref())?;
            for r in result.failed() {
                eprintln!("FAIL {}", r.check_name);
            }
            if result.overall_pass {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
        Command::Sweep {
            cfg,
            field,
            grid,
            format,
            output,
        } => {
            let cfg = load(&cfg)?;
            let field: SweepField = field.parse()?;
            let grid = parse_grid(&grid)?;
            let table = sweep(&cfg, field, &grid)?;
            emit(&render_sweep(&table, format.into())?, output.as_deref())
        }
        Command::Report { path } => {
            let doc = parse_report(&read(&path)?)?;
            print!("{}", summarize(&doc));
            if doc.overall_pass {
                Ok(())
            } else {
                Err(Failure::Checks)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
