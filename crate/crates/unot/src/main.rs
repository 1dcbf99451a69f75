use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use unot::real::{real_rows, write_real};
use unot::sweep::{run_sweep, write_rows, OutputFormat, SweepConfig};
use unot::verify::{verify, Level, VerifyOptions};

#[derive(Parser)]
#[command(name = "unot", version, about = "Universal-NOT gate simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity table over ranges of N and M.
    Sweep(SweepArgs),
    /// Run the invariant checks; exit status 1 if any fails.
    Verify(VerifyArgs),
    /// Exact NOT on real states against optimal estimation.
    ReportReal(RealArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    #[arg(long, default_value_t = 1)]
    m_min: usize,
    #[arg(long, default_value_t = 4)]
    m_max: usize,
    /// Monte Carlo samples per row (0 = analytic only).
    #[arg(long, default_value_t = 0)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum, default_value = "quick")]
    level: LevelArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, hide = true, allow_hyphen_values = true)]
    perturb_gamma: Option<f64>,
}

#[derive(Args)]
struct RealArgs {
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 30)]
    n_max: usize,
    #[command(flatten)]
    output: OutputArgs,
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot write {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sweep(a) => {
            let config = SweepConfig {
                n_range: a.n_min..=a.n_max,
                m_range: a.m_min..=a.m_max,
                samples: a.samples,
                seed: a.seed,
                format: a.output.format.into(),
            };
            let rows = run_sweep(&config)?;
            let mut out = open_output(&a.output.out)?;
            write_rows(&rows, config.format, &mut out)?;
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(a) => {
            let report = verify(&VerifyOptions {
                level: match a.level {
                    LevelArg::Quick => Level::Quick,
                    LevelArg::Full => Level::Full,
                },
                seed: a.seed,
                perturb_gamma: a.perturb_gamma,
            })?;
            println!("{report}");
            if report.passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                for c in report.failures() {
                    eprintln!("failed: {}", c.name);
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::ReportReal(a) => {
            let rows = real_rows(a.n_min..=a.n_max)?;
            let mut out = open_output(&a.output.out)?;
            write_real(&rows, a.output.format.into(), &mut out)?;
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
