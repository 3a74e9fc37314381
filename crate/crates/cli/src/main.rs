use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use packing_cell::cells::{cmd_brillouin, cmd_density, cmd_voronoi, CellSource};
use packing_cell::report::build_report;
use packing_cell::verify::run_verify;
use packing_cell::{CliError, CliResult};

#[derive(Parser)]
#[command(
    name = "packing-cell",
    version,
    about = "Voronoi cells and densities of sphere packings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute the published constants and compare.
    Report {
        /// Human-readable table instead of JSON.
        #[arg(long)]
        pretty: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the Voronoi cell of a lattice or configuration.
    Voronoi {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Off)]
        format: Format,
    },
    /// Packing density of a lattice of unit spheres.
    Density {
        #[command(flatten)]
        source: LatticeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Export the Brillouin zone of a named lattice.
    Brillouin {
        name: String,
        /// Scale the reciprocal lattice by 2π.
        #[arg(long)]
        two_pi: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-check constructed volumes against Monte-Carlo estimates.
    Verify {
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Off,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LatticeArgs {
    /// fcc, bcc or sc.
    name: Option<String>,
    /// Basis rows a1 a2 a3 as nine numbers.
    #[arg(long, num_args = 9, allow_negative_numbers = true, value_name = "X")]
    basis: Option<Vec<f64>>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// fcc, bcc or sc.
    name: Option<String>,
    /// Basis rows a1 a2 a3 as nine numbers.
    #[arg(long, num_args = 9, allow_negative_numbers = true, value_name = "X")]
    basis: Option<Vec<f64>>,
    /// icosahedral or fcc-kissing.
    #[arg(long)]
    config: Option<String>,
}

fn source(name: Option<String>, basis: Option<Vec<f64>>, config: Option<String>) -> CellSource {
    match (name, basis, config) {
        (Some(n), _, _) => CellSource::Named(n),
        (_, Some(b), _) => CellSource::Basis(b.try_into().expect("clap enforces nine values")),
        (_, _, Some(c)) => CellSource::Config(c),
        _ => unreachable!("clap requires one source"),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Report { pretty, out } => {
            let report = build_report()?;
            let text = if pretty {
                report.to_pretty()
            } else {
                let mut s =
                    serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
                s.push('\n');
                s
            };
            emit(&text, out.as_ref())?;
            if !report.passes() {
                return Err(CliError::Mismatch(
                    "report values differ from published values".into(),
                ));
            }
        }
        Command::Voronoi {
            source: s,
            out,
            format: Format::Off,
        } => {
            let msg = cmd_voronoi(&source(s.name, s.basis, s.config), &out)?;
            eprintln!("{msg}");
        }
        Command::Density { source: s, json } => {
            let d = cmd_density(&source(s.name, s.basis, None))?;
            if json {
                println!("{}", d.json());
            } else {
                println!("{}", d.line());
            }
        }
        Command::Brillouin { name, two_pi, out } => {
            let msg = cmd_brillouin(&name, two_pi, &out)?;
            eprintln!("{msg}");
        }
        Command::Verify { samples, seed } => {
            let table = run_verify(samples, seed)?;
            emit(&table.to_text(), None)?;
            if !table.passes() {
                return Err(CliError::Mismatch("Monte-Carlo cross-check failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("packing-cell: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
