//! `pathamp`: run diffraction scenarios from JSON documents, sweep their
//! parameters, and exercise the built-in verification suite.
//!
//! Exit codes: 0 success, 1 validation error, 2 verification failure,
//! 3 numeric non-convergence. Failures print one machine-parsable JSON line
//! to stderr.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use pathamp_cli::error::CliError;
use pathamp_cli::output::emit_csv;
use pathamp_cli::run::{run, run_verify, verify_summary, RunOutput};
use pathamp_cli::scenario::{self, Kind, Params, Scenario};

#[derive(Parser)]
#[command(
    name = "pathamp",
    version,
    about = "Diffraction patterns by direct summation of path amplitudes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Strip grating fed by a finite-lifetime photon emitter
    Photon(RunArgs),
    /// Row grating illuminated by a thermally spread electron beam
    Electron(RunArgs),
    /// Two-path transit timing and phase differences
    Kinematics(RunArgs),
    /// Delayed-decay survival probabilities
    Cat(RunArgs),
    /// Run the built-in verification checks
    Verify(VerifyArgs),
    /// Run any non-verify scenario that carries an explicit sweep
    Sweep(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario document (JSON)
    #[arg(long)]
    scenario: PathBuf,
    /// Write the result here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; defaults to csv when the run produces a table, else json
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Override the sweep sample count
    #[arg(long)]
    samples: Option<usize>,
    /// Override a scenario value (`key=value`, or `sweep.field=value`)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`
    #[arg(default_value = "all")]
    suite: String,
    /// Take the suite from a scenario document of kind `verify`
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            err.emit();
            std::process::exit(err.category.exit_code());
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Photon(args) => run_kind(Kind::PhotonGrating, &args, false),
        Command::Electron(args) => run_kind(Kind::ElectronGrating, &args, false),
        Command::Kinematics(args) => run_kind(Kind::Kinematics, &args, false),
        Command::Cat(args) => run_kind(Kind::Cat, &args, false),
        Command::Sweep(args) => run_sweep(&args),
        Command::Verify(args) => run_verify_command(&args),
    }
}

fn load_for(expected: Option<Kind>, path: &Path, sets: &[String]) -> Result<Scenario, CliError> {
    let scenario = scenario::load(path, sets)?;
    if let Some(kind) = expected {
        if scenario.kind != kind {
            return Err(CliError::validation(format!(
                "scenario kind {} does not match this subcommand (expected {})",
                scenario.kind.name(),
                kind.name()
            )));
        }
    }
    Ok(scenario)
}

fn run_kind(kind: Kind, args: &RunArgs, require_sweep: bool) -> Result<i32, CliError> {
    let scenario = load_for(Some(kind), &args.scenario, &args.set)?;
    if require_sweep && scenario.sweep.is_none() {
        return Err(CliError::validation(
            "the sweep subcommand needs a scenario with a sweep block",
        ));
    }
    let output = run(&scenario, args.samples)?;
    for note in &output.notes {
        eprintln!("{note}");
    }
    let text = render(&output, args.format)?;
    write_result(args.out.as_deref(), &text)?;
    Ok(0)
}

fn run_sweep(args: &RunArgs) -> Result<i32, CliError> {
    let scenario = load_for(None, &args.scenario, &args.set)?;
    if scenario.kind == Kind::Verify {
        return Err(CliError::validation(
            "verify scenarios have nothing to sweep",
        ));
    }
    run_kind(scenario.kind, args, true)
}

fn render(output: &RunOutput, format: Option<Format>) -> Result<String, CliError> {
    let format = format.unwrap_or(if output.table.is_some() {
        Format::Csv
    } else {
        Format::Json
    });
    match format {
        Format::Csv => match &output.table {
            Some(table) => Ok(emit_csv(&table.header, &table.rows)),
            None => Err(CliError::validation(
                "csv requested but this run produces no table; use --format json",
            )),
        },
        Format::Json => Ok(output.summary.to_json()),
    }
}

fn run_verify_command(args: &VerifyArgs) -> Result<i32, CliError> {
    let suite = match &args.scenario {
        Some(path) => {
            let scenario = load_for(Some(Kind::Verify), path, &[])?;
            let from_doc = match scenario.params {
                Params::Verify(p) => p.suite,
                _ => unreachable!("kind checked above"),
            };
            if args.suite != "all" && args.suite != from_doc {
                return Err(CliError::validation(format!(
                    "suite given both on the command line ({}) and in the scenario ({})",
                    args.suite, from_doc
                )));
            }
            from_doc
        }
        None => args.suite.clone(),
    };
    let (report, text) = run_verify(&suite)?;
    let rendered = match args.format {
        Some(Format::Json) => verify_summary(&suite, &report).to_json(),
        Some(Format::Csv) => {
            return Err(CliError::validation(
                "verify reports are text or json; csv is not available",
            ))
        }
        None => text,
    };
    write_result(args.out.as_deref(), &rendered)?;
    if report.all_passed() {
        Ok(0)
    } else {
        let failed = report.failures().count();
        let err = CliError::verification(format!(
            "{failed} of {} checks failed in suite {suite}",
            report.checks.len()
        ));
        err.emit();
        Ok(err.category.exit_code())
    }
}

fn write_result(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            CliError::validation(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
