//! Batch interface to the sector algebra computations.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use lgorb::model::{preset, Model, ModelConfig};
use lgorb::report::{
    cap_table_doc, check_doc, compare_doc, invariant_table_doc, invariants_doc, oracle_doc,
    parse_exps, sectors_doc, sigma_doc, surface_doc, table_doc, Format, Render,
};
use lgorb::{Error, Result};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "lgorb",
    version,
    about = "Sector-decomposed Milnor algebras of gauged Landau-Ginzburg models"
)]
struct Cli {
    /// Model configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Built-in model (x3_z3, chain33, chain34, chain43, fermat33, surface2, surface3).
    #[arg(long, global = true, value_name = "NAME")]
    preset: Option<String>,

    /// Output format: plain, json, or latex.
    #[arg(long, global = true, default_value = "plain")]
    format: String,

    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Quotient mode for the Milnor algebras: auto, on (localize at the
    /// origin), or off (global quotient).
    #[arg(long, global = true, value_name = "MODE")]
    local: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sector dimensions, parities, ages, and staircase bases.
    Sectors,
    /// One structure constant; g and h are comma-separated exponent vectors.
    Sigma { g: String, h: String },
    /// The multiplication table.
    Table {
        /// Restrict to the G-invariant algebra, expanded in its basis.
        #[arg(long)]
        invariants_only: bool,
        /// Emit the cap table (omega against xi) instead of cup.
        #[arg(long)]
        cap: bool,
    },
    /// G-invariant classes per sector.
    Invariants {
        /// Invariants of the omega part instead of the xi part.
        #[arg(long)]
        omega: bool,
    },
    /// Run a verification suite: braided, assoc, unit, equivariance,
    /// oracle, or all.
    Check {
        #[arg(default_value = "all")]
        suite: String,
    },
    /// Compare against the hand-built twisted Jacobian algebra.
    CompareJac,
    /// Independent verification through the twisted complexes.
    Oracle,
    /// The genus-g surface model end to end.
    Surface {
        #[arg(long)]
        genus: u64,
    },
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    command: &'static str,
    result: T,
    elapsed_ms: u128,
}

fn emit<T: Serialize + Render>(
    format: Format,
    command: &'static str,
    started: Instant,
    doc: &T,
) -> Result<()> {
    match format {
        Format::Plain => println!("{}", doc.plain()),
        Format::Latex => println!("{}", doc.latex()),
        Format::Json => {
            let env = Envelope {
                command,
                result: doc,
                elapsed_ms: started.elapsed().as_millis(),
            };
            let text = serde_json::to_string_pretty(&env)
                .map_err(|e| Error::Computation(format!("serialization failed: {e}")))?;
            println!("{text}");
        }
    }
    Ok(())
}

fn load_model(cli: &Cli, need_compare: bool) -> Result<Model> {
    let mut cfg = match (&cli.config, &cli.preset) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Validation(format!("cannot read {}: {e}", path.display()))
            })?;
            ModelConfig::parse(&text)?
        }
        (None, Some(name)) => preset(name)?,
        (Some(_), Some(_)) => {
            return Err(Error::Validation(
                "--config and --preset are mutually exclusive".into(),
            ))
        }
        (None, None) => {
            return Err(Error::Validation(
                "provide --config <path> or --preset <name>".into(),
            ))
        }
    };
    if let Some(mode) = &cli.local {
        match mode.as_str() {
            "auto" => cfg.local = None,
            "on" | "off" => cfg.local = Some(mode.clone()),
            other => {
                return Err(Error::Validation(format!(
                    "unknown local mode '{other}' (expected auto, on, or off)"
                )))
            }
        }
    }
    Model::build(&cfg, need_compare)
}

/// Runs the requested command; Ok(false) flags a failed verification.
fn run(cli: &Cli) -> Result<bool> {
    let format: Format = cli.format.parse()?;
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Error::Validation("--jobs must be positive".into()));
        }
        // Ignore the error when a pool already exists (repeated calls in
        // one process, e.g. under tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let started = Instant::now();
    match &cli.command {
        Command::Sectors => {
            let model = load_model(cli, false)?;
            emit(format, "sectors", started, &sectors_doc(&model))?;
        }
        Command::Sigma { g, h } => {
            let model = load_model(cli, false)?;
            let doc = sigma_doc(&model, &parse_exps(g)?, &parse_exps(h)?)?;
            emit(format, "sigma", started, &doc)?;
        }
        Command::Table {
            invariants_only,
            cap,
        } => {
            let model = load_model(cli, false)?;
            if *invariants_only && *cap {
                return Err(Error::Validation(
                    "--invariants-only and --cap are mutually exclusive".into(),
                ));
            }
            if *invariants_only {
                emit(format, "table", started, &invariant_table_doc(&model)?)?;
            } else if *cap {
                emit(format, "table", started, &cap_table_doc(&model)?)?;
            } else {
                emit(format, "table", started, &table_doc(&model))?;
            }
        }
        Command::Invariants { omega } => {
            let model = load_model(cli, false)?;
            emit(format, "invariants", started, &invariants_doc(&model, *omega))?;
        }
        Command::Check { suite } => {
            let model = load_model(cli, false)?;
            let doc = check_doc(&model, suite)?;
            emit(format, "check", started, &doc)?;
            return Ok(doc.passed);
        }
        Command::CompareJac => {
            let model = load_model(cli, true)?;
            emit(format, "compare-jac", started, &compare_doc(&model)?)?;
        }
        Command::Oracle => {
            let model = load_model(cli, false)?;
            let doc = oracle_doc(&model)?;
            emit(format, "oracle", started, &doc)?;
            return Ok(doc.passed);
        }
        Command::Surface { genus } => {
            let doc = surface_doc(*genus)?;
            emit(format, "surface", started, &doc)?;
            return Ok(doc.isomorphic);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
