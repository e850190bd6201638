mod avn;
mod pentagram;
mod report;
mod roots;
mod scenario;

use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use contextus::builtin::{ghz_model, pr_box};
use contextus::scenario::model_to_json;

use crate::report::Report;

#[derive(Debug, Parser)]
#[command(
    name = "contextus",
    version,
    about = "Exact checks of Kochen-Specker contextuality proofs"
)]
struct Cli {
    /// Colour the verdict line.
    #[arg(
        long,
        global = true,
        env = "CONTEXTUS_COLOR",
        value_enum,
        default_value = "auto"
    )]
    color: ColorChoice,
    /// Print a JSON summary instead of the text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ColorChoice {
    Auto,
    Always,
    Never,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parity proof on the ten pentagram observables, plus optional faces.
    Pentagram {
        /// Add the GHZ state-dependent system.
        #[arg(long)]
        state_dependent: bool,
        /// Add global sections of the spectral and GHZ support presheaves.
        #[arg(long)]
        presheaf: bool,
        /// Add points of the prime-spectrum functor of the GHZ rings.
        #[arg(long)]
        pspec: bool,
        /// Add the dimension of the generated operator algebra.
        #[arg(long)]
        algebra: bool,
    },
    /// Check no-signalling and classify a scenario file.
    Scenario {
        path: PathBuf,
        /// Print only the contextuality level.
        #[arg(long)]
        level: bool,
    },
    /// Test Pauli generators for an all-versus-nothing argument.
    Avn {
        /// Generators separated by `;`, e.g. "XXX;XYY;YXY".
        #[arg(long, allow_hyphen_values = true)]
        generators: String,
        /// Also build the empirical model on this state.
        #[arg(long, value_enum)]
        state: Option<avn::StateChoice>,
    },
    /// Rays of the pentagram contexts, their reflection closure and colourings.
    Roots {
        /// Close the 40 rays under reflections.
        #[arg(long)]
        complete: bool,
        /// Classify the Coxeter diagram of the closure.
        #[arg(long)]
        identify: bool,
        /// Search for a colouring of the orthogonal bases.
        #[arg(long)]
        colouring: bool,
        /// Write the closure, one root per line.
        #[arg(long, value_name = "PATH")]
        export: Option<PathBuf>,
    },
    /// Write a built-in scenario as JSON.
    ExportScenario {
        #[arg(value_enum)]
        name: BuiltinScenario,
        /// Output file; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuiltinScenario {
    Ghz,
    Prbox,
}

fn export_scenario(name: BuiltinScenario, output: Option<PathBuf>) -> Result<()> {
    let model = match name {
        BuiltinScenario::Ghz => ghz_model(),
        BuiltinScenario::Prbox => pr_box(),
    };
    let text = model_to_json(&model);
    match output {
        Some(path) => {
            std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("cannot write to standard output"),
    }
}

fn run(cli: Cli) -> Result<Option<(Report, bool)>> {
    let report = match cli.command {
        Command::Pentagram {
            state_dependent,
            presheaf,
            pspec,
            algebra,
        } => pentagram::run(pentagram::Faces {
            state_dependent,
            presheaf,
            pspec,
            algebra,
        })?,
        Command::Scenario { path, level } => {
            let report = scenario::run(&path)?;
            return Ok(Some((report, level)));
        }
        Command::Avn { generators, state } => avn::run(&generators, state)?,
        Command::Roots {
            complete,
            identify,
            colouring,
            export,
        } => roots::run(roots::Steps {
            complete,
            identify,
            colouring,
            export,
        })?,
        Command::ExportScenario { name, output } => {
            export_scenario(name, output)?;
            return Ok(None);
        }
    };
    Ok(Some((report, false)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let color = match cli.color {
        ColorChoice::Always => true,
        ColorChoice::Never => false,
        ColorChoice::Auto => std::io::stdout().is_terminal(),
    };
    let json = cli.json;
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some((report, level_only))) => {
            let text = if json {
                report.render_json()
            } else if level_only {
                format!("{}\n", report.verdict.as_str())
            } else {
                report.render(color)
            };
            print!("{text}");
            ExitCode::from(report.exit_code as u8)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
