//! Command-line front end.

pub mod config;
pub mod report;
pub mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

pub use config::{parse_suites, Scenario, ScenarioConfig, Suite, CONFIG_TEMPLATE};
pub use report::{emit_outputs, report_csv, CheckRecord, ScenarioReport, Status, SuiteReport};
pub use run::{run_scenario, run_suite};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "xdlab",
    version,
    about = "Numerical checks for extra-dimension Pauli, Dirac and supersymmetric models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a scenario file.
    Run {
        config: PathBuf,
        /// Overrides the suite named in the file.
        #[arg(long)]
        suite: Option<String>,
        /// Overrides the output directory named in the file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List the available suites.
    ListSuites,
    /// Print a configuration file with every default spelled out.
    PrintConfigTemplate,
}

/// Loads, runs and writes a scenario; returns the process exit code.
pub fn execute(command: Command, stdout: &mut impl std::io::Write, stderr: &mut impl std::io::Write) -> u8 {
    match command {
        Command::ListSuites => {
            for s in Suite::ALL {
                let _ = writeln!(stdout, "{:<12} {}", s.name(), s.describe());
            }
            EXIT_PASS
        }
        Command::PrintConfigTemplate => {
            let _ = write!(stdout, "{CONFIG_TEMPLATE}");
            EXIT_PASS
        }
        Command::Run { config, suite, out, seed } => {
            let scenario = ScenarioConfig::load(&config).and_then(|mut c| {
                if let Some(s) = suite {
                    c.suite = s;
                }
                if let Some(o) = out {
                    c.out = o;
                }
                if let Some(s) = seed {
                    c.seed = s;
                }
                c.validate(&config)
            });
            let scenario = match scenario {
                Ok(s) => s,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    return EXIT_CONFIG;
                }
            };
            let report = run_scenario(&scenario);
            let _ = write!(stdout, "{}", report::summary_text(&report));
            if let Err(e) = emit_outputs(&report, &scenario.config.out) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_FAIL;
            }
            if report.passed() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(execute(cli.command, &mut std::io::stdout(), &mut std::io::stderr()))
}
