//! The `twistlab` command: scenario verification, demos and their renderings.

pub mod error;
pub mod output;
pub mod runner;
pub mod scenario;
pub mod workspace;

use std::fmt::Write as _;
use std::time::Instant;

use twistlab_core::gallery::{demo_catalog, run_demo, DemoParams};
use twistlab_core::tensor::set_dimension_cap;
use twistlab_core::Error;

pub use error::InputError;
pub use output::Format;
pub use runner::RunReport;

pub const DEFAULT_MAX_DIM: usize = 4096;

/// Exit status for input errors.
pub const EXIT_INPUT: i32 = 2;

/// What a command prints and the status it exits with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn report(run: &RunReport, format: Format) -> Outcome {
        Outcome {
            stdout: output::render(run, format),
            stderr: String::new(),
            code: run.exit_code(),
        }
    }

    fn input_error(e: &InputError) -> Outcome {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_INPUT,
        }
    }
}

/// Parses TWISTLAB_MAX_DIM; unset means the default.
pub fn parse_cap(value: Option<&str>) -> Result<usize, InputError> {
    match value {
        None => Ok(DEFAULT_MAX_DIM),
        Some(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| InputError::InvalidCap(v.to_string())),
    }
}

/// Installs the dimension cap from the environment.
pub fn apply_cap_from_env() -> Result<(), InputError> {
    let value = std::env::var("TWISTLAB_MAX_DIM").ok();
    set_dimension_cap(parse_cap(value.as_deref())?);
    Ok(())
}

/// Runs a scenario given as source text; `label` names it in the report.
pub fn verify_source(source: &str, label: &str, parallel: bool) -> Result<RunReport, InputError> {
    let scenario = scenario::parse(source)?;
    let ws = workspace::build(source, &scenario)?;
    runner::run_scenario(source, label, &scenario, &ws, parallel)
}

pub fn verify(path: &str, format: Format, parallel: bool) -> Outcome {
    let source = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            return Outcome::input_error(&InputError::Io {
                path: path.to_string(),
                message: e.to_string(),
            })
        }
    };
    match verify_source(&source, path, parallel) {
        Ok(run) => Outcome::report(&run, format),
        Err(e) => Outcome::input_error(&e),
    }
}

/// Runs a named demo. Unknown names, bad parameters and cap overruns are input errors.
pub fn demo_report(name: &str, params: &DemoParams) -> Result<RunReport, InputError> {
    let start = Instant::now();
    match run_demo(name, params) {
        Ok(outcome) => Ok(runner::demo_report(outcome, start.elapsed())),
        Err(Error::UnknownDemo(n)) => Err(InputError::UnknownDemo { name: n }),
        Err(e) => Err(InputError::Core(e)),
    }
}

pub fn demo(name: &str, params: &DemoParams, format: Format) -> Outcome {
    match demo_report(name, params) {
        Ok(run) => Outcome::report(&run, format),
        Err(e) => Outcome::input_error(&e),
    }
}

pub fn list_demos() -> Outcome {
    let catalog = demo_catalog();
    let width = catalog.iter().map(|d| d.name.len()).max().unwrap_or(0);
    let mut stdout = String::new();
    for d in catalog {
        let _ = writeln!(stdout, "{:<width$}  {}", d.name, d.description);
        if !d.parameters.is_empty() {
            let _ = writeln!(stdout, "{:<width$}  parameters: {}", "", d.parameters);
        }
    }
    Outcome {
        stdout,
        stderr: String::new(),
        code: 0,
    }
}
