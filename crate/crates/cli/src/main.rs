use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use twistlab_cli::{apply_cap_from_env, demo, list_demos, verify, Format, Outcome, EXIT_INPUT};
use twistlab_core::gallery::DemoParams;
use twistlab_core::FieldSpec;

#[derive(Parser)]
#[command(name = "twistlab", version, about = "Verifies twisted tensor products of algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the objects of a scenario file and run its checks.
    Verify {
        scenario: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Run independent checks concurrently.
        #[arg(long)]
        parallel: bool,
    },
    /// Run a built-in example.
    Demo {
        name: String,
        /// Number of generators.
        #[arg(long)]
        n: Option<usize>,
        /// Nilpotency orders, comma separated.
        #[arg(long, value_delimiter = ',')]
        m: Option<Vec<usize>>,
        /// Multiplicative order of the commutation scalars.
        #[arg(long = "q-order")]
        q_order: Option<u64>,
        /// rational, prime(p) or cyclotomic(n).
        #[arg(long, value_parser = parse_field)]
        field: Option<FieldSpec>,
        /// Truncation degree.
        #[arg(long)]
        degree: Option<usize>,
        /// Order of the root of unity.
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the built-in examples.
    ListDemos,
}

fn parse_field(text: &str) -> Result<FieldSpec, String> {
    FieldSpec::parse(text).map_err(|e| e.to_string())
}

fn emit(outcome: Outcome) -> ExitCode {
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    if let Err(e) = apply_cap_from_env() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_INPUT as u8);
    }
    emit(match cli.command {
        Command::Verify {
            scenario,
            format,
            parallel,
        } => verify(&scenario, format, parallel),
        Command::Demo {
            name,
            n,
            m,
            q_order,
            field,
            degree,
            ell,
            format,
        } => demo(
            &name,
            &DemoParams {
                n,
                m,
                q_order,
                field,
                degree,
                ell,
            },
            format,
        ),
        Command::ListDemos => list_demos(),
    })
}
