//! `quditc`: compile, schedule, simulate and verify qudit rotation programs.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, unreadable or malformed input. Exit code 2.
    Usage(String),
    /// Layer commutation or oracle equivalence failure. Exit code 3.
    /// `output` still goes to stdout.
    Validation { message: String, output: String },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Validation { .. } => 3,
        }
    }
}

impl From<quditc::QuditError> for CliError {
    fn from(e: quditc::QuditError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Parser, Debug)]
#[command(
    name = "quditc",
    version,
    about = "Qubit gates as two-level rotations on one qudit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compile one gate into a rotation program.
    Synth {
        /// Gate as JSON, e.g. '{"h":{"targets":[1]}}'.
        #[arg(long)]
        gate: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Print the pairing table and basis-state images.
        #[arg(long)]
        explain: bool,
        /// Build T from pi/4 rotations without the ancilla (global phase e^{-i pi/8}).
        #[arg(long)]
        no_ancilla: bool,
        /// Also write the synthesis record JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile a circuit file, validate it and simulate it.
    Run {
        #[arg(long)]
        circuit: PathBuf,
        /// Initial state as a JSON array of [re, im] pairs (default: ground state).
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long)]
        state_out: Option<PathBuf>,
        #[arg(long)]
        probs_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Simulate a rotation program file.
    Simulate {
        #[arg(long)]
        program: PathBuf,
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long)]
        state_out: Option<PathBuf>,
        #[arg(long)]
        probs_out: Option<PathBuf>,
    },
    /// Rotation count and depth of a program or circuit.
    Depth {
        #[arg(long, required_unless_present = "circuit", conflicts_with = "circuit")]
        program: Option<PathBuf>,
        #[arg(long)]
        circuit: Option<PathBuf>,
        /// Greedily merge adjacent commuting layers first.
        #[arg(long)]
        merge: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Build and simulate a Grover search circuit.
    Grover {
        #[arg(long)]
        n: usize,
        /// Marked bit string q_1..q_N (default: all ones).
        #[arg(long)]
        marked: Option<String>,
        /// Iteration count or "auto".
        #[arg(long, default_value = "auto")]
        iterations: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Grover accuracy and depth comparison, one row per qubit count.
    Table {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        /// Write the CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Check every gate against its Kronecker-product qubit matrix.
    Verify {
        /// Qubit count or inclusive range, e.g. 4 or 2..5.
        #[arg(long, default_value = "1..5")]
        n: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        json_out: Option<PathBuf>,
        /// Evaluate the sweep on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

fn dispatch(cli: Cli) -> Result<String, CliError> {
    let digits = output::float_digits()?;
    match cli.command {
        Command::Synth {
            gate,
            n,
            format,
            explain,
            no_ancilla,
            out,
        } => commands::synth(&gate, n, format, explain, no_ancilla, out.as_deref()),
        Command::Run {
            circuit,
            state,
            state_out,
            probs_out,
            format,
        } => commands::run(
            &circuit,
            state.as_deref(),
            state_out.as_deref(),
            probs_out.as_deref(),
            format,
            digits,
        ),
        Command::Simulate {
            program,
            state,
            state_out,
            probs_out,
        } => commands::simulate(
            &program,
            state.as_deref(),
            state_out.as_deref(),
            probs_out.as_deref(),
            digits,
        ),
        Command::Depth {
            program,
            circuit,
            merge,
            format,
        } => commands::depth(program.as_deref(), circuit.as_deref(), merge, format),
        Command::Grover {
            n,
            marked,
            iterations,
            format,
        } => commands::grover(n, marked.as_deref(), &iterations, format, digits),
        Command::Table {
            n_min,
            n_max,
            out,
            format,
        } => commands::table(n_min, n_max, out.as_deref(), format, digits),
        Command::Verify {
            n,
            format,
            json_out,
            sequential,
        } => commands::verify(&n, format, json_out.as_deref(), sequential, digits),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("error: {m}"),
                CliError::Validation { message, output } => {
                    print!("{output}");
                    eprintln!("validation failed: {message}");
                }
            }
            ExitCode::from(e.code())
        }
    }
}
