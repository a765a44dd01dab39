use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hereditary::cli::{cmd_check, cmd_classify, cmd_example, cmd_oracle_check, cmd_picent, Outcome, EXIT_INVALID};

#[derive(Parser)]
#[command(name = "hereditary", version, about = "Hereditariness of strongly graded tiled orders")]
struct Cli {
    /// Print only the JSON report
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graded order is hereditary
    Check { input: PathBuf },
    /// Central Picard group of a hereditary tiled order
    Picent { input: PathBuf },
    /// Inner/outer grades per context and the crossed-product test
    Classify { input: PathBuf },
    /// Build a shipped example and check its facts
    Example {
        #[arg(value_parser = ["nonbasic", "outer", "semiprime"])]
        name: String,
        /// Number of summands for the semiprime example
        #[arg(long)]
        d: Option<usize>,
    },
    /// Compare the radical oracle with the engine
    OracleCheck {
        input: PathBuf,
        /// Place such as 2 or 1+2i; every relevant place when omitted
        #[arg(long)]
        place: Option<String>,
    },
}

/// Reads a file, or standard input for `-`.
fn read_input(path: &PathBuf) -> Result<String, std::io::Error> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn with_input(path: &PathBuf, f: impl Fn(&str) -> Outcome) -> Result<Outcome, String> {
    read_input(path).map(|s| f(&s)).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID as u8 } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Check { input } => with_input(input, cmd_check),
        Command::Picent { input } => with_input(input, cmd_picent),
        Command::Classify { input } => with_input(input, cmd_classify),
        Command::Example { name, d } => Ok(cmd_example(name, *d)),
        Command::OracleCheck { input, place } => with_input(input, |s| cmd_oracle_check(s, place.as_deref())),
    };
    match outcome {
        Ok(o) => {
            let _ = writeln!(std::io::stdout().lock(), "{}", o.render(cli.json));
            ExitCode::from(o.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID as u8)
        }
    }
}
