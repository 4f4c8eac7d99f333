use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stacky::commands;
use stacky::report::Report;
use stacky::{CliError, InputDocument};

/// Exact computations on stacky fans: Gale duals, boxes, twisted sectors,
/// orbifold Chow rings and crepant resolutions.
#[derive(Parser)]
#[command(name = "stacky", version)]
struct Cli {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the file describes a valid stacky fan.
    Validate { file: PathBuf },
    /// Gale dual DG(β) and the dual map.
    GaleDual { file: PathBuf },
    /// Box elements with minimal cones, coordinates and ages.
    Box { file: PathBuf },
    /// Components of the inertia stack.
    Sectors { file: PathBuf },
    /// Graded dimensions of the Chow ring, checked against the h-vector.
    Chow { file: PathBuf },
    /// Orbifold Chow ring: graded dimensions, optionally basis and products.
    OrbifoldChow {
        file: PathBuf,
        /// Also print the basis and all structure constants.
        #[arg(long)]
        table: bool,
    },
    /// Components of the degree-zero 3-pointed moduli space.
    Moduli { file: PathBuf },
    /// Compare the orbifold Chow ring with the Chow ring of the subdivision.
    CrepantCompare { file: PathBuf },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Validate { file }
            | Command::GaleDual { file }
            | Command::Box { file }
            | Command::Sectors { file }
            | Command::Chow { file }
            | Command::OrbifoldChow { file, .. }
            | Command::Moduli { file }
            | Command::CrepantCompare { file } => file,
        }
    }
}

fn emit(report: &impl Report, json: bool) {
    if json {
        println!("{}", report.json());
    } else {
        print!("{}", report.human());
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let path = cli.command.file();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let doc = InputDocument::from_json(&text)?;
    let json = cli.json;
    match &cli.command {
        Command::Validate { .. } => emit(&commands::validate(&doc)?, json),
        Command::GaleDual { .. } => emit(&commands::gale(&doc)?, json),
        Command::Box { .. } => emit(&commands::boxes(&doc)?, json),
        Command::Sectors { .. } => emit(&commands::sectors(&doc)?, json),
        Command::Chow { .. } => emit(&commands::chow(&doc)?, json),
        Command::OrbifoldChow { table, .. } => emit(&commands::orbifold(&doc, *table)?, json),
        Command::Moduli { .. } => emit(&commands::moduli(&doc)?, json),
        Command::CrepantCompare { .. } => {
            let r = commands::crepant(&doc)?;
            emit(&r, json);
            return Ok(commands::crepant_exit_code(&r));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if cli.json {
                let v = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
                eprintln!("{v}");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
