//! `multicentric` command-line tool: lemniscate analyses, reference tables,
//! series expansions and Riesz projections.

mod commands;
mod error;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multicentric::GridSpec;

use crate::error::{CliError, CliResult};
use crate::input::{parse_list, parse_real};

#[derive(Debug, Parser)]
#[command(name = "multicentric", version, about = "Multicentric holomorphic calculus toolkit")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Grid nodes per axis for lemniscate computations
    #[arg(long, global = true, default_value_t = 1001)]
    pub resolution: usize,
    /// Sampling box: a half-width "h" or "x_min,x_max,y_min,y_max"
    #[arg(long = "box", global = true, default_value = "1.5", allow_hyphen_values = true)]
    pub bbox: String,
    /// Directory for written files
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,
    /// Restrict file output to one format
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

impl GlobalOpts {
    pub fn grid(&self) -> CliResult<GridSpec> {
        let parts = parse_list(&self.bbox, parse_real)?;
        let grid = match parts.as_slice() {
            [h] => GridSpec::square(*h, self.resolution)?,
            [x0, x1, y0, y1] => GridSpec::new(*x0, *x1, *y0, *y1, self.resolution)?,
            _ => {
                return Err(CliError::parse("box", &self.bbox, "expected 1 or 4 numbers"));
            }
        };
        Ok(grid)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Contours, components and constants of {|p(z)| <= level}
    Lemniscate(commands::lemniscate::LemniscateArgs),
    /// Constants, ratios and eta_max for the model family
    Tables(commands::tables::TablesArgs),
    /// Multicentric series of a locally constant function
    Expand(commands::expand::ExpandArgs),
    /// Riesz projection of a matrix
    Project(commands::project::ProjectArgs),
}

fn run(cli: Cli) -> CliResult<Vec<String>> {
    match cli.command {
        Command::Lemniscate(a) => commands::lemniscate::run(&cli.global, &a),
        Command::Tables(a) => commands::tables::run(&cli.global, &a),
        Command::Expand(a) => commands::expand::run(&cli.global, &a),
        Command::Project(a) => commands::project::run(&cli.global, &a),
    }
}

fn fail(err: &CliError, code: u8) -> ExitCode {
    let report = serde_json::to_string(&err.report()).unwrap_or_else(|_| err.to_string());
    eprintln!("{report}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            return fail(&CliError::Usage(first.to_string()), 2);
        }
    };
    match run(cli) {
        Ok(lines) => {
            for line in lines {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e, 1),
    }
}
