//! `ccc`: evaluate spacefile documents and print a deterministic report.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ccc_cli::doc::ExportFormat;
use ccc_cli::parse;
use ccc_cli::run::{run, RunConfig};

#[derive(Parser)]
#[command(name = "ccc", version, about = "Exact workbench for convergence-determined topologies")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a spacefile, build its declarations, and run its queries.
    Run {
        /// Path to the spacefile.
        file: String,
        /// Append a suite run if the document does not request one.
        #[arg(long)]
        suite: bool,
        /// Also export every declared space in the given format.
        #[arg(long, value_name = "FORMAT")]
        export: Option<Format>,
        /// Cap on the ground size of constructed spaces.
        #[arg(long, value_name = "N", default_value_t = 12)]
        max_size: usize,
        /// Seed for sampled sweeps.
        #[arg(long, value_name = "S", default_value_t = 0xCCC)]
        seed: u64,
        /// Emit the report as one json document instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

impl From<Format> for ExportFormat {
    fn from(f: Format) -> ExportFormat {
        match f {
            Format::Dot => ExportFormat::Dot,
            Format::Json => ExportFormat::Json,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Run { file, suite, export, max_size, seed, json } => {
            let text = match fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {file}: {e}");
                    return ExitCode::from(2);
                }
            };
            let doc = match parse::parse(&text) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let cfg = RunConfig {
                max_size,
                seed,
                export: export.map(ExportFormat::from),
                suite,
            };
            let report = match run(&doc, &cfg) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            print!("{}", if json { report.render_json() } else { report.render_text() });
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
