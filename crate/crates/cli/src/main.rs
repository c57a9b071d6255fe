use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gaugeloc_cli::{configure_threads, load_scenario, presets, run_scenario, RunOptions, Status};

#[derive(Parser)]
#[command(name = "gaugeloc", version, about = "Exact audits of Abelian gauge theories on cubical spacetimes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or `preset:NAME`.
    Run {
        scenario: String,
        /// Write the JSON report here ("-" for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the text report here ("-" for stdout).
        #[arg(long)]
        text: Option<PathBuf>,
        /// Enable slower cross-checks and larger random sweeps.
        #[arg(long)]
        verify_extra: bool,
        /// Seed for the randomized property sweeps.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List the built-in presets.
    ListPresets,
    /// Parse and validate a scenario without running it.
    Check { scenario: String },
}

fn write(path: &PathBuf, body: &str) -> std::io::Result<()> {
    if path.as_os_str() == "-" {
        print!("{body}");
        Ok(())
    } else {
        std::fs::write(path, body)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match cli.command {
        Command::ListPresets => {
            print!("{}", presets::catalog());
            ExitCode::SUCCESS
        }
        Command::Check { scenario } => match load_scenario(&scenario) {
            Ok(s) => {
                println!("ok: {} ({} complexes, {} embeddings, {} analyses)", s.name, s.complexes.len(), s.embeddings.len(), s.analyses.len());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("{e}");
                ExitCode::from(2)
            }
        },
        Command::Run { scenario, json, text, verify_extra, seed } => {
            let s = match load_scenario(&scenario) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            let report = run_scenario(&s, &scenario, RunOptions { seed, verify_extra });
            let mut outputs = Vec::new();
            if let Some(p) = &json {
                outputs.push((p, report.to_json()));
            }
            if let Some(p) = &text {
                outputs.push((p, report.to_text()));
            }
            if outputs.is_empty() {
                print!("{}", report.to_text());
            }
            for (p, body) in outputs {
                if let Err(e) = write(p, &body) {
                    eprintln!("error: cannot write {}: {e}", p.display());
                    return ExitCode::from(2);
                }
            }
            if report.status() == Status::Pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
