use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wbm_core::experiments::{preset, presets, write_csv};
use wbm_core::{ExperimentConfig, SweepOutcome, WbmError};

const EXIT_CONFIG: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;

#[derive(Parser)]
#[command(name = "wbm", version, about = "Wave Based Method experiment runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides the config's `output` key.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write wall_ms as 0 so repeated runs give identical files.
        #[arg(long)]
        no_timing: bool,
    },
    /// Run a built-in study.
    Preset {
        name: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        no_timing: bool,
        /// Print the variant configs instead of running them.
        #[arg(long)]
        print_config: bool,
    },
    /// List the built-in studies.
    ListPresets,
}

enum Failure {
    Config(WbmError),
    Numerical(String),
}

impl From<WbmError> for Failure {
    fn from(e: WbmError) -> Self {
        Failure::Config(e)
    }
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || "-_.=".contains(c) { c } else { '_' })
        .collect()
}

fn write_outcome(path: &Path, outcome: &SweepOutcome) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(WbmError::from)?;
    }
    let file = File::create(path).map_err(|e| WbmError::Io(format!("{}: {e}", path.display())))?;
    write_csv(BufWriter::new(file), &outcome.records)?;
    println!("{}: {} records", path.display(), outcome.records.len());
    if outcome.failures.is_empty() {
        return Ok(());
    }
    let lines: Vec<String> = outcome
        .failures
        .iter()
        .map(|f| format!("{} {} T={}: {}", f.experiment, f.formulation, f.t, f.error))
        .collect();
    Err(Failure::Numerical(lines.join("\n")))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run {
            config,
            out,
            no_timing,
        } => {
            let mut cfg = ExperimentConfig::from_file(&config)?;
            cfg.timing &= !no_timing;
            let path = match (out, &cfg.output) {
                (Some(dir), _) => dir.join(format!("{}.csv", file_stem(&cfg.name))),
                (None, Some(p)) => p.clone(),
                (None, None) => PathBuf::from(format!("{}.csv", file_stem(&cfg.name))),
            };
            let outcome = wbm_core::experiments::run_sweep(&cfg).map_err(|e| {
                if e.is_config_error() {
                    Failure::Config(e)
                } else {
                    Failure::Numerical(e.to_string())
                }
            })?;
            write_outcome(&path, &outcome)
        }
        Command::Preset {
            name,
            out,
            no_timing,
            print_config,
        } => {
            let mut p = preset(&name)?;
            if print_config {
                for cfg in &p.variants {
                    println!("{cfg}");
                }
                return Ok(());
            }
            for cfg in &mut p.variants {
                cfg.timing &= !no_timing;
            }
            let outcome = p.run().map_err(|e| Failure::Numerical(e.to_string()))?;
            write_outcome(&out.join(format!("{}.csv", p.name)), &outcome)
        }
        Command::ListPresets => {
            for p in presets() {
                println!("{:<18} {}", p.name, p.description);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure:\n{msg}");
            ExitCode::from(EXIT_NUMERICAL)
        }
    }
}
