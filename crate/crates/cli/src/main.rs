//! `lrm`: hedge-ratio curves and jump-impact tables as CSV.

mod commands;
mod config;
mod error;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{parse_grid, Output, RawConfig, RunConfig};
use crate::error::CliError;

#[derive(Parser)]
#[command(name = "lrm", version, about = "Locally risk-minimizing hedge ratios under exponential Lévy models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the model assumptions and the truncation bound of every cell.
    Validate(Source),
    /// Hedge ratio on the t-grid x strike-grid.
    Curve {
        #[command(flatten)]
        source: Source,
        /// Write the CSV here instead of `output.path`.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Change of the hedge ratio after a log-price jump of size y.
    Impact {
        #[command(flatten)]
        source: Source,
        /// Jump sizes, comma separated or a start:stop:step range.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Source {
    /// Configuration file (`-` reads standard input).
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// Built-in configuration, applied before the file.
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Override a configuration key, e.g. `--set fft.n=2^12`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Merton,
    MertonStrikes,
    Vg,
    Nikkei,
}

impl Preset {
    fn text(self) -> &'static str {
        match self {
            Preset::Merton => include_str!("../presets/merton.conf"),
            Preset::MertonStrikes => include_str!("../presets/merton-strikes.conf"),
            Preset::Vg => include_str!("../presets/vg.conf"),
            Preset::Nikkei => include_str!("../presets/nikkei.conf"),
        }
    }
}

impl Source {
    fn load(&self) -> Result<RunConfig, CliError> {
        let mut raw = match self.preset {
            Some(preset) => RawConfig::parse(preset.text())?,
            None => RawConfig::default(),
        };
        if let Some(path) = &self.config {
            let text = read_config(path)?;
            let file = RawConfig::parse(&text)?;
            raw.merge(file);
        } else if self.preset.is_none() {
            return Err(CliError::Usage("give --config FILE or --preset NAME".into()));
        }
        for assignment in &self.overrides {
            raw.apply_override(assignment)?;
        }
        RunConfig::from_raw(&raw)
    }
}

fn read_config(path: &PathBuf) -> Result<String, CliError> {
    let read = if path.as_os_str() == "-" {
        io::read_to_string(io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    read.map_err(|source| CliError::ReadConfig {
        path: path.display().to_string(),
        source,
    })
}

fn open_output(run: &RunConfig, flag: Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    let target = match flag {
        Some(path) if path.as_os_str() != "-" => Output::File(path),
        Some(_) => Output::Stdout,
        None => run.output.clone(),
    };
    Ok(match target {
        Output::Stdout => Box::new(BufWriter::new(io::stdout().lock())),
        Output::File(path) => Box::new(BufWriter::new(File::create(path)?)),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate(source) => {
            let run = source.load()?;
            let mut out = io::stdout().lock();
            commands::cmd_validate(&run, &mut out)
        }
        Command::Curve { source, output } => {
            let run = source.load()?;
            let start = Instant::now();
            let rows = commands::curve(&run)?;
            let elapsed = start.elapsed();
            let mut out = open_output(&run, output)?;
            commands::write_curve(run.params.name(), &rows, &mut out)?;
            out.flush()?;
            eprintln!("curve: {} cells in {:.3} s", rows.len(), elapsed.as_secs_f64());
            Ok(())
        }
        Command::Impact { source, y, output } => {
            let run = source.load()?;
            let jumps = match &y {
                Some(list) => parse_grid("--y", list)?,
                None => run.jumps.clone(),
            };
            let start = Instant::now();
            let rows = commands::impact(&run, &jumps)?;
            let elapsed = start.elapsed();
            let mut out = open_output(&run, output)?;
            commands::write_impact(&rows, &mut out)?;
            out.flush()?;
            eprintln!("impact: {} rows in {:.3} s", rows.len(), elapsed.as_secs_f64());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
