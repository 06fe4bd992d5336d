//! Command-line runner for polarization sweeps.
//!
//! Exit codes: 0 success, 2 configuration error, 3 physics-run failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nvdnp::experiment::{figure_preset, parse_config, run_and_write, SweepConfig, FIGURES};

const EXIT_CONFIG: u8 = 2;
const EXIT_PHYSICS: u8 = 3;

#[derive(Parser)]
#[command(name = "nvdnp", version, about = "NV-centre nuclear polarization sweeps with PROPI readout")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Replace the configured bath seeds by this single seed.
    #[arg(long, global = true)]
    seed_override: Option<u64>,
    /// Ideal reset, no amplitude jitter, no photon noise.
    #[arg(long, global = true)]
    ideal: bool,
    /// Write the final density matrix of every run to this directory.
    #[arg(long, global = true, value_name = "DIR")]
    dump_states: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a JSON configuration.
    Run {
        config: PathBuf,
        /// CSV path when the configuration has no output_path.
        #[arg(long, default_value = "results/sweep.csv")]
        out: PathBuf,
    },
    /// Check a configuration and print it with defaults and derived quantities.
    Validate { config: PathBuf },
    /// Run a built-in desk-scale preset.
    Figure {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(FIGURES))]
        name: String,
        /// Directory for the CSV and manifest (default results/<name>).
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Print the preset configuration instead of running it.
        #[arg(long)]
        print: bool,
    },
}

fn load(path: &Path) -> Result<SweepConfig, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("cannot read {}: {e}", path.display());
        ExitCode::from(EXIT_CONFIG)
    })?;
    parse_config(&text).map(|n| n.config).map_err(|issues| {
        for i in issues {
            eprintln!("{}: {i}", path.display());
        }
        ExitCode::from(EXIT_CONFIG)
    })
}

fn apply_overrides(cli: &Cli, config: &mut SweepConfig) {
    if let Some(seed) = cli.seed_override {
        config.seeds = vec![seed];
    }
    if cli.ideal {
        config.imperfections.enabled = false;
        config.imperfections.amplitude_jitter = 0.0;
    }
}

fn execute(cli: &Cli, mut config: SweepConfig, default_out: &Path) -> ExitCode {
    apply_overrides(cli, &mut config);
    match run_and_write(&config, default_out, cli.dump_states.as_deref()) {
        Ok((result, csv)) => {
            for f in &result.failures {
                eprintln!("point {} (value {}) seed {} failed: {}", f.point, f.sweep_value, f.seed, f.error);
            }
            println!("wrote {} ({} points, {} failed runs)", csv.display(), result.rows.len(), result.failures.len());
            ExitCode::SUCCESS
        }
        Err(nvdnp::Error::Config(msg)) => {
            eprintln!("configuration error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(e) => {
            eprintln!("run failed: {e}");
            ExitCode::from(EXIT_PHYSICS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("cannot configure {n} threads: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    match &cli.command {
        Command::Run { config, out } => match load(config) {
            Ok(c) => execute(&cli, c, out),
            Err(code) => code,
        },
        Command::Validate { config } => {
            let text = match std::fs::read_to_string(config) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", config.display());
                    return ExitCode::from(EXIT_CONFIG);
                }
            };
            match parse_config(&text) {
                Ok(mut normalized) => {
                    apply_overrides(&cli, &mut normalized.config);
                    println!("{}", serde_json::to_string_pretty(&normalized).expect("serializable"));
                    ExitCode::SUCCESS
                }
                Err(issues) => {
                    for i in issues {
                        eprintln!("{}: {i}", config.display());
                    }
                    ExitCode::from(EXIT_CONFIG)
                }
            }
        }
        Command::Figure { name, out_dir, print } => {
            let mut config = match figure_preset(name) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(EXIT_CONFIG);
                }
            };
            if let Some(dir) = out_dir {
                config.output_path = Some(dir.join(format!("{name}.csv")));
            }
            if *print {
                apply_overrides(&cli, &mut config);
                println!("{}", serde_json::to_string_pretty(&config).expect("serializable"));
                return ExitCode::SUCCESS;
            }
            let default_out = PathBuf::from(format!("results/{name}/{name}.csv"));
            execute(&cli, config, &default_out)
        }
    }
}
