use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lepage_cli::config::{parse_config, RunConfig};
use lepage_cli::field::run_field;
use lepage_cli::verify::run_verify;
use lepage_cli::Result;
use lepage_core::AtomCloud;

/// Heat and wave equations driven by symmetric α-stable noise.
///
/// The number of worker threads follows RAYON_NUM_THREADS.
#[derive(Parser)]
#[command(name = "lepage", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the solution on the configured grid and write `t,x,u` CSV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Output CSV; defaults to the `output` key of the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a heatmap next to the CSV.
        #[arg(long)]
        png: bool,
    },
    /// Run the verification battery; exits non-zero if a check fails.
    Verify {
        #[arg(long)]
        config: PathBuf,
    },
    /// Dump the sampled atom cloud as CSV.
    Atoms {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load(path: &Path) -> Result<RunConfig> {
    parse_config(&fs::read_to_string(path)?)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Simulate { config, out, png } => {
            let cfg = load(&config)?;
            let path = out.unwrap_or_else(|| cfg.output_path.clone());
            let field = run_field(&cfg)?;
            field.write_csv(BufWriter::new(fs::File::create(&path)?))?;
            if png {
                field.render_png(&path.with_extension("png"))?;
            }
            Ok(true)
        }
        Command::Verify { config } => {
            let cfg = load(&config)?;
            let report = run_verify(&cfg)?;
            println!("{report}");
            Ok(report.all_passed())
        }
        Command::Atoms { config, out } => {
            let cfg = load(&config)?;
            let cloud = AtomCloud::sample(cfg.atoms, cfg.seed, cfg.params()?, cfg.weight()?);
            cloud.write_csv(BufWriter::new(fs::File::create(out)?))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
