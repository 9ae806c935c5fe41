use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use patchwork::GeneratorConfig;
use patchwork_cli::census::{self, CensusConfig};
use patchwork_cli::commands::{self, GenKind};
use patchwork_cli::{plot, CliError};

#[derive(Parser)]
#[command(
    name = "patchwork",
    version,
    about = "Combinatorial patchworking of real tropical hypersurfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Z/2 Betti numbers of the real part of an instance.
    Betti { file: PathBuf },
    /// Report on the regular subdivision induced by an instance.
    Subdivision {
        file: PathBuf,
        /// Print only the f-vector.
        #[arg(long)]
        f_vector: bool,
    },
    /// Generate an instance file.
    #[command(group(ArgGroup::new("kind").required(true).args(["canonical", "random"])))]
    Gen {
        /// Perturbed sum-of-squares heights, verified unimodular.
        #[arg(long)]
        canonical: bool,
        /// Random lift, rejected until it is a full triangulation.
        #[arg(long)]
        random: bool,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Weight of the convex part of a random lift, e.g. `3/10` or `0.3`.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Betti vectors over random full triangulations and random signs.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        triangulations: u64,
        #[arg(long)]
        signs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        out: PathBuf,
        /// Write 0 in the wall_ms column so output is reproducible.
        #[arg(long)]
        omit_timing: bool,
    },
    /// Draw a plane curve and its real part as SVG.
    Plot {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Betti { file } => {
            let instance = commands::load_instance(&file)?;
            print!("{}", commands::betti_report(&instance)?);
        }
        Command::Subdivision { file, f_vector } => {
            let instance = commands::load_instance(&file)?;
            print!("{}", commands::subdivision_report(&instance, f_vector)?);
        }
        Command::Gen {
            canonical,
            n,
            d,
            seed,
            lambda,
            output,
            ..
        } => {
            let mut cfg = GeneratorConfig::new(n, d, seed);
            if let Some(l) = lambda {
                cfg.lambda = commands::parse_lambda(&l)?;
            }
            check_dimensions(n, d)?;
            let kind = if canonical {
                GenKind::Canonical
            } else {
                GenKind::Random
            };
            let text = commands::generate(kind, &cfg)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|source| CliError::Io { path, source })?
                }
                None => print!("{text}"),
            }
        }
        Command::Census {
            n,
            d,
            triangulations,
            signs,
            seed,
            lambda,
            out,
            omit_timing,
        } => {
            check_dimensions(n, d)?;
            let mut cfg = CensusConfig::new(n, d, triangulations, signs, seed);
            if let Some(l) = lambda {
                cfg.lambda = commands::parse_lambda(&l)?;
            }
            cfg.omit_timing = omit_timing;
            let report = census::run(&cfg, census::threads_from_env()?)?;
            for (t, e) in &report.skipped {
                eprintln!("warning: skipping triangulation {t}: {e}");
            }
            let io_err = |source| CliError::Io {
                path: out.clone(),
                source,
            };
            let file = File::create(&out).map_err(io_err)?;
            census::write_csv(&report, BufWriter::new(file)).map_err(io_err)?;
            print!("{}", census::summary(&report));
        }
        Command::Plot { file, output } => {
            let instance = commands::load_instance(&file)?;
            let svg = plot::render_svg(&instance)?;
            std::fs::write(&output, svg).map_err(|source| CliError::Io {
                path: output,
                source,
            })?;
        }
    }
    Ok(())
}

fn check_dimensions(n: usize, d: u32) -> Result<(), CliError> {
    if !(2..=patchwork::instance::MAX_VARIABLES).contains(&n) || d == 0 {
        return Err(CliError::Usage(format!(
            "need 2 <= n <= {} and d >= 1",
            patchwork::instance::MAX_VARIABLES
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
