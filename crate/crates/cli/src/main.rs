mod commands;
mod config;
mod source;

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Common;

/// Evaluation codes from projective surfaces over finite fields.
#[derive(Parser, Debug)]
#[command(name = "surfcode", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Debug, Clone, Default)]
pub struct DistanceFlags {
    /// Random information sets tried before the deterministic search.
    #[arg(long, default_value_t = 0)]
    pub random_sets: u64,
    /// Seed the search with the geometric low-weight codeword (degree-6
    /// del Pezzo, degree 2).
    #[arg(long)]
    pub witness: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Build a code, bound its distance and write the JSON report.
    BuildCode {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        dist: DistanceFlags,
        /// Include the full weight enumerator.
        #[arg(long)]
        enumerator: bool,
        /// Include the generator matrix.
        #[arg(long)]
        generator: bool,
    },
    /// Minimum distance with a witness codeword.
    MinDist {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        dist: DistanceFlags,
    },
    /// Seeded search for cubic surfaces of a given class, as JSON lines.
    Search {
        #[command(flatten)]
        common: Common,
        /// C10 to C14.
        #[arg(long, default_value = "C12")]
        target: String,
        #[arg(long, default_value_t = 64)]
        samples: u64,
        /// First substream, for resuming an earlier run.
        #[arg(long, default_value_t = 0)]
        start: u64,
        #[arg(long, default_value_t = 3)]
        screen_degree: u32,
    },
    /// Match the point counts of a cubic surface against the five classes.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
    /// Point counts of all hyperplane sections.
    ScanSections {
        #[command(flatten)]
        common: Common,
    },
    /// Recompute the published parameter table.
    VerifyPaper {
        #[command(flatten)]
        common: Common,
        /// Give the degree-2 distance search enough budget to certify exactly.
        #[arg(long)]
        slow: bool,
    },
}

/// Bad arguments or unreadable input; exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// A verification row failed; exit code 1.
#[derive(Debug)]
pub struct Failed(pub usize);

impl fmt::Display for Failed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} check(s) failed", self.0)
    }
}

impl std::error::Error for Failed {}

fn is_input_error(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.is::<InputError>()
            || matches!(
                c.downcast_ref::<surfcode::Error>(),
                Some(
                    surfcode::Error::Parse { .. }
                        | surfcode::Error::InvalidArgument(_)
                        | surfcode::Error::InvalidField(_)
                        | surfcode::Error::NotPrime(_)
                        | surfcode::Error::ReducibleModulus(..)
                )
            )
    })
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let pool = |c: &Common| -> anyhow::Result<()> {
        if let Some(n) = c.workers {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| InputError(e.to_string()))?;
        }
        Ok(())
    };
    let resolve = |c: Common| c.resolve().map_err(|e| InputError(format!("{e:#}")));
    match cli.cmd {
        Cmd::BuildCode {
            common,
            dist,
            enumerator,
            generator,
        } => {
            let c = resolve(common)?;
            pool(&c)?;
            commands::build(&c, &dist, enumerator, generator)
        }
        Cmd::MinDist { common, dist } => {
            let c = resolve(common)?;
            pool(&c)?;
            commands::min_dist(&c, &dist)
        }
        Cmd::Search {
            common,
            target,
            samples,
            start,
            screen_degree,
        } => {
            let c = resolve(common)?;
            pool(&c)?;
            commands::search(&c, &target, samples, start, screen_degree)
        }
        Cmd::Classify { common, max_degree } => {
            let c = resolve(common)?;
            pool(&c)?;
            commands::classify(&c, max_degree)
        }
        Cmd::ScanSections { common } => {
            let c = resolve(common)?;
            pool(&c)?;
            commands::scan_sections(&c)
        }
        Cmd::VerifyPaper { common, slow } => {
            let c = resolve(common)?;
            pool(&c)?;
            commands::verify_paper(&c, slow)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Failed>() => {
            eprintln!("surfcode: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("surfcode: {e:#}");
            ExitCode::from(if is_input_error(&e) { 2 } else { 1 })
        }
    }
}
