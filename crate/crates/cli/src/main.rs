//! `monohull`: command-line access to the hull library.
//!
//! Exit codes: 0 success, 2 malformed input, 3 certificate requested with
//! `a_n = 0`, 4 a verification residual or consistency check failed.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use monohull::Rational;

use input::{InstanceArgs, RatList};

#[derive(Parser, Debug)]
#[command(
    name = "monohull",
    version,
    about = "Exact convex hull of y = x1 x2 ... xn over a box"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Cn1,
    Cn0,
    Mccormick,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print an inequality system.
    Facets {
        #[arg(long, value_enum, default_value_t = Kind::Cn1)]
        kind: Kind,
        #[command(flatten)]
        inst: InstanceArgs,
    },
    /// List the extreme points.
    Vertices {
        #[command(flatten)]
        inst: InstanceArgs,
    },
    /// Classify a point against an inequality system.
    Membership {
        #[arg(long, value_enum, default_value_t = Kind::Cn1)]
        kind: Kind,
        #[command(flatten)]
        inst: InstanceArgs,
        /// Point coordinates `x1,...,xn`.
        #[arg(long, allow_hyphen_values = true)]
        x: RatList,
        #[arg(long, allow_hyphen_values = true)]
        y: Rational,
    },
    /// Maximize `c0 y + c . x` over the hull.
    Optimize {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        obj: ObjectiveArgs,
        /// Also build and verify the dual certificate.
        #[arg(long)]
        certify: bool,
    },
    /// Same as `optimize --certify`.
    Certify {
        #[command(flatten)]
        inst: InstanceArgs,
        #[command(flatten)]
        obj: ObjectiveArgs,
    },
    /// Closed-form and decomposition volume, optionally a Monte Carlo estimate.
    Volume {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Monte Carlo samples; 0 skips the estimate.
        #[arg(long, default_value_t = 0)]
        mc_samples: u64,
        #[arg(long, env = "MONOHULL_SEED", default_value_t = 0)]
        seed: u64,
        /// Parallel shards for the estimate; 1 runs single-threaded.
        #[arg(long, default_value_t = 1)]
        shards: u64,
        /// Fail with status 4 unless decomposition and closed form agree.
        #[arg(long)]
        check: bool,
    },
    /// Run every consistency check on one instance.
    Verify {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Random objectives for the strong-duality check.
        #[arg(long, default_value_t = 100)]
        objectives: usize,
        #[arg(long, env = "MONOHULL_SEED", default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args, Debug)]
pub struct ObjectiveArgs {
    /// Coefficient of y.
    #[arg(long, allow_hyphen_values = true)]
    c0: Rational,
    /// Coefficients `c1,...,cn`.
    #[arg(long, allow_hyphen_values = true)]
    c: RatList,
}

impl ObjectiveArgs {
    fn objective(&self) -> monohull::optimize::Objective {
        monohull::optimize::Objective::new(self.c0.clone(), self.c.0.clone())
    }
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Unsupported(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Unsupported(_) => 3,
            Failure::Check(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Unsupported(m) | Failure::Check(m) => m,
        }
    }
}

impl From<monohull::Error> for Failure {
    fn from(e: monohull::Error) -> Self {
        use monohull::Error as E;
        match e {
            E::Unsupported(_) => Failure::Unsupported(e.to_string()),
            E::InternalContradiction(_) => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// What a command printed, and whether a check it ran failed.
pub struct Outcome {
    pub stdout: String,
    pub failed: Option<Failure>,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            failed: None,
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let fmt = cli.format;
    match cli.command {
        Command::Facets { kind, inst } => commands::facets(fmt, kind, &inst),
        Command::Vertices { inst } => commands::vertices(fmt, &inst),
        Command::Membership { kind, inst, x, y } => commands::membership(fmt, kind, &inst, x.0, y),
        Command::Optimize { inst, obj, certify } => {
            commands::optimize(fmt, &inst.instance()?, &obj.objective(), certify)
        }
        Command::Certify { inst, obj } => {
            commands::optimize(fmt, &inst.instance()?, &obj.objective(), true)
        }
        Command::Volume {
            inst,
            mc_samples,
            seed,
            shards,
            check,
        } => commands::volume(fmt, &inst.instance()?, mc_samples, seed, shards, check),
        Command::Verify {
            inst,
            objectives,
            seed,
        } => commands::verify(fmt, &inst.instance()?, objectives, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let failure = match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            match outcome.failed {
                None => return ExitCode::SUCCESS,
                Some(f) => f,
            }
        }
        Err(f) => f,
    };
    eprintln!("error: {}", failure.message());
    ExitCode::from(failure.code())
}
