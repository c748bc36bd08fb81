use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use search_paths::trajectories::Algorithm;

#[derive(Debug, Parser)]
#[command(
    name = "search-paths",
    version,
    about = "Bloch-sphere trajectories, gaps, schedules and scaling reports for unstructured search"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Database size.
    #[arg(long = "N", visible_alias = "n", global = true, default_value_t = 64)]
    pub n: u64,

    /// Schedule slack of the adiabatic algorithms.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub eps: f64,

    /// Walk hopping rate [default: 1/N].
    #[arg(long, global = true)]
    pub gamma: Option<f64>,

    /// Marked vertex, 1-based.
    #[arg(long, global = true, default_value_t = 1)]
    pub marked: u64,

    /// Samples per curve.
    #[arg(long, global = true, default_value_t = 101)]
    pub samples: usize,

    #[arg(long, value_enum, global = true, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file [default: stdout].
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Omit the timestamp so identical runs are byte-identical.
    #[arg(long, global = true)]
    pub reproducible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Align {
    /// Pair the k-th samples of both natural trajectories.
    Index,
    /// Evaluate the second algorithm at the first one's sample times.
    Time,
    /// Evaluate the second algorithm at the first one's schedule values.
    Schedule,
    /// Adiabatic ground state at `s` against the chiral walk at the time
    /// where their paths coincide.
    Reparametrized,
}

pub const ALGORITHM_HELP: &str = "grover, fg, rc, rc-ground, fenner, walk-follower";

fn algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
        .map_err(|_| format!("expected one of {ALGORITHM_HELP}"))
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Bloch trajectory of one algorithm on its natural grid.
    Trajectory {
        #[arg(long, value_parser = algorithm, default_value = "fg", help = ALGORITHM_HELP)]
        algorithm: Algorithm,
    },
    /// Instantaneous energy gap along the interpolation (rc or walk-follower).
    Gap {
        #[arg(long, value_parser = algorithm, default_value = "rc")]
        algorithm: Algorithm,
    },
    /// Schedule s(t) over the full runtime (rc or walk-follower).
    Schedule {
        #[arg(long, value_parser = algorithm, default_value = "rc")]
        algorithm: Algorithm,
    },
    /// Chiral walk coefficient against the adiabatic ground-state coefficient.
    Equivalence,
    /// Walk-following Hamiltonian entries and spectrum along the schedule.
    Synth,
    /// Full N-dimensional evolution against the two-level reduction
    /// (grover, fg, fenner or rc).
    Fullspace {
        #[arg(long, value_parser = algorithm, default_value = "fg")]
        algorithm: Algorithm,
    },
    /// Operator norm against N with a log-log slope
    /// (fg, rc, fenner or walk-follower).
    Norms {
        #[arg(long, value_parser = algorithm, default_value = "walk-follower")]
        algorithm: Algorithm,
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',', default_value = "100,1000,10000,100000")]
        sizes: Vec<u64>,
        /// Schedule value to probe [default: 1/2, or the supremum over s for rc].
        #[arg(long)]
        at: Option<f64>,
    },
    /// Pointwise fidelity and Bloch distance between two algorithms.
    Compare {
        #[arg(long, value_parser = algorithm)]
        algorithm: Algorithm,
        #[arg(long, value_parser = algorithm)]
        against: Algorithm,
        #[arg(long, value_enum, default_value_t = Align::Index)]
        align: Align,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Trajectory { .. } => "trajectory",
            Self::Gap { .. } => "gap",
            Self::Schedule { .. } => "schedule",
            Self::Equivalence => "equivalence",
            Self::Synth => "synth",
            Self::Fullspace { .. } => "fullspace",
            Self::Norms { .. } => "norms",
            Self::Compare { .. } => "compare",
        }
    }

    pub fn algorithm_label(&self) -> Option<String> {
        match self {
            Self::Trajectory { algorithm }
            | Self::Gap { algorithm }
            | Self::Schedule { algorithm }
            | Self::Fullspace { algorithm }
            | Self::Norms { algorithm, .. } => Some(algorithm.name().to_string()),
            Self::Compare {
                algorithm, against, ..
            } => Some(format!("{algorithm} vs {against}")),
            Self::Equivalence => Some("fenner vs rc-ground".into()),
            Self::Synth => Some("walk-follower".into()),
        }
    }
}
