use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_DEPTH: u128 = 64;

#[derive(Parser, Debug)]
#[command(name = "hemiring", version, about = "Exact ordered hemirings, pseudonorms and convergence certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Output {
    /// Print JSON instead of a table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the ordered-hemiring laws on seeded samples.
    Laws {
        #[arg(long)]
        structure: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Compute a density or shrink witness.
    Witness {
        kind: WitnessKind,
        #[arg(long)]
        structure: String,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Build or check pseudonorms.
    Norm {
        #[command(subcommand)]
        action: NormAction,
    },
    /// Evaluate sequences.
    Seq {
        #[command(subcommand)]
        action: SeqAction,
    },
    /// Geometric series of r.
    Geom {
        #[arg(long)]
        structure: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        terms: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Cauchy condensation of a series.
    Condense {
        direction: Direction,
        #[arg(long)]
        structure: String,
        #[arg(long, allow_hyphen_values = true)]
        term: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u128,
        #[command(flatten)]
        out: Output,
    },
    /// Ratio test for the extremal series x0·rⁿ.
    Ratio {
        #[arg(long = "x0-norm", allow_hyphen_values = true)]
        x0_norm: String,
        #[arg(long)]
        structure: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Bernoulli's inequality on given elements.
    Bernoulli {
        #[arg(long)]
        structure: String,
        #[arg(long, allow_hyphen_values = true)]
        xs: String,
        #[arg(long)]
        mode: String,
        #[command(flatten)]
        out: Output,
    },
    /// Validate certificates read from JSON.
    Cert {
        #[command(subcommand)]
        action: CertAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum NormAction {
    /// Build the finite-dimensional norm from structure constants.
    Build {
        #[arg(long)]
        constants: PathBuf,
        #[arg(long = "check-samples", default_value_t = DEFAULT_SAMPLES)]
        check_samples: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Check the pseudonorm axioms of a built-in norm.
    Check {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        structure: String,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
pub enum SeqAction {
    /// Print terms or partial sums over an index range.
    Eval {
        #[arg(long)]
        structure: String,
        #[arg(long, allow_hyphen_values = true)]
        term: String,
        #[arg(long)]
        from: u128,
        #[arg(long)]
        to: u128,
        #[arg(long = "partial-sums")]
        partial_sums: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
pub enum CertAction {
    /// Validate a convergence or Cauchy certificate.
    Validate {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u128,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    Density,
    Shrink,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
    Roundtrip,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
            Direction::Roundtrip => "roundtrip",
        }
    }
}

impl Command {
    pub fn json(&self) -> bool {
        match self {
            Command::Laws { out, .. }
            | Command::Witness { out, .. }
            | Command::Geom { out, .. }
            | Command::Condense { out, .. }
            | Command::Ratio { out, .. }
            | Command::Bernoulli { out, .. }
            | Command::Norm { action: NormAction::Build { out, .. } }
            | Command::Norm { action: NormAction::Check { out, .. } }
            | Command::Seq { action: SeqAction::Eval { out, .. } }
            | Command::Cert { action: CertAction::Validate { out, .. } } => out.json,
        }
    }
}
