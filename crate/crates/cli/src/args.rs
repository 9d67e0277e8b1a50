use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qfoundry", version, about = "Exact and statistical checks for quantum foundations results")]
pub struct Cli {
    /// Random seed, decimal or 0x-prefixed hex.
    #[arg(long, global = true, default_value = "0xC0FFEE", value_parser = parse_seed)]
    pub seed: u64,
    /// Shot or sample count for Monte Carlo commands.
    #[arg(long, global = true)]
    pub shots: Option<u64>,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit a flat `key,value` table instead of JSON.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Override the pass threshold of commands that compare against one.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

pub fn parse_seed(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => t.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kochen-Specker colouring of vector sets.
    #[command(subcommand)]
    Ks(KsCommand),
    /// Meyer colouring of rational points on the sphere.
    #[command(subcommand)]
    Meyer(MeyerCommand),
    /// State reconstruction and single-generator checks.
    #[command(subcommand)]
    Quantum(QuantumCommand),
    /// Hidden-variable model over totally incompatible basis families.
    #[command(subcommand)]
    Mkc(MkcCommand),
    /// CHSH, local strategies, logical Bell inequalities.
    #[command(subcommand)]
    Bell(BellCommand),
    /// Free-will counting bounds.
    #[command(subcommand)]
    Fwt(FwtCommand),
    /// Quantum logic and context-function Heyting algebras.
    #[command(subcommand)]
    Logic(LogicCommand),
    /// Embedded datasets.
    #[command(subcommand)]
    Data(DataCommand),
    /// Run the full verification suite.
    VerifyAll(VerifyAllArgs),
}

#[derive(Debug, Args)]
pub struct SetArg {
    /// Built-in set name (peres33, cabello18) or path to a JSON vector set.
    #[arg(long, default_value = "peres33")]
    pub set: String,
}

#[derive(Debug, Subcommand)]
pub enum KsCommand {
    /// Exhaustive search for a colouring.
    Check(SetArg),
    /// Count colourings, optionally after removing labelled vectors.
    Count {
        #[command(flatten)]
        set: SetArg,
        /// Comma-separated labels to drop first.
        #[arg(long, value_delimiter = ',')]
        without: Vec<String>,
    },
    /// Parity witness: every vector in exactly two of an odd number of bases.
    Parity(SetArg),
    /// Complete every orthogonal pair to a triad, then search.
    Triads(SetArg),
}

#[derive(Debug, Subcommand)]
pub enum MeyerCommand {
    /// Check the colouring conditions on all primitive rays up to `--max-n`.
    Verify {
        #[arg(long, default_value_t = 25)]
        max_n: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum QuantumCommand {
    /// Reconstruct a seeded random density matrix from expectation values.
    Reconstruct {
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// Recover `n` orthogonal projections from one generator.
    Generator {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        dim: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum MkcCommand {
    /// Simulate a measurement sequence from a program file.
    Simulate {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 16)]
        bases: usize,
        /// JSON file with `observables` (and optionally `state`).
        #[arg(long)]
        program: PathBuf,
    },
    /// Valuation frequencies against Born probabilities for a random state.
    Frequencies {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 16)]
        bases: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    Anti,
    Random,
    Mixture,
}

#[derive(Debug, Subcommand)]
pub enum BellCommand {
    /// CHSH value for planar singlet settings.
    Chsh {
        /// `t1,t1p,t2,t2p` in radians.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        angles: Option<Vec<f64>>,
        /// Also maximize over the 360⁴ grid of whole-degree settings.
        #[arg(long)]
        grid: bool,
    },
    /// Monte Carlo CHSH for a local strategy, plus the exhaustive table maximum.
    Lhv {
        #[arg(long, value_enum, default_value = "mixture")]
        strategy: StrategyArg,
    },
    /// Logical Bell inequality, single or sequential measurement.
    Logical {
        /// `a1,a2,b1,b2` in radians.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        angles: Option<Vec<f64>>,
        #[arg(long)]
        sequential: bool,
    },
    /// Grid supremum of the imprecise triad probability.
    Appleby {
        #[arg(long, default_value_t = 100)]
        steps: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum FwtCommand {
    /// Compare `ε_S + (4/55) ε_T` against the forced-violation frequency.
    Bounds {
        #[arg(long)]
        eps_s: f64,
        #[arg(long)]
        eps_t: f64,
        /// Use the alternate constant 1/40 instead of 1/1320.
        #[arg(long)]
        alternate: bool,
    },
    /// Count directions per completed triad of the 33-vector set.
    Counts(SetArg),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VariantArg {
    L2,
    L3,
}

#[derive(Debug, Subcommand)]
pub enum LogicCommand {
    /// Check lattice and Heyting laws over a generated context poset.
    Heyting {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        bases: usize,
        #[arg(long, value_enum, default_value = "l3")]
        variant: VariantArg,
        /// Enumerate every element instead of sampling triples.
        #[arg(long)]
        exhaustive: bool,
        /// Sampled triples when not exhaustive.
        #[arg(long, default_value_t = 2000)]
        triples: usize,
    },
    /// The distributivity counterexample in C².
    Popper,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DatasetArg {
    Peres33,
    Cabello18,
    Angles,
}

#[derive(Debug, Subcommand)]
pub enum DataCommand {
    /// Write an embedded dataset as JSON.
    Export {
        #[arg(long, value_enum)]
        set: DatasetArg,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct VerifyAllArgs {
    /// Replace the embedded 33-vector set.
    #[arg(long)]
    pub peres33: Option<PathBuf>,
    /// Replace the embedded 18-vector set.
    #[arg(long)]
    pub cabello18: Option<PathBuf>,
}
