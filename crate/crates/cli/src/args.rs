use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "framelab", version, about = "Dowling geometries, frame templates and extremal search over GF(p)")]
pub struct Cli {
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Overrides the default search and enumeration budgets.
    #[arg(long, global = true, env = "FRAMELAB_BUDGET")]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a standard matroid and print it as JSON.
    #[command(subcommand)]
    Construct(Construct),
    /// Rank, size, ε, simplicity and affineness of a matroid.
    Info { file: PathBuf },
    /// Apply a matroid operation.
    #[command(subcommand)]
    Op(Op),
    /// Search for a minor.
    Minor {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
    },
    /// Largest simple rank-n matroid without a given minor.
    Extremal {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        rank: usize,
        /// `pg:DIM:P`, `ag:DIM:P` or a matroid JSON file.
        #[arg(long)]
        exclude: String,
    },
    #[command(subcommand)]
    Template(TemplateCmd),
    /// Replay a witness construction.
    #[command(subcommand)]
    Verify(Verify),
    /// The extremal function over a grid.
    Table {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        gamma_size: u64,
        /// Inclusive range such as `0..2`, or a single value.
        #[arg(long)]
        t: String,
        #[arg(long)]
        n: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct GammaArgs {
    #[arg(long)]
    pub p: u32,
    /// Elements of Γ, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "gamma_size")]
    pub gamma: Option<Vec<u8>>,
    /// Order of Γ (the unique subgroup of that order).
    #[arg(long)]
    pub gamma_size: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// `DG(n, Γ)^t` or one of its single-column extensions.
    Dowling {
        #[command(flatten)]
        gamma: GammaArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        t: usize,
        /// `plain`, `box` or `x:<value>`.
        #[arg(long, default_value = "plain")]
        variant: String,
    },
    Pg {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        dim: usize,
    },
    Ag {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        dim: usize,
    },
    /// The Γ-frame matrix `W(n)`.
    Frame {
        #[command(flatten)]
        gamma: GammaArgs,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Op {
    Delete {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        labels: Vec<String>,
    },
    Contract {
        file: PathBuf,
        #[arg(long, value_delimiter = ',')]
        labels: Vec<String>,
    },
    Dual { file: PathBuf },
    Simplify { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum TemplateCmd {
    /// Reduce a template and print the trace.
    Reduce { file: PathBuf },
    /// Check whether a matrix respects a template.
    Respect {
        #[arg(long)]
        template: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Enumerate conforming matroids up to represented isomorphism.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_ground: usize,
        #[arg(long, default_value_t = 4)]
        max_rows: usize,
    },
    /// Evaluate the density bound for a conforming (or, with --dual, co-conforming) matroid.
    Density {
        #[arg(long)]
        template: PathBuf,
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        dual: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    Techtwo {
        #[arg(long, default_value_t = 0)]
        t: usize,
    },
    Techthree {
        #[arg(long, default_value_t = 0)]
        t: usize,
    },
    Techodd {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 0)]
        t: usize,
    },
    Primesubfield {
        #[command(flatten)]
        gamma: GammaArgs,
        #[arg(long)]
        n: usize,
    },
    /// Sample simple extensions of `DG(n, Γ)^t` and replay the extension-minor certificates.
    DowlingExtension {
        #[command(flatten)]
        gamma: GammaArgs,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// The three binary extremal values at ranks 3 and 4.
    HellerSweep,
}
