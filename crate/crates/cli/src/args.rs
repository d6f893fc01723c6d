use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lndfilt", version, about = "Filtrations and graded algebras of locally nilpotent derivations")]
pub struct Cli {
    /// Emit one JSON report per command instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Iteration bound for nilpotency certificates and degree computations.
    #[arg(long, global = true, default_value_t = 64)]
    pub nilp_bound: usize,

    /// Degree bound for filtration layers and layer-equality sweeps.
    #[arg(long, global = true, default_value_t = 12)]
    pub degree_bound: u64,

    /// Elementary reduction steps allowed per Groebner basis computation.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub gb_budget: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Declare a presented ring with a derivation (and optional filtration data).
    Ring(RingArgs),
    /// Instantiate a member of one of the hypersurface families.
    Family {
        kind: FamilyKind,
        #[command(flatten)]
        params: FamilyParams,
    },
    /// Degree of an element under the derivation.
    Deg {
        #[arg(long = "of")]
        of: String,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Well-definedness and a nilpotency certificate.
    LndCheck {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Layers G_0..G_r of the filtration, cross-checked against the degree.
    Filtration {
        /// Highest layer to print; defaults to 4.
        #[arg(long, default_value_t = 4)]
        r: u64,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Graded presentation, properness verdict and induced derivation.
    Gr {
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Bounded search for further locally nilpotent derivations of a family member.
    Search {
        #[arg(long, default_value_t = 4)]
        image_degree: u32,
        /// Iteration bound when testing candidates for nilpotency.
        #[arg(long, default_value_t = 20)]
        candidate_bound: usize,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Degree for the kernel-intersection evidence.
        #[arg(long, default_value_t = 6)]
        evidence_degree: u32,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Build and verify an automorphism from (λ, μ, a).
    Auto {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        /// Polynomial in X.
        #[arg(long, default_value = "0")]
        a: String,
        /// Random elements for the degree-preservation check.
        #[arg(long, default_value_t = 20)]
        check_samples: usize,
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Decide whether two Danielewski surfaces are isomorphic.
    Iso {
        #[arg(long)]
        n: u32,
        /// `n` of the second surface, when it differs.
        #[arg(long)]
        n2: Option<u32>,
        #[arg(long = "P1")]
        p1: String,
        #[arg(long = "P2")]
        p2: String,
    },
    /// Run the acceptance criteria.
    Selftest {
        /// Only these criteria (1-10).
        #[arg(long)]
        criterion: Vec<u8>,
    },
    /// Run a line-oriented script of commands (`-` reads stdin).
    Run { script: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Danielewski,
    Kr2,
    New,
}

#[derive(Clone, Debug, Default, Args)]
pub struct FamilyParams {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub e: Option<u32>,
    #[arg(long)]
    pub l: Option<u32>,
    /// P(X, Y) for danielewski, P(X, S) for new.
    #[arg(long = "P")]
    pub p: Option<String>,
    /// Q(X, Z, T) for kr2, Q(X, Y) for new.
    #[arg(long = "Q")]
    pub q: Option<String>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct RingArgs {
    /// Comma-separated variable names.
    #[arg(long)]
    pub vars: Option<String>,
    /// A defining relation; repeat for several.
    #[arg(long = "rel")]
    pub relations: Vec<String>,
    /// Comma-separated images of the variables under the derivation.
    #[arg(long = "der")]
    pub derivation: Option<String>,
    /// Comma-separated kernel generators for the filtration.
    #[arg(long)]
    pub kernel: Option<String>,
    /// Comma-separated local slices for the filtration.
    #[arg(long)]
    pub slices: Option<String>,
}

/// Where a command takes its ring from: a family, an explicit ring, or the
/// session.
#[derive(Clone, Debug, Default, Args)]
pub struct SourceArgs {
    #[arg(long)]
    pub family: Option<FamilyKind>,
    #[command(flatten)]
    pub params: FamilyParams,
    #[command(flatten)]
    pub ring: RingArgs,
}
