//! Command-line surface. Bounds may also come from `OPERADKIT_BOUNDS`,
//! written with the same flags (`--depth 3 --arity=3`); flags given on the
//! command line win.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "operadkit", version, about = "Batch verifier for normed symmetric monoidal categories over finite groups")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Report headers followed by one line per check.
    Text,
    /// Only the `CHECK <id> PASS|FAIL <detail>` lines.
    Lines,
}

#[derive(Args, Debug, Default, Clone)]
pub struct BoundFlags {
    /// Maximum tree depth.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub depth: Option<u64>,
    /// Maximum tree arity.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub arity: Option<u64>,
    /// Maximum coherence path length.
    #[arg(long = "path-len", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub path_len: Option<u64>,
    /// Highest operad level built for the permutativity comparison.
    #[arg(long = "max-level", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_level: Option<u64>,
    /// Largest subgroup Λ ≤ G × Σ_n scanned (unbounded by default).
    #[arg(long = "max-lambda", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_lambda: Option<u64>,
}

impl BoundFlags {
    /// `self` where set, otherwise `fallback`.
    pub fn or(&self, fallback: &BoundFlags) -> BoundFlags {
        BoundFlags {
            depth: self.depth.or(fallback.depth),
            arity: self.arity.or(fallback.arity),
            path_len: self.path_len.or(fallback.path_len),
            max_level: self.max_level.or(fallback.max_level),
            max_lambda: self.max_lambda.or(fallback.max_lambda),
        }
    }
}

/// Parser for the contents of `OPERADKIT_BOUNDS`.
#[derive(Parser, Debug)]
#[command(name = "OPERADKIT_BOUNDS", no_binary_name = true)]
pub struct EnvBounds {
    #[command(flatten)]
    pub bounds: BoundFlags,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Traversal seed. Every check is exhaustive within its bounds and runs
    /// in a fixed order, so the seed is only echoed in the header.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub bounds: BoundFlags,
}

/// A group: a file in the group format, or a name such as `c4`, `s3`,
/// `trivial`, or a product `c2xc2`.
#[derive(Args, Debug, Clone)]
pub struct GroupArg {
    #[arg(long, default_value = "c2")]
    pub group: String,
}

/// A normed instance: a builtin name or a JSON file. Builtins are built over
/// `--group` with the norms `--norm`.
#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    #[command(flatten)]
    pub group: GroupArg,
    /// Builtin name (discrete-z2, chaotic-z2, sign-z2, max-poset,
    /// max-poset-square) or path to a JSON instance file.
    #[arg(long, default_value = "chaotic-z2")]
    pub data: String,
    /// `id=SPEC` with SPEC an exponent file or a sum of orbits `H/K+H/K`
    /// (H, K as `G`, `e`, element lists `0,2`, or `gen:2`).
    #[arg(long = "norm")]
    pub norms: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Indexing systems and their lattice.
    #[command(subcommand)]
    Indexing(IndexingCmd),
    /// Canonical coherence paths and the parallel-path check.
    #[command(subcommand)]
    Coherence(CoherenceCmd),
    /// Normed symmetric monoidal instances.
    #[command(subcommand)]
    Nsmc(NsmcCmd),
    /// The normed category Fun(TG, C).
    #[command(subcommand)]
    Funtg(FuntgCmd),
    /// Chaotic operads: permutativity comparisons, admissible lattices and
    /// change of norms.
    #[command(subcommand)]
    Zoo(ZooCmd),
}

#[derive(Subcommand, Debug)]
pub enum IndexingCmd {
    /// The indexing system generated by some exponents.
    Generate {
        #[command(flatten)]
        group: GroupArg,
        /// Exponent specs (files or orbit sums).
        #[arg(long = "gset")]
        gsets: Vec<String>,
    },
    /// Every indexing system with the Hasse diagram.
    Lattice {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Meet of two generated systems.
    Meet(PairArgs),
    /// Join of two generated systems.
    Join(PairArgs),
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[command(flatten)]
    pub group: GroupArg,
    #[arg(long = "left")]
    pub left: Vec<String>,
    #[arg(long = "right")]
    pub right: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum CoherenceCmd {
    /// The canonical path between two trees of equal arity. Without
    /// `--norm`, the norm `t1` is the free orbit `G/e`.
    Canon {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long = "norm")]
        norms: Vec<String>,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Parallel paths interpret identically on an instance.
    Verify(InstanceArgs),
}

#[derive(Subcommand, Debug)]
pub enum NsmcCmd {
    /// Every axiom of a normed symmetric monoidal category.
    Validate(InstanceArgs),
    /// Same as `coherence verify`.
    Coherence(InstanceArgs),
    /// Instance to algebra and back.
    Roundtrip(InstanceArgs),
    /// Prints the instance as JSON.
    Export(InstanceArgs),
    /// Trivial-action obstruction: every candidate free-orbit norm on the
    /// sign groupoid fails twisted equivariance.
    Nonexample,
    /// Lax functor validation and classification.
    Functor {
        #[command(flatten)]
        source: InstanceArgs,
        /// Target instance (builtin or file); defaults to the source.
        #[arg(long)]
        target: Option<String>,
        /// JSON file with `ob`, `mor`, `f_e`, `f_tensor`, `f_norms`; the
        /// identity functor when omitted.
        #[arg(long)]
        functor: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct SubgroupArgs {
    /// H as `G`, `e`, an element list `0,2` or `gen:2`.
    #[arg(long, default_value = "G")]
    pub h: String,
    /// K ≤ H, same syntax.
    #[arg(long, default_value = "e")]
    pub k: String,
}

#[derive(Subcommand, Debug)]
pub enum FuntgCmd {
    /// Builds Fun(TG, C) with the norms `--norm` and validates it.
    Build(InstanceArgs),
    /// H-fixed points against H-actions in C.
    VerifyFixedPoints {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        sub: SubgroupArgs,
    },
    /// Norms of Fun(TG, C) restrict to the norms N_K^H.
    VerifyNorms {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        sub: SubgroupArgs,
    },
    /// The norm N_K^H on objects.
    HhrNorm {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        sub: SubgroupArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum ZooCmd {
    /// Fixed-point profiles of SM_O(Set) against P_G and of the trivial
    /// case against P.
    ComparePermutativity {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Admissible sets of SM_O(F) recover F, order-isomorphically.
    LatticeCheck {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Admissible sets of a product and a free coproduct.
    Products {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long = "left")]
        left: Vec<String>,
        #[arg(long = "right")]
        right: Vec<String>,
    },
    /// Change of norms along i and r; the instance is normed by N ∪ M.
    ChangeNorms {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long = "n")]
        n: Vec<String>,
        #[arg(long = "m")]
        m: Vec<String>,
        #[arg(long, default_value = "chaotic-z2")]
        data: String,
    },
}
