use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "tightspan", version, about = "Tight components, spanning surfaces and degree audits for uniform hypergraphs")]
pub struct Cli {
    /// Emit reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for audits (default: $TIGHTSPAN_THREADS, else all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// TOML file with defaults for `threads`, `seed`, `budget`, `max_triples`, `json`.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a construction and write it in the text format.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Tight components of a hypergraph.
    Components { input: PathBuf },
    /// Minimum d-degrees, and the largest link component of a vertex.
    Degree {
        input: PathBuf,
        /// Only report this d (default: every d in 1..k).
        #[arg(long)]
        d: Option<usize>,
        /// Also report link diagnostics for this vertex (3-graphs).
        #[arg(long)]
        link: Option<u32>,
    },
    /// Classify a surface file; exits 1 unless it is a closed surface of the expected type.
    Classify {
        input: PathBuf,
        /// Expected class: sphere, torus, rp2, orientable:G or nonorientable:H.
        #[arg(long)]
        expect: Option<String>,
        /// Blow-up file the surface should span.
        #[arg(long, value_name = "FILE")]
        host: Option<PathBuf>,
    },
    /// Build an n-vertex sphere spanning a path blow-up.
    BuildSphere {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: BuildOutput,
    },
    /// Build an n-vertex closed surface spanning a path blow-up.
    BuildSurface {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Genus, or number of crosscaps for non-orientable surfaces.
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: BuildOutput,
    },
    /// Evaluate the Hamilton-framework properties.
    CheckFramework {
        input: PathBuf,
        /// Subgraph to test instead of the default component.
        #[arg(long, value_name = "FILE", conflicts_with = "component_index")]
        framework: Option<PathBuf>,
        /// Use this tight component (index as listed by `components`).
        #[arg(long)]
        component_index: Option<usize>,
        /// Also check consistency on H - x and H - y.
        #[arg(long, value_name = "X,Y", value_delimiter = ',')]
        consistency: Option<Vec<u32>>,
    },
    /// Brute-force audits.
    Audit {
        #[command(subcommand)]
        what: Audit,
    },
    /// Searches.
    Search {
        #[command(subcommand)]
        what: Search,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Sphere,
    Orientable,
    Nonorientable,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file (default: standard output). A `.meta.json` sidecar is written next to it.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildOutput {
    /// Surface output file.
    #[arg(short, long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Blow-up output file.
    #[arg(long, value_name = "FILE")]
    pub host: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Gen {
    /// Two-component 3-graph with large minimum degree.
    Fig1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: Option<usize>,
        #[arg(long)]
        z: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// 3-graph whose spanning component contains no surface of genus g.
    SurfaceLb {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        g: usize,
        #[command(flatten)]
        out: Output,
    },
    /// k-graph without a spanning component.
    Kgraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Surface fixture T9 (torus) or P12 (projective plane).
    Fixture {
        #[arg(long)]
        name: String,
        #[command(flatten)]
        out: Output,
        /// Also write the host blow-up.
        #[arg(long, value_name = "FILE")]
        host: Option<PathBuf>,
    },
    /// Tight path on l vertices, or its blow-up with --sizes.
    Path {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[command(flatten)]
        out: Output,
        /// Write the blow-up description (needs --sizes).
        #[arg(long, value_name = "FILE", requires = "sizes")]
        host: Option<PathBuf>,
    },
    /// Tight cycle on n vertices, or its blow-up with --sizes.
    Cycle {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[command(flatten)]
        out: Output,
        #[arg(long, value_name = "FILE", requires = "sizes")]
        host: Option<PathBuf>,
    },
    /// Complete k-partite k-graph with the given part sizes.
    Kpartite {
        #[arg(long)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// The 4-graph of tetrahedra (4-sets spanning four edges) of a 3-graph.
    Tetrahedra {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum Audit {
    /// Every 3-graph with δ₁ ≥ C(n-1,2)/2 + 1 has a spanning tight component.
    Theorem {
        #[arg(long)]
        n: usize,
        /// Enumerate every graph (default when no --samples is given).
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Triple inclusion probability as NUM/DEN.
        #[arg(long, value_name = "NUM/DEN", requires = "samples")]
        p: Option<String>,
        /// Refuse exhaustive runs over more than 2^T graphs.
        #[arg(long)]
        max_triples: Option<usize>,
        /// Directory for counterexample and extremal witness files.
        #[arg(long, value_name = "DIR")]
        witness_dir: Option<PathBuf>,
    },
    /// Exact minimum-degree threshold for a spanning component.
    Threshold {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_triples: Option<usize>,
        /// Write the extremal graph here.
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
    },
    /// Random k-graphs with minimum codegree above n/k: is there a spanning component?
    Codegree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "NUM/DEN")]
        p: Option<String>,
        #[arg(long, value_name = "DIR")]
        witness_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Search {
    /// Backtracking search for a spanning sphere in a 3-graph.
    Sphere {
        input: PathBuf,
        /// Node budget.
        #[arg(long)]
        budget: Option<u64>,
        /// Write a found sphere here.
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}
