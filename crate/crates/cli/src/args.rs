use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "origami-lab",
    version,
    about = "Square-tiled surfaces, warped-cone level graphs and classical expanders",
    long_about = "Square-tiled surfaces (origamis), the SL2(Z) shear action on them, the level graphs of \
                  the warped cone, classical Margulis / Gabber-Galil / Selberg expanders, and their \
                  spectral and discrete-homotopy invariants."
)]
pub struct Cli {
    /// Worker threads (defaults to all cores). Outputs do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format; each command accepts a subset.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Directory for artifacts and the run manifest.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Dot,
    Svg,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Square-tiled surfaces (origamis) given by a pair of permutations.
    #[command(subcommand)]
    Origami(OrigamiCmd),
    /// The shear action of a_k, b_k on an origami.
    #[command(subcommand)]
    Dynamics(DynamicsCmd),
    /// Level graphs of the warped cone over an origami.
    #[command(subcommand)]
    Level(LevelCmd),
    /// Classical expanders: Margulis, Gabber-Galil, Schreier and Selberg graphs.
    #[command(subcommand)]
    Classical(ClassicalCmd),
    /// Expansion certificates: Cheeger constants, normalized Laplacian gaps, Z^2 expansion.
    #[command(subcommand)]
    Spectral(SpectralCmd),
    /// Discrete fundamental group pi_{1,r} of a level graph at scale r.
    #[command(subcommand)]
    Pi1(Pi1Cmd),
    /// Write the datum, grid, edge list, vertex table and DOT drawing of one warped-cone level.
    Export(LevelArgs),
    /// Re-run the command recorded in a manifest and compare output hashes.
    Rerun(RerunArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
#[group(required = true, multiple = false)]
pub struct SurfaceArgs {
    /// Staircase origami Z_g of genus g (2g-1 squares).
    #[arg(long)]
    pub staircase: Option<usize>,
    /// The one-square torus.
    #[arg(long)]
    pub torus: bool,
    /// Origami datum JSON: {"m": .., "sigma": [..], "tau": [..]}, 0-based.
    #[arg(long)]
    pub datum: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct LevelArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// Shear parameter k of a_k, b_k.
    #[arg(long)]
    pub k: Option<u64>,
    /// Level t: the grid of denominator t.
    #[arg(long)]
    pub t: u64,
    /// Build the unwarped control (metric edges only).
    #[arg(long)]
    pub control: bool,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrigamiCmd {
    /// Validate an origami datum (transitivity) and report its corner classes.
    Validate(SurfaceArgs),
    /// Genus of an origami from the Euler characteristic of its square tiling.
    Genus(SurfaceArgs),
    /// Points of an origami with coordinates in (1/n)Z.
    Grid {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DynamicsCmd {
    /// Orbit of a point under the shears a_k, b_k and their inverses.
    Orbit {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Shear parameter k (defaults to the shear modulus).
        #[arg(long)]
        k: Option<u64>,
        /// Point as sq:x:y with rational coordinates, e.g. 0:1/2:0.
        #[arg(long)]
        point: String,
        /// Stop after words of this length.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Grid points fixed by one shear generator.
    Fixed {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Shear parameter k (defaults to the shear modulus).
        #[arg(long)]
        k: Option<u64>,
        /// Generator letter: a, A, b or B (capital is the inverse).
        #[arg(long)]
        generator: char,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelCmd {
    /// Build the warped-cone level graph: metric grid edges plus one edge per shear jump.
    Build(LevelArgs),
    /// Warped distance between grid points of a level graph.
    Dist {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long)]
        from: String,
        #[arg(long, required = true)]
        to: Vec<String>,
    },
    /// Warped distances inside one fibre of the branched covering over the torus, across levels.
    Fibers {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Shear parameter k (defaults to the shear modulus).
        #[arg(long)]
        k: Option<u64>,
        /// Comma-separated increasing levels.
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<u64>,
        /// Torus point whose fibre is used, unless --points is given.
        #[arg(long, default_value = "1/2")]
        x: String,
        #[arg(long, default_value = "0")]
        y: String,
        /// Explicit points (sq:x:y) sharing one torus image.
        #[arg(long, value_delimiter = ';')]
        points: Vec<String>,
    },
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassicalCmd {
    /// Margulis graph M_n: bipartite, transformations 1, T1, T2, T3, T4 on Z_n^2.
    Margulis {
        #[arg(long)]
        n: u64,
    },
    /// Margulis graph M-bar_n: transformations 1, T1, T2, T3-bar, T4.
    Mbar {
        #[arg(long)]
        n: u64,
    },
    /// Gabber-Galil graph L_n: transformations 1, T3, T3-bar, T1T3, T2T3.
    Gg {
        #[arg(long)]
        n: u64,
    },
    /// Schreier graph M°_n of SL2(Z) ⋉ Z^2 acting on Z_n^2 (10-regular).
    Schreier {
        #[arg(long)]
        n: u64,
    },
    /// Cayley graph of the subgroup of SL2(Z_n) generated by a_k, b_k (Selberg type).
    Selberg {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        k: u64,
    },
}

#[derive(Args, Debug, Clone, Serialize)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Edge-list file (`u v` per line, `# vertices=N` header).
    #[arg(long)]
    pub graph: Option<std::path::PathBuf>,
    /// Named graph: cycle:N, path:N, complete:N, schreier:N, margulis:N, mbar:N, gg:N,
    /// selberg:N:K, staircase:G:K:T (warped level) or torus:T (unwarped torus grid).
    #[arg(long)]
    pub family: Option<String>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralCmd {
    /// Exact Cheeger constant h = min |dA|/|A| by subset enumeration, with the spectral sandwich.
    Cheeger(GraphSource),
    /// Second eigenvalue of the normalized Laplacian, with Cheeger bounds.
    Lambda2 {
        #[command(flatten)]
        source: GraphSource,
        /// Eigensolver residual tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Normalized-Laplacian gaps across the levels of a warped cone (or of M°_n), against an unwarped control.
    Scan {
        #[command(flatten)]
        source: ScanSource,
        /// Shear parameter k (defaults to the shear modulus).
        #[arg(long)]
        k: Option<u64>,
        /// Comma-separated increasing levels.
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<u64>,
        /// Eigensolver residual tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Measure expansion of the shears on Z^2 minus the origin: |a_kA ∪ a_k⁻¹A ∪ b_kA ∪ b_k⁻¹A| ≥ 2|A|.
    Z2check {
        /// Number of random sets.
        #[arg(long, group = "sets")]
        random: Option<u64>,
        /// Explicit set as x,y;x,y;...
        #[arg(long, group = "sets")]
        set: Option<String>,
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 64)]
        max_size: usize,
        #[arg(long, default_value_t = 1000)]
        bound: i64,
    },
}

#[derive(Args, Debug, Clone, Serialize)]
#[group(required = true, multiple = false)]
pub struct ScanSource {
    /// Staircase origami Z_g of genus g.
    #[arg(long)]
    pub staircase: Option<usize>,
    /// The one-square torus.
    #[arg(long)]
    pub torus: bool,
    /// Origami datum JSON file.
    #[arg(long)]
    pub datum: Option<PathBuf>,
    /// Scan M°_n instead of an origami.
    #[arg(long)]
    pub schreier: bool,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pi1Cmd {
    /// Scale-r complex of a level graph: r-close edges, triangles and induced squares.
    Complex {
        #[command(flatten)]
        level: LevelArgs,
        /// Scale r: vertices within distance r are joined.
        #[arg(long)]
        r: u32,
    },
    /// First homology of the scale-r complex, i.e. the abelianization of pi_{1,r}.
    H1 {
        #[command(flatten)]
        level: LevelArgs,
        /// Scale r: vertices within distance r are joined.
        #[arg(long)]
        r: u32,
    },
    /// Try to show pi_{1,r} trivial by Tietze eliminations, writing a checkable certificate.
    Trivialize {
        #[command(flatten)]
        level: LevelArgs,
        /// Scale r: vertices within distance r are joined.
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Search for an r-homotopy contracting a loop, writing a replayable trace.
    Contract {
        #[command(flatten)]
        level: LevelArgs,
        /// Scale r: vertices within distance r are joined.
        #[arg(long)]
        r: u32,
        /// Loop as sq:x:y;sq:x:y;... (closed).
        #[arg(long, group = "loop")]
        path: Option<String>,
        /// Side loop of a square: SQ:bottom or SQ:left.
        #[arg(long, group = "loop")]
        side: Option<String>,
        #[arg(long, default_value_t = 200_000)]
        budget: usize,
    },
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RerunArgs {
    /// Manifest written by an earlier run.
    #[arg(long)]
    pub manifest: PathBuf,
}
