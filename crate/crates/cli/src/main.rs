use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

use commands::{CliError, Report};

/// Normal forms, norms, roots and equation cascades in graph products, plus
/// Hawaiian-earring truncations and the central amalgam `CE`.
#[derive(Debug, Parser)]
#[command(name = "slender", version)]
pub struct Cli {
    /// Group file (JSON with `vertices`, `edges`, `vertex_groups`).
    #[arg(long, global = true, value_name = "FILE")]
    group: Option<PathBuf>,
    /// Print one canonical JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graph-product arithmetic.
    #[command(subcommand)]
    Gp(GpCmd),
    /// Norms and their verification.
    #[command(subcommand)]
    Norm(NormCmd),
    /// Root sets and power-free bounds.
    #[command(subcommand)]
    Roots(RootsCmd),
    /// Equation cascades `y_m = a_m y_{m+1}^{k_m}`.
    #[command(subcommand)]
    Eq(EqCmd),
    /// Witnesses and refutation certificates.
    #[command(subcommand)]
    Wit(WitCmd),
    /// Truncated Hawaiian-earring words.
    #[command(subcommand)]
    Heg(HegCmd),
    /// The central amalgam `<z, x_n | x_n^n = z>`.
    #[command(subcommand)]
    Cx(CxCmd),
    /// Acceptance criteria.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Debug, Subcommand)]
pub enum GpCmd {
    /// Canonical form of a word.
    Normalize { word: String },
    /// Product of one or more elements, left to right.
    Mul {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Integer power.
    #[command(allow_negative_numbers = true)]
    Pow { word: String, n: i64 },
    /// Inverse.
    Inv { word: String },
    /// `prefix · core · prefix^-1` with a cyclically reduced core.
    Pivot {
        word: String,
        /// Refuse to split syllables.
        #[arg(long)]
        strict: bool,
    },
    /// Image in the direct sum of the vertex groups.
    Sigma { word: String },
    /// Whether two vertices span an edge.
    Commutes { v0: String, v1: String },
    /// Elements of norm at most the radius, in canonical order.
    Ball {
        #[arg(long)]
        radius: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormKind {
    Dudley,
    Syllable,
    Kersigma,
}

#[derive(Debug, Subcommand)]
pub enum NormCmd {
    Dudley { word: String },
    Syllable { word: String },
    /// Syllable count, defined on the kernel of sigma only.
    Kersigma { word: String },
    /// Checks the length-function and power clauses on a ball.
    Verify {
        #[arg(long, value_enum, default_value = "dudley")]
        norm: NormKind,
        #[arg(long, default_value_t = 3)]
        radius: u64,
        #[arg(long, default_value_t = 4)]
        nmax: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum RootsCmd {
    /// Every `h` with `h^n = g`; bounded search when `--radius` is given.
    Find {
        word: String,
        #[arg(long)]
        radius: Option<u64>,
        #[arg(long, requires = "radius")]
        nmax: Option<u64>,
    },
    /// `g^-1 Roots(... g^-1 X)` with `--depth` applications of `Roots`.
    Closure {
        #[arg(long)]
        g: String,
        #[arg(long)]
        depth: usize,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Least `p` such that no listed element is a proper `n`-th power for `n >= p`.
    Pbound {
        #[arg(required = true)]
        words: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// JSON system `{"g": .., "j": .., "k": [..]}` or `{"a": [..], "k": [..]}`.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["g", "a", "k"])]
    system: Option<PathBuf>,
    /// Uniform coefficient base.
    #[arg(long, conflicts_with = "a")]
    g: Option<String>,
    #[arg(long, requires = "g")]
    j: Option<u64>,
    /// Explicit coefficients, comma separated.
    #[arg(long, value_delimiter = ',')]
    a: Option<Vec<String>>,
    /// Exponents k_0..k_M, comma separated.
    #[arg(long, value_delimiter = ',')]
    k: Option<Vec<u64>>,
}

#[derive(Debug, Subcommand)]
pub enum EqCmd {
    /// Substitutes a tuple `b_0 .. b_{M+1}`.
    Check {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(required = true)]
        tuple: Vec<String>,
    },
    /// Bounded search for a solution starting at `b_0`.
    Solve {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        b0: String,
        #[arg(long, default_value_t = 3)]
        radius: u64,
    },
    /// Exponents `e_m` of the solution inside a cyclic subgroup.
    Symbolic {
        #[arg(long, default_value_t = 1)]
        j: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    Dudley,
    FiniteRoots,
    GraphProduct,
}

#[derive(Debug, Subcommand)]
pub enum WitCmd {
    /// Prints `j`, the first terms of `p` and optionally the depth bound at `b_0`.
    Derive {
        #[arg(long)]
        g: String,
        #[arg(long, value_enum, default_value = "dudley")]
        method: WitnessKind,
        #[arg(long, default_value_t = 8)]
        terms: usize,
        #[arg(long)]
        b0: Option<String>,
        /// Lift to an extension by a quotient of exponent `D`.
        #[arg(long, value_name = "D")]
        bounded_exponent: Option<u64>,
    },
    /// Dudley refutation certificate for `y_m = g y_{m+1}^{k_m}` at `b_0`.
    Certify {
        #[arg(long)]
        g: String,
        #[arg(long)]
        b0: String,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum HegCmd {
    /// `p_N`: deletes letters of index at least N and reduces.
    Project {
        word: String,
        #[arg(long)]
        level: usize,
    },
    /// Alternating blocks below and above `--at`.
    Split {
        word: String,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        at: usize,
    },
    /// `p_N(U_m)` for a lazily specified cascade solution.
    Lazy {
        m: usize,
        #[arg(long)]
        level: usize,
        /// JSON `{"W": [..], "floor": .., "k": [..]}`; built-in fixture otherwise.
        #[arg(long, value_name = "FILE")]
        fixture: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CxCmd {
    Mul {
        #[arg(required = true)]
        words: Vec<String>,
    },
    #[command(allow_negative_numbers = true)]
    Pow { word: String, n: i64 },
    /// Image in the free product of the cyclic groups `Z/n`.
    Quotient { word: String },
    /// Solves `y_m = z^j y_{m+1}^{k_m}` and checks the solution.
    Demo {
        #[arg(long, default_value_t = 1)]
        j: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SuiteCmd {
    /// Runs the acceptance criteria and prints one line per criterion.
    Run {
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u32>,
        /// Append wall-clock times (output is then no longer reproducible).
        #[arg(long)]
        timings: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::dispatch(&cli);
    let mut stdout = std::io::stdout().lock();
    match outcome {
        Ok(Report { text, json, ok }) => {
            let body = if cli.json { json.to_string() } else { text };
            let _ = writeln!(stdout, "{body}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                CliError::Domain(_) => 1,
            })
        }
    }
}
