//! `relaxcert` command-line tool.
//!
//! Exit codes: 0 on success (for `certify`, certified and verified), 1 when
//! the certificate does not fire or a consistency check fails, 2 on input
//! errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "relaxcert", version, about = "Exactness certificates for 0-1 LP relaxations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full adjust-and-retry certification loop.
    Certify(CertifyArgs),
    /// Per-column goodness bounds, eta1, s* and the threshold.
    Eta(EtaArgs),
    /// Exact and closed-form gamma-hat, checked for agreement.
    GammaHat(GammaArgs),
    /// Exhaustive 0-1 optimum.
    BruteForce(BruteArgs),
    /// Write a seeded random instance.
    Gen(GenArgs),
    /// Maximum independent set of a graph via the complemented program.
    Mis(MisArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Instance file.
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    /// Comma-separated weights in (0, 1]; overrides a `c` line in the file.
    #[arg(long, value_delimiter = ',', value_name = "C1,C2,..")]
    weights: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Strategy {
    Even,
    Random,
}

#[derive(Debug, Args)]
struct LoopArgs {
    /// Dual box radius; defaults to the beta_bar rule.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Weight-adjustment iterations.
    #[arg(long = "max-iters", default_value_t = 10)]
    max_iters: usize,
    /// Uniqueness tolerance on the optimal face.
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Strategy::Even)]
    strategy: Strategy,
    /// Skip the exhaustive 0-1 check.
    #[arg(long = "no-verify")]
    no_verify: bool,
}

#[derive(Debug, Args)]
struct CertifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    run: LoopArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct EtaArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    beta: Option<f64>,
    /// Sparsity for the `s * eta1` bound; defaults to s*.
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct GammaArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, default_value_t = 1)]
    s: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct BruteArgs {
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest entry of `A`.
    #[arg(long = "max-entry", default_value_t = 2)]
    max_entry: u32,
    /// Weights to attach as a `c` line.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<f64>>,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct MisArgs {
    /// Graph file (`p N` then `e u v` lines).
    #[arg(long, value_name = "PATH")]
    graph: PathBuf,
    #[command(flatten)]
    run: LoopArgs,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Certify(a) => commands::certify(a),
        Command::Eta(a) => commands::eta(a),
        Command::GammaHat(a) => commands::gamma_hat(a),
        Command::BruteForce(a) => commands::brute_force(a),
        Command::Gen(a) => commands::gen(a),
        Command::Mis(a) => commands::mis(a),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
