use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Trimmed means and their Edgeworth expansions.
#[derive(Debug, Parser)]
#[command(name = "tedge", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Plug-in estimates, empirical expansions and a confidence interval for
    /// one sample file.
    Analyze(AnalyzeArgs),
    /// Monte Carlo study of the trimmed-mean statistic.
    Simulate(SimulateArgs),
    /// Quantiles of a Bahadur-type remainder across sample sizes.
    Diagnose(DiagnoseArgs),
    /// Population functionals of a catalog distribution.
    Population(PopulationArgs),
}

#[derive(Debug, Args)]
struct TrimArgs {
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// uniform, exponential, normal, cauchy or discrete_uniform.
    #[arg(long)]
    family: Option<String>,
    /// Comma-separated family parameters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    params: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// One value per line; `#` starts a comment.
    file: PathBuf,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: f64,
    /// Confidence level of the expansion-corrected interval.
    #[arg(long)]
    level: Option<f64>,
    /// Use f_hat(xi_alpha) in both terms of the bias estimate.
    #[arg(long)]
    printed_bias: bool,
    /// Also write `analysis.json` here.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Study {
    /// Sup distances to the requested targets.
    Rate,
    /// Distances to each replicate's own empirical expansion.
    Empirical,
    /// Simulated bias against beta_N.
    Bias,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// TOML file with the simulation settings; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    trim: TrimArgs,
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<usize>>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// normalized or studentized.
    #[arg(long)]
    kind: Option<String>,
    /// Comma-separated subset of normal, population_expansion, empirical_expansion.
    #[arg(long, value_delimiter = ',')]
    targets: Option<Vec<String>>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Study::Rate)]
    study: Study,
    #[arg(long)]
    printed_bias: bool,
    /// Write replicate 0 of every sample size and its plug-in estimates.
    #[arg(long)]
    dump_sample: bool,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct DiagnoseArgs {
    /// lemma31, corollary31_first, corollary31_second, lemma41 or lemma51.
    #[arg(long)]
    lemma: String,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    trim: TrimArgs,
    #[arg(long, value_delimiter = ',')]
    n_list: Vec<usize>,
    #[arg(long, default_value_t = 10_000)]
    reps: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct PopulationArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    trim: TrimArgs,
    /// Also report beta_N and the expansion coefficients at this size.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => commands::analyze(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Diagnose(a) => commands::diagnose(a),
        Command::Population(a) => commands::population(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tedge: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
