mod check;
mod cohomology;
mod input;
mod poisson;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gbv_core::Error;

#[derive(Parser)]
#[command(name = "gbv", version, about = "Gerstenhaber/BV identities, Lie bialgebra and Poisson cohomology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity suites for a Lie bialgebra.
    Check(Source),
    /// Cohomology of (Λ•𝔤, d_δ), optionally through the 𝒟-invariant subcomplex.
    Cohomology(CohomologyArgs),
    /// Modular class, unimodularity probe and window cohomology of a polynomial bivector.
    Poisson(PoissonArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Args)]
pub struct Source {
    /// Preset name: aff2_trivial, aff2_case2, aff2_case3, sl2_standard, sl3_standard.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub preset: Option<String>,
    /// JSON bialgebra description.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// λ for aff2_case3, as p/q.
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args)]
pub struct CohomologyArgs {
    #[command(flatten)]
    pub source: Source,
    /// Also compute through the 𝒟-invariant subcomplex and compare.
    #[arg(long)]
    pub invariant: bool,
    /// Inclusive degree range a..b.
    #[arg(long)]
    pub degrees: Option<String>,
}

#[derive(Args)]
pub struct PoissonArgs {
    /// Preset name: r2_squared for (x²+y²)∂x∧∂y.
    #[arg(long, conflicts_with_all = ["file", "bivector"])]
    pub preset: Option<String>,
    /// Coefficient f of f∂x∧∂y.
    #[arg(long, conflicts_with = "file")]
    pub bivector: Option<String>,
    /// JSON list of {"coeff", "frame": [i, j]} terms.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Truncation N on polynomial degrees.
    #[arg(long, default_value_t = 6)]
    pub max_degree: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Exit status for a failed run.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::IdentityFailure { .. } => 1,
        Error::Hypothesis(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(src) => check::run(src),
        Command::Cohomology(args) => cohomology::run(args),
        Command::Poisson(args) => poisson::run(args),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Rendered output and the exit status it implies.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    pub fn new(text: String, ok: bool) -> Self {
        Outcome { text, code: if ok { 0 } else { 1 } }
    }

    pub fn json(value: &serde_json::Value, ok: bool) -> Self {
        let mut text = serde_json::to_string_pretty(value).expect("plain data");
        text.push('\n');
        Self::new(text, ok)
    }
}
