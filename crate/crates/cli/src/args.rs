use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ellipsolve::expr::{Env, Symbol};

#[derive(Debug, Parser)]
#[command(
    name = "ellipsolve",
    version,
    about = "Traveling-wave solutions via the general elliptic equation, with residual certificates"
)]
pub struct Cli {
    /// Seed for every randomized sweep.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Override the tolerance of the command's check.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List or certify the solution families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Reduce, match and list every solution with a quick certificate.
    Solve(SolveArgs),
    /// Check a table solution against its original equation on a grid.
    Verify(VerifyArgs),
    /// Tabulate a family or a table solution.
    Eval(EvalArgs),
    /// Emit the errata ledger with residual evidence.
    Errata(ErrataArgs),
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Check {
        /// Only this family (for example F14 or F3a).
        #[arg(long)]
        family: Option<String>,
        /// Admissible draws per family.
        #[arg(long, default_value_t = 25)]
        samples: usize,
    },
}

/// Parameter bindings accepted by every command.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    /// mBBM integration constant.
    #[arg(long = "B", allow_hyphen_values = true)]
    pub big_b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// NLS phase frequency.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// KdV-mKdV integration constant.
    #[arg(long = "C", allow_hyphen_values = true)]
    pub big_c: Option<f64>,
    /// Jacobi modulus.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<f64>,
    /// Sign choice ε = ±1.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
    /// Phase shift of the wave variable.
    #[arg(long, allow_hyphen_values = true)]
    pub xi0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c3: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c4: Option<f64>,
}

impl ParamArgs {
    pub fn env(&self) -> Env {
        let mut env = Env::new();
        let pairs = [
            (Symbol::Omega, self.omega),
            (Symbol::B, self.big_b),
            (Symbol::Alpha, self.alpha),
            (Symbol::Beta, self.beta),
            (Symbol::Gamma, self.gamma),
            (Symbol::Freq, self.c),
            (Symbol::C, self.big_c),
            (Symbol::M, self.m),
            (Symbol::Eps, self.eps),
            (Symbol::Xi0, self.xi0),
            (Symbol::C0, self.c0),
            (Symbol::C1, self.c1),
            (Symbol::C2, self.c2),
            (Symbol::C3, self.c3),
            (Symbol::C4, self.c4),
        ];
        for (s, v) in pairs {
            if let Some(v) = v {
                env.set(s, v);
            }
        }
        env
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, required_unless_present = "raw", conflicts_with = "raw")]
    pub pde: Option<String>,
    /// Reduced ODE coefficients `a0,a1,a2,a3` of `u'' = a0 + a1 u + a2 u^2 + a3 u^3`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub raw: Option<Vec<f64>>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Space range `a:b`.
    #[arg(long, default_value = "-5:5", allow_hyphen_values = true)]
    pub x: String,
    /// Time range `a:b`.
    #[arg(long = "t-range", default_value = "0:1", allow_hyphen_values = true)]
    pub t_range: String,
    #[arg(long, default_value_t = 512)]
    pub nx: usize,
    #[arg(long, default_value_t = 64)]
    pub nt: usize,
    /// Fail on points near poles instead of excluding them.
    #[arg(long)]
    pub keep_poles: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub pde: String,
    #[arg(long)]
    pub solution: String,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Run even when printed validity conditions are violated.
    #[arg(long)]
    pub unchecked: bool,
    /// Use the entry as printed, without adjudicated corrections.
    #[arg(long)]
    pub printed: bool,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, conflicts_with_all = ["pde", "solution"], required_unless_present = "pde")]
    pub family: Option<String>,
    #[arg(long, requires = "solution")]
    pub pde: Option<String>,
    #[arg(long, requires = "pde")]
    pub solution: Option<String>,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Sample range `a:b:n` in ξ (family) or x (solution).
    #[arg(long, default_value = "-5:5:101", allow_hyphen_values = true)]
    pub range: String,
    /// Time at which a solution is tabulated.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t: f64,
    /// Drop rows at poles instead of failing.
    #[arg(long)]
    pub skip_poles: bool,
    #[arg(long)]
    pub unchecked: bool,
    #[arg(long)]
    pub printed: bool,
}

#[derive(Debug, Args)]
pub struct ErrataArgs {
    /// Admissible draws per family or entry.
    #[arg(long, default_value_t = 25)]
    pub draws: usize,
    /// Also run the arbitrary-c0 audit.
    #[arg(long)]
    pub c0_audit: bool,
}
