//! `quasicomm`: command-line access to the quasicomm toolkit.
//!
//! Exit status: 0 on success or a verified property, 1 when a checked
//! property fails, 2 on usage or input errors.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] quasicomm::Error),
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    PropertyFailed,
}

impl From<bool> for Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::PropertyFailed
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "quasicomm", version, about = "Exact algebra for matrix pairs with AB = ωBA and the quantum plane xy = ωyx")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PairInput {
    /// One file holding A and B, or two files holding one matrix each.
    #[arg(required = true, num_args = 1..=2)]
    files: Vec<PathBuf>,
    /// Lift rational entries into Q(ζ_N).
    #[arg(long, value_name = "N")]
    omega: Option<u32>,
    /// Tolerance for floating-point comparisons.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients c_k of (x + y)^q = Σ c_k y^k x^(q−k) when xy = ωyx: the
    /// Gaussian binomials [q, k], generic in w or evaluated at ω = ζ_N.
    Qbinom {
        #[arg(long)]
        q: usize,
        /// Print only c_k.
        #[arg(long)]
        k: Option<i64>,
        /// Evaluate at ω = ζ_N instead of keeping w generic.
        #[arg(long, value_name = "N")]
        omega: Option<u32>,
    },
    /// Normal-ordered expansion of (x + y)^q in the quantum plane xy = ωyx.
    Expand {
        #[arg(long)]
        q: u32,
        #[arg(long, value_name = "N")]
        omega: Option<u32>,
    },
    /// Rewrite a polynomial in x, y into the normal form Σ c_ij y^i x^j modulo xy − ωyx.
    Normalform {
        /// Polynomial, e.g. "(x+y)^3 - x^3".
        poly: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_name = "N")]
        omega: Option<u32>,
    },
    /// Decide membership in the two-sided ideal generated by xy − ωyx.
    Member {
        poly: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_name = "N")]
        omega: Option<u32>,
    },
    /// Detect ω with AB = ωBA and verify it entrywise.
    Check {
        #[command(flatten)]
        pair: PairInput,
    },
    /// Test (sA + tB)^q = (sA)^q + (tB)^q at sample points.
    Potter {
        #[command(flatten)]
        pair: PairInput,
        #[arg(long)]
        q: u32,
        /// Sample points as "s,t;s,t;…" with rational s, t.
        #[arg(long, default_value = "1,1;2,3;-1,5")]
        samples: String,
    },
    /// Simultaneous block diagonalisation into blocks of types I–IV, by which of
    /// σ(A), σ(B) is {0}.
    Decompose {
        #[command(flatten)]
        pair: PairInput,
    },
    /// Reduce a nonsingular pair to A = diag(a, ωa, …, ω^(k−1)a) and B with
    /// identity blocks below the diagonal and b in the top-right corner.
    Reduce {
        #[command(flatten)]
        pair: PairInput,
    },
    /// Basis of the solutions X of AX = αXA.
    Commutant {
        file: PathBuf,
        /// The factor α, e.g. "3" or "w^2" (with --omega).
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, value_name = "N")]
        omega: Option<u32>,
    },
    /// Eigenvalues with multiplicities, optionally split into chains μ, ωμ, ω²μ, … for ω = ζ_N.
    Spectrum {
        file: PathBuf,
        #[arg(long, value_name = "N")]
        omega: Option<u32>,
        /// Require the nonzero spectrum to be a union of full ω-orbits.
        #[arg(long, requires = "omega")]
        carollian: bool,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Wielandt's pair: the cyclic shift and diag(1, ζ, …, ζ^(q−1)); ω goes to stderr.
    Wielandt {
        #[arg(long)]
        q: u32,
    },
    /// Embed commuting M, N as A = diag(M, ωM, …), B cyclic with N in the corner, ω = ζ_k.
    Embed {
        /// One file with M and N, or two files.
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
        #[arg(long)]
        k: usize,
    },
    /// Worked examples and counterexamples to the converse of (sA + tB)^q = (sA)^q + (tB)^q.
    Gallery {
        /// One of 5, 11, 12a, 12b, 13, 14.
        #[arg(long)]
        example: String,
        /// λ for examples 5 and 11.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// α for example 5.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        /// x1,x2,x3 for example 13.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// ω = ζ_3^p for examples 13 and 14.
        #[arg(long, default_value_t = 1)]
        omega_power: u32,
    },
}

fn run(cli: Cli) -> Result<Status, CliError> {
    use commands as c;
    match cli.command {
        Command::Qbinom { q, k, omega } => c::qbinom(q, k, omega),
        Command::Expand { q, omega } => c::expand(q, omega),
        Command::Normalform { poly, file, omega } => c::normalform(poly.as_deref(), file.as_deref(), omega),
        Command::Member { poly, file, omega } => c::member(poly.as_deref(), file.as_deref(), omega),
        Command::Check { pair } => c::check(&pair.files, pair.omega, pair.tol),
        Command::Potter { pair, q, samples } => c::potter(&pair.files, pair.omega, pair.tol, q, &samples),
        Command::Decompose { pair } => c::decompose(&pair.files, pair.omega, pair.tol),
        Command::Reduce { pair } => c::reduce(&pair.files, pair.omega, pair.tol),
        Command::Commutant { file, alpha, omega } => c::commutant(&file, &alpha, omega),
        Command::Spectrum { file, omega, carollian, tol } => c::spectrum(&file, omega, carollian, tol),
        Command::Wielandt { q } => c::wielandt(q),
        Command::Embed { files, k } => c::embed(&files, k),
        Command::Gallery { example, lambda, alpha, x, omega_power } => {
            c::gallery(&example, lambda.as_deref(), alpha.as_deref(), x.as_deref(), omega_power)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::PropertyFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
