mod commands;
mod error;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{parse_f, ring_for, Outcome, TorsionMode};
use error::{CliError, CliResult};

/// Default torsion depth for graded reports.
pub const DIMS_KMAX: u32 = 3;

#[derive(Parser)]
#[command(name = "brieskorn", version, about = "Brieskorn module invariants of homogeneous polynomials")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PolyArgs {
    /// Homogeneous polynomial, e.g. "x^3+y^2*z".
    f: String,

    /// Comma-separated variable names; inferred from the expression if omitted.
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum Command {
    /// Graded dimensions of the Milnor algebra, isolatedness and Milnor number.
    Hilbert {
        #[command(flatten)]
        poly: PolyArgs,
        /// Largest degree to tabulate [default: n(d-2)+2].
        #[arg(long)]
        max_deg: Option<u32>,
    },
    /// Per-degree dimensions of M(f), B(f), C(f) and the torsion filtration.
    Dims {
        #[command(flatten)]
        poly: PolyArgs,
        /// Smallest total degree [default: n].
        #[arg(long)]
        min_deg: Option<u32>,
        /// Largest total degree [default: n+2d].
        #[arg(long)]
        max_deg: Option<u32>,
        #[arg(long, default_value_t = DIMS_KMAX)]
        kmax: u32,
    },
    /// Decide t^k [g w_n] = 0, or search for the torsion order of [g w_n].
    Torsion {
        #[command(flatten)]
        poly: PolyArgs,
        /// Class representative g.
        #[arg(long, default_value = "1")]
        g: String,
        /// Decide membership for this power of t.
        #[arg(long, conflicts_with = "order", required_unless_present = "order")]
        k: Option<u32>,
        /// Search for the least annihilating power up to --kmax.
        #[arg(long)]
        order: bool,
        #[arg(long, default_value_t = brieskorn::brieskorn::DEFAULT_KMAX)]
        kmax: u32,
        /// Write the witness certificate to this file.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Replay a certificate file.
    Verify { file: PathBuf },
    /// Coefficients of the formal series t^n (1-t^(d-1))^n / (1-t)^(n+1).
    Series {
        n: u32,
        d: u32,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Closed-form bases for x^p y^q, cross-checked against linear algebra.
    Xpyq {
        p: u32,
        q: u32,
        /// Largest total degree [default: 2(p+q)+6].
        #[arg(long)]
        max_deg: Option<u32>,
        #[arg(long, default_value_t = 2)]
        kmax: u32,
    },
    /// Run a JSON manifest of jobs; prints a JSON array ordered by job id.
    Manifest { file: PathBuf },
}

fn load_poly(poly: &PolyArgs, extra: &[&str]) -> CliResult<brieskorn::polyring::Polynomial> {
    let mut texts = vec![poly.f.as_str()];
    texts.extend_from_slice(extra);
    let ring = ring_for(poly.vars.as_deref(), &texts)?;
    parse_f(&poly.f, &ring)
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Hilbert { poly, max_deg } => commands::hilbert(&load_poly(poly, &[])?, *max_deg),
        Command::Dims { poly, min_deg, max_deg, kmax } => {
            commands::dims(&load_poly(poly, &[])?, *min_deg, *max_deg, *kmax)
        }
        Command::Torsion { poly, g, k, order: _, kmax, cert_out } => {
            let f = load_poly(poly, &[g])?;
            let g = brieskorn::polyring::parse_poly(g, f.ring())?;
            let mode = match k {
                Some(k) => TorsionMode::Membership(*k),
                None => TorsionMode::Order(*kmax),
            };
            commands::torsion(&f, &g, mode, cert_out.as_deref())
        }
        Command::Verify { file } => commands::verify(file),
        Command::Series { n, d, terms } => commands::series(*n, *d, *terms),
        Command::Xpyq { p, q, max_deg, kmax } => commands::xpyq(*p, *q, *max_deg, *kmax),
        Command::Manifest { file } => {
            let jobs = manifest::load(file)?;
            let (results, worst) = manifest::run(&jobs);
            let json = serde_json::to_value(&results).expect("results serialize");
            let text = serde_json::to_string_pretty(&json).expect("json") + "\n";
            Ok(Outcome { json, text, exit: worst })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exit = match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
            }
            out.exit
        }
        Err(CliError { exit, message }) => {
            eprintln!("error: {message}");
            exit
        }
    };
    ExitCode::from(exit.code() as u8)
}
