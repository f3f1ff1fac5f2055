use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gentle_core::cli::{self, Command, Options};

#[derive(Parser)]
#[command(name = "gentle", about = "Surface-model invariants of graded gentle algebras")]
struct Args {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest block handed to a Gauss-sum evaluation.
    #[arg(long, global = true, default_value_t = gentle_core::quadforms::DEFAULT_MAX_GAUSS_DIM)]
    max_gauss_dim: usize,
    #[command(subcommand)]
    cmd: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Parse a .gentle file and check the gentle axioms.
    Validate { file: PathBuf },
    /// AAG pairs, genus, boundary data, sigma, gcd and Arf invariants.
    Invariants { file: PathBuf },
    /// Ribbon graph and its boundary faces.
    Surface { file: PathBuf },
    /// Decide the sufficient criterion for derived equivalence.
    Compare {
        first: PathBuf,
        second: PathBuf,
        /// Use AAG data only (finite-dimensional, degree 0).
        #[arg(long)]
        aag: bool,
    },
    /// Koszul dual of a proper degree-0 algebra, as .gentle text.
    Dual { file: PathBuf },
    /// Compare two stacky curves, e.g. `stacky ring 7;1 ring 7;2`.
    Stacky {
        #[arg(allow_hyphen_values = true, num_args = 4.., required = true)]
        words: Vec<String>,
    },
    /// Print a random gentle algebra drawn from --seed.
    Random {
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        #[arg(long, default_value_t = 2)]
        max_degree: i64,
        #[arg(long)]
        proper: bool,
        /// Allow forbidden cycles.
        #[arg(long)]
        any: bool,
    },
}

// `ring 7;1 ring 7;2` or `chain 2,3 ; -1 chain 5 ; -1`: a kind word starts
// each side, everything up to the next kind word is its spec.
fn split_stacky(words: &[String]) -> Option<((String, String), (String, String))> {
    let is_kind = |w: &str| w == "chain" || w == "ring";
    let second = words.iter().skip(1).position(|w| is_kind(w))? + 1;
    if !is_kind(&words[0]) {
        return None;
    }
    let side = |ws: &[String]| (ws[0].clone(), ws[1..].concat());
    Some((side(&words[..second]), side(&words[second..])))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options {
        json: args.json,
        seed: args.seed,
        max_gauss_dim: args.max_gauss_dim,
    };
    let cmd = match args.cmd {
        Sub::Validate { file } => Command::Validate { file },
        Sub::Invariants { file } => Command::Invariants { file },
        Sub::Surface { file } => Command::Surface { file },
        Sub::Compare { first, second, aag } => Command::Compare { first, second, aag },
        Sub::Dual { file } => Command::Dual { file },
        Sub::Stacky { words } => match split_stacky(&words) {
            Some((first, second)) => Command::Stacky { first, second },
            None => {
                eprintln!("error[E600]: expected `chain|ring SPEC chain|ring SPEC`");
                return ExitCode::from(cli::EXIT_USAGE as u8);
            }
        },
        Sub::Random { vertices, max_degree, proper, any } => Command::Random {
            vertices,
            max_degree,
            proper,
            smooth: !any,
        },
    };
    let out = cli::run(&cmd, &opts);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
