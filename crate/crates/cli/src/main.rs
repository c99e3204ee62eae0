mod commands;
mod render;

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use troplocal::Error;

#[derive(Parser, Debug)]
#[command(
    name = "troplocal",
    version,
    about = "Local tropicalization of ideals of power series rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input document, `-` for stdin.
    #[arg(long, global = true, default_value = "-")]
    input: String,

    /// Output file, `-` for stdout.
    #[arg(long, global = true, default_value = "-")]
    output: String,

    #[arg(long, global = true)]
    pretty: bool,

    /// Seed of the deterministic generic weights and samples.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Number of sampled weights for comparison commands.
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Hilbert basis of the saturation of a semigroup.
    Saturate,
    /// Lattice basis of the unit group.
    Units,
    /// Image of the semigroup modulo its units.
    Quotient,
    /// Faces of the semigroup.
    Faces,
    /// Binomial presentation of the semigroup algebra.
    ToricIdeal,
    /// Newton polyhedron of a polynomial.
    Newton,
    /// Newton cone of a polynomial.
    NewtonCone,
    /// Standard basis for a local order.
    StdBasis,
    /// Division with remainder for a local order.
    Divide,
    /// Initial ideal at a (possibly extended) weight.
    Init,
    /// Whether an ideal (or its initial ideal at a weight) contains no monomial.
    MonomialFree,
    /// Local Gröbner fan.
    GroebnerFan,
    /// Universal standard basis.
    UniversalBasis,
    /// Tropical and extended tropical basis.
    TropicalBasis,
    /// Nonnegative local tropicalization.
    Nntrop,
    /// Positive local tropicalization.
    Ptrop,
    /// Extended Newton cone of a series.
    HypersurfaceTrop,
    /// Compare the positive tropicalization with the global tropical variety.
    CompareGlobal,
    /// Krull dimension and pure dimension of the finite part.
    Dimension,
    /// SVG picture of two-dimensional data.
    Render,
}

pub struct Options {
    pub pretty: bool,
    pub seed: u64,
    pub samples: usize,
    pub max_dim: usize,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Schema(_) => 2,
        Error::Precondition(_) => 3,
        Error::Limit(_) => 4,
    }
}

fn read_input(path: &str) -> std::io::Result<String> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s)?;
    } else {
        s = std::fs::read_to_string(path)?;
    }
    Ok(s)
}

fn write_output(path: &str, text: &str) -> std::io::Result<()> {
    if path == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.write_all(b"\n")
    } else {
        std::fs::write(path, format!("{text}\n"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand => 1,
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 1,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let max_dim = match std::env::var("TROPLOCAL_MAX_DIM") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(d) => d,
            Err(_) => {
                eprintln!("error: TROPLOCAL_MAX_DIM is not a nonnegative integer");
                return ExitCode::from(2);
            }
        },
        Err(_) => 6,
    };
    let text = match read_input(&cli.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(2);
        }
    };
    let opts = Options {
        pretty: cli.pretty,
        seed: cli.seed,
        samples: cli.samples,
        max_dim,
    };
    match commands::run(cli.command, &text, &opts) {
        Ok(out) => match write_output(&cli.output, &out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write output: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
