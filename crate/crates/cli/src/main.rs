use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod input;

#[derive(Parser, Debug)]
#[command(name = "qmat", version, about = "q-matroids over small finite fields")]
pub struct Cli {
    /// Field size for verbs that build objects from scratch.
    #[arg(long, global = true, default_value_t = 2)]
    q: u8,

    /// Subspace budget: a number, or one of cli, default, vamos, unlimited.
    #[arg(long, global = true, default_value = "cli")]
    budget: String,

    /// Worker threads (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Override the modulus of matrix documents (comma separated, low degree first).
    #[arg(long, global = true, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Q-matroid and subspace arguments are file paths or inline JSON.
#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Check the rank or cyclic-flat axioms of a document.
    VerifyAxioms {
        matroid: String,
    },
    /// Cyclic flats with their ranks.
    CyclicFlats {
        matroid: String,
    },
    /// Rank of a subspace.
    Rank {
        matroid: String,
        subspace: String,
    },
    FreeProduct {
        first: String,
        second: String,
    },
    DirectSum {
        first: String,
        second: String,
    },
    Dual {
        matroid: String,
    },
    Restrict {
        matroid: String,
        subspace: String,
    },
    Contract {
        matroid: String,
        subspace: String,
    },
    Minor {
        matroid: String,
        lower: String,
        upper: String,
    },
    /// Compare two rank functions through the identity map.
    WeakCompare {
        first: String,
        second: String,
    },
    /// Primary flag and primary factors.
    Factorize {
        matroid: String,
    },
    Irreducible {
        matroid: String,
    },
    /// The q-matroid represented by a matrix over GF(q^m).
    FromMatrix {
        matrix: String,
    },
    /// Cyclic flats of M[G] are 0, F^{n1} + 0 and F^n with ranks 0, k1, k.
    VerifyFreeProductRep {
        matrix: String,
        #[arg(long)]
        n1: usize,
        #[arg(long, default_value_t = 1)]
        k1: usize,
    },
    /// Weights of the linear set on the projective line.
    ClubCheck {
        matrix: String,
    },
    EvasiveCheck {
        matrix: String,
        #[arg(long, default_value_t = 1)]
        k1: usize,
        /// Defaults to k - 1.
        #[arg(long)]
        h: Option<usize>,
    },
    /// Every X making (G1 X; 0 G2) a free-product representation.
    SearchX {
        g1: String,
        g2: String,
    },
    /// One q-matroid per isomorphism class on F_q^n (q = 2, n <= 3).
    Enumerate {
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.workers > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global();
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            if out.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
