//! `swcalc`: command-line front end for `swcalc-core`.
//!
//! Exit status is 0 on success, 1 when the input violates a mathematical
//! precondition, and 2 when the input cannot be parsed.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use input::{IntList, Matrix};
use output::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Malformed(_) => 2,
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        }
    )*};
}

domain_from!(
    swcalc_core::lattice::LatticeError,
    swcalc_core::surface::SurfaceError,
    swcalc_core::elliptic::EllipticError,
    swcalc_core::basic_classes::BasicClassError
);

#[derive(Debug, Parser)]
#[command(name = "swcalc", version, about = "Exact Seiberg-Witten computations for Kahler surfaces")]
struct Cli {
    /// Output style: aligned tables or `key=value` lines.
    #[arg(long, value_enum, global = true, default_value = "table")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

/// JSON input document; `-` reads standard input. Flags override its keys.
#[derive(Debug, Args)]
struct Source {
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SurfaceFlags {
    /// Geometric genus.
    #[arg(long = "pg")]
    p_g: Option<u32>,
    /// Irregularity.
    #[arg(long)]
    q: Option<u32>,
    /// Self-intersection of the minimal canonical class.
    #[arg(long, allow_hyphen_values = true)]
    kmin_sq: Option<i64>,
    /// Order of K_min when it is torsion, 0 otherwise.
    #[arg(long = "torsion")]
    kmin_torsion_order: Option<u32>,
    /// Number of blow-ups of the minimal model.
    #[arg(long = "blowups")]
    n_exceptional: Option<u32>,
}

#[derive(Debug, Args)]
struct LatticeFlags {
    /// Gram matrix, rows separated by `;`, e.g. `0,1;1,0`.
    #[arg(long, allow_hyphen_values = true)]
    gram: Option<Matrix>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Series,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Derived topological invariants of a surface.
    SurfaceInfo {
        #[command(flatten)]
        surface: SurfaceFlags,
        #[command(flatten)]
        src: Source,
    },
    /// Kodaira dimension.
    Kodaira {
        #[command(flatten)]
        surface: SurfaceFlags,
        #[command(flatten)]
        src: Source,
    },
    /// Plurigenus P_n of a surface of general type.
    Plurigenus {
        #[command(flatten)]
        surface: SurfaceFlags,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[command(flatten)]
        src: Source,
    },
    /// Virtual dimension, from (2L-K)^2 and the invariants or from a lattice.
    Vdim {
        #[command(flatten)]
        surface: SurfaceFlags,
        /// Square of the determinant class 2L - K.
        #[arg(long, allow_hyphen_values = true)]
        det_sq: Option<i64>,
        #[command(flatten)]
        lattice: LatticeFlags,
        #[arg(long, allow_hyphen_values = true)]
        l: Option<IntList>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<IntList>,
        #[command(flatten)]
        src: Source,
    },
    /// Multiplicity of a vertical bundle on an elliptic surface.
    Swmult {
        #[arg(long)]
        chi: Option<i64>,
        #[arg(long)]
        g: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[command(flatten)]
        src: Source,
    },
    /// Multiplicity after one blow-up, twisting by a times the exceptional class.
    Blowup {
        #[arg(long)]
        chi: Option<i64>,
        #[arg(long)]
        g: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        #[command(flatten)]
        src: Source,
    },
    /// Divisibility of K_X for an elliptic surface.
    Divisibility {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long = "pg")]
        p_g: Option<u32>,
        /// Base genus (general fibration).
        #[arg(long)]
        g: Option<u32>,
        /// Holomorphic Euler characteristic (general fibration).
        #[arg(long)]
        chi: Option<u32>,
        /// Multiple-fiber multiplicities (general fibration).
        #[arg(long)]
        fibers: Option<IntList>,
        #[command(flatten)]
        src: Source,
    },
    /// Recover multiple-fiber multiplicities (p, q) from divisibilities.
    Recover {
        #[arg(long = "pg")]
        p_g: Option<u32>,
        #[arg(long = "gcd")]
        gcd_pq: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        d2: Option<i64>,
        #[command(flatten)]
        src: Source,
    },
    /// Candidate basic classes on a model lattice.
    Candidates {
        #[command(flatten)]
        surface: SurfaceFlags,
        /// Divisibility of K_min in the hyperbolic model (elliptic case).
        #[arg(long)]
        kmin_div: Option<u32>,
        #[command(flatten)]
        src: Source,
    },
    /// Reflect v in the sphere s.
    Reflect {
        #[command(flatten)]
        lattice: LatticeFlags,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<IntList>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<IntList>,
        #[command(flatten)]
        src: Source,
    },
    /// Check both multiplicity routes against each other on the oracle grid.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
