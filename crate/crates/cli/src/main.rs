//! `hullkit`: compute and certify n-th hulls of polygonal links.
//!
//! Exit codes: 0 success / true / certified, 1 false / failure / gap,
//! 2 invalid input, 3 degenerate geometry, 4 contract violation.

mod commands;
mod parse;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "hullkit", version, about = "Exact n-th hulls of polygonal links")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an example embedding.
    #[command(subcommand)]
    Gen(Gen),
    /// Check that a link file is a valid embedding.
    Validate { file: String },
    /// Pairwise linking numbers.
    Lk { file: String },
    /// Crossing counts of all planes with a fixed normal.
    Profile {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Exact n-th hull membership of a point.
    Member {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        n: u64,
    },
    /// Least crossing count over sampled planes through a point.
    Sample {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Prove the n-th hull empty with a family of directions.
    CertifyEmpty {
        file: String,
        #[arg(long)]
        n: u64,
        /// `faces`, `axes`, or `a,b,c;d,e,f;...`.
        #[arg(long, allow_hyphen_values = true)]
        dirs: String,
    },
    /// Lower and upper bounds on the number of hulls.
    Bounds {
        file: String,
        /// Witness points; defaults to the vertex and component centroids.
        #[arg(long, allow_hyphen_values = true)]
        witness: Vec<String>,
        /// Direction families; defaults to `faces` and `axes`.
        #[arg(long, allow_hyphen_values = true)]
        dirs: Vec<String>,
    },
    /// How a plane `a x + b y + c z = d` meets each component.
    Ncut {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        plane: String,
    },
    /// Least largest subset over covers of K_p by four cliques.
    CoverMin(CoverP),
    /// Check that every cover of K_p has a clique of at least 3p/5 vertices.
    CoverVerify(CoverP),
    /// Structure of a given cover: the union graph, triangle or star.
    CoverStructure {
        #[arg(long)]
        p: u32,
        /// Four 1-based subsets separated by `;`, e.g. `1,2,3;1,2,4;1,2,5;3,4,5`.
        #[arg(long)]
        sets: String,
    },
    /// Common point of the three quadrilateral circuits of an octahedron.
    OctaCommon { file: String },
    /// Graph hull membership of a point.
    GraphMember {
        file: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Args)]
pub struct CoverP {
    #[arg(long)]
    pub p: u32,
}

#[derive(Debug, Subcommand)]
pub enum Gen {
    /// Torus link on a round torus.
    Torus {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        segments: Option<usize>,
        #[arg(long, default_value = "2")]
        major: String,
        #[arg(long, default_value = "1")]
        minor: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Pairwise linked link on the tetrahedral scaffold.
    Tetra {
        #[arg(long)]
        p: u32,
        /// Override the remainder pattern, e.g. `1,1,1,0`.
        #[arg(long)]
        pattern: Option<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Octahedron graph, optionally under `x -> M x + t`.
    Octahedron {
        /// Twelve numbers: the rows of M, then t.
        #[arg(long, allow_hyphen_values = true)]
        affine: Option<String>,
        #[arg(short, long)]
        output: Option<String>,
    },
}

/// Why a command stopped without a yes/no answer.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Degenerate(String),
    Contract(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Degenerate(_) => 3,
            Failure::Contract(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Degenerate(m) | Failure::Contract(m) => m,
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("HULLKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("HULLKIT_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = configure_threads().and_then(|()| commands::run(cli.command));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
