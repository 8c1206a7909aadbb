//! Command-line surface: file I/O, subcommand dispatch, and run manifests.
//!
//! Every run writes its result files plus a `manifest.json` recording the
//! command line, input digests, configuration, output digests, and wall
//! clock. Outputs are line-delimited JSON with sorted keys and are written
//! atomically, so reruns with equal inputs are byte-identical.
//!
//! Exit codes: 0 on success, 1 on a domain error reported by the library,
//! 2 on a usage error.

mod commands;
mod manifest;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "catbox", version, about = "finite-scale category theory toolkit")]
pub struct Cli {
    /// Output directory for result files and the manifest.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Backtracking node budget for searches.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub budget: u64,
    /// Stage bound for iterated factorizations.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_stages: usize,
    /// Disable solved-triple pruning.
    #[arg(long, global = true, default_value_t = false)]
    pub no_prune: bool,
    /// Window bound for ordinal-category commands.
    #[arg(long, global = true, default_value_t = 6)]
    pub window: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a category file and write the normalized form.
    Validate { file: PathBuf },
    /// Limit-type constructions on finite categories.
    Construct {
        #[command(subcommand)]
        kind: ConstructCmd,
    },
    /// Finite colimits of presheaves.
    Colimit {
        #[command(subcommand)]
        kind: ColimitCmd,
    },
    /// Lifting problems and lifting-property checks.
    Lift {
        #[command(subcommand)]
        kind: LiftCmd,
    },
    /// Factorize a morphism against a generator class.
    Factorize {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Weak reflection of an object into the injectives.
    Reflect {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        object: PathBuf,
    },
    /// Orthogonal factorization against the codiagonal-augmented class.
    Ofactorize {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Reflection onto the orthogonality class.
    ReflectOrt {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        object: PathBuf,
        /// Optional presheaf files of orthogonal test objects for the
        /// universal-property check.
        #[arg(long)]
        test_object: Vec<PathBuf>,
    },
    /// Square-transposition correspondence check.
    SquareCorr {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Simplicial corpus over the ordinal window.
    Simplicial {
        #[command(subcommand)]
        kind: SimplicialCmd,
    },
    /// The deterministic verification corpus.
    Corpus {
        #[command(subcommand)]
        kind: CorpusCmd,
    },
    /// Re-verify a written factorization certificate.
    Verify {
        #[arg(long)]
        certificate: PathBuf,
        #[arg(long)]
        class: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructCmd {
    /// Pseudopullback of two functors with a common target.
    Pspb {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Inserter of a parallel pair of functors.
    Inserter {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Equifier of two natural transformations.
    Equifier {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Comma category of two functors with a common target.
    Comma {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Cone survey with a weakly initial subset, per diagram.
    ApproxComplete {
        /// Functor files whose sources are the diagram shapes.
        #[arg(long)]
        diagram: Vec<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ColimitCmd {
    /// Pushout of a span (two maps out of a common domain).
    Pushout {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Coequalizer of a parallel pair.
    Coeq {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Colimit of a composable chain of maps.
    Chain {
        /// Map files forming the chain, in order.
        #[arg(long)]
        map: Vec<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum LiftCmd {
    /// All diagonals of a commutative square.
    Solve {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        top: PathBuf,
        #[arg(long)]
        bottom: PathBuf,
    },
    /// Does every square have a filler?
    Box {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Does every square have a unique filler?
    Perp {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Is the object injective to every generator?
    Inj {
        #[arg(long)]
        object: PathBuf,
        #[arg(long)]
        class: PathBuf,
    },
    /// Is the object orthogonal to every generator?
    Ort {
        #[arg(long)]
        object: PathBuf,
        #[arg(long)]
        class: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum SimplicialCmd {
    /// The alpha-simplex with its nondegenerate census.
    Delta { alpha: usize },
    /// The symmetric 1-simplex, its inclusion, and its census.
    Delta1s,
    /// Symmetrization tower of the alpha-simplex.
    Symmetrize {
        #[arg(long, default_value_t = 1)]
        alpha: usize,
        #[arg(long)]
        stages: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusCmd {
    /// Run every corpus check and write the item table.
    Run,
}

/// Parses and executes; returns the process exit code.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    if cli.max_stages == 0 {
        eprintln!("error: --max-stages must be at least 1");
        return 2;
    }
    if cli.window == 0 {
        eprintln!("error: --window must be at least 1");
        return 2;
    }
    match commands::dispatch(&cli, &argv) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
