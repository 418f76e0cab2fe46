mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use projlink::AmbientSpace;

use crate::output::{Outcome, Report};

/// Torus links in S3 and RP3, class atlases and JSJ tree checks.
#[derive(Parser, Debug)]
#[command(name = "projlink", version)]
pub struct Cli {
    /// Worker threads for enumeration and verification (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form, component count and classification of one link
    Canon {
        #[command(flatten)]
        space: SpaceArg,
        /// p q n
        #[arg(num_args = 3, value_names = ["P", "Q", "N"], allow_negative_numbers = true)]
        triple: Vec<i64>,
    },
    /// Decide whether two links in the same space are isotopic
    Isotopic {
        #[command(flatten)]
        space: SpaceArg,
        /// p1 q1 n1 p2 q2 n2
        #[arg(num_args = 6, value_names = ["P1", "Q1", "N1", "P2", "Q2", "N2"], allow_negative_numbers = true)]
        triples: Vec<i64>,
    },
    /// Preimage of an RP3 link in S3
    Lift {
        /// p q n
        #[arg(num_args = 3, value_names = ["P", "Q", "N"], allow_negative_numbers = true)]
        triple: Vec<i64>,
    },
    /// Isotopy classes of every triple with |p|, |q| at most the bound
    Atlas {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long, default_value_t = 5)]
        bound: u32,
    },
    /// Run one of the exhaustive checks
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        /// Both spaces are audited when omitted (confluence only)
        #[arg(long)]
        space: Option<AmbientSpace>,
        /// Defaults: 20 for lift-injectivity, 10 for confluence, 30 for relation-lift
        #[arg(long)]
        bound: Option<u32>,
    },
    /// JSJ tree tools
    Jsj {
        #[command(subcommand)]
        command: JsjCommand,
    },
}

#[derive(Args, Debug)]
pub struct SpaceArg {
    #[arg(long, default_value = "s3")]
    space: AmbientSpace,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyKind {
    LiftInjectivity,
    Confluence,
    RelationLift,
}

impl VerifyKind {
    fn name(self) -> &'static str {
        match self {
            VerifyKind::LiftInjectivity => "lift-injectivity",
            VerifyKind::Confluence => "confluence",
            VerifyKind::RelationLift => "relation-lift",
        }
    }

    fn default_bound(self) -> u32 {
        match self {
            VerifyKind::LiftInjectivity => 20,
            VerifyKind::Confluence => 10,
            VerifyKind::RelationLift => 30,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum JsjCommand {
    /// Potential and outermost pieces of a tree file (`-` for stdin)
    Outermost { file: PathBuf },
    /// Compare the parity criterion in a cover with outermost pieces of its quotient
    CoverCheck { file: PathBuf },
    /// Print a random valid tree
    SampleTree {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        vertices: usize,
    },
    /// Print a random valid cover
    SampleCover {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        vertices: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let report = Report::error("usage", "USAGE", e.kind().to_string(), Outcome::Usage);
            return report.emit();
        }
    };

    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("could not configure worker pool: {e}");
        }
    }

    commands::run(cli.command).emit()
}
