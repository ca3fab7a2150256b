//! `qcat`: batch front end for qcat-core. Every subcommand prints one JSON
//! report. Exit status is 0 for true verdicts, 1 for false or inconclusive
//! ones and 2 for usage and input errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "qcat", version, about = "Finite simplicial sets, path categories and quasi-categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Opts {
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Dimension bound for saturation.
    #[arg(long, global = true, value_name = "N")]
    pub dim_bound: Option<usize>,
    /// Word length bound for path categories with loops.
    #[arg(long, global = true, value_name = "N")]
    pub max_len: Option<usize>,
    /// Cap on the number of maps enumerated.
    #[arg(long, global = true, value_name = "N")]
    pub limit: Option<usize>,
    /// Replay built certificates.
    #[arg(long, global = true)]
    pub verify: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Presentation of the path category, with hom-sets on request.
    Pathcat {
        input: PathBuf,
        #[arg(long)]
        homsets: bool,
    },
    /// Classes of one hom-set of the path category.
    Homset { input: PathBuf, x: usize, y: usize },
    /// Inner horn filling check.
    Certify { input: PathBuf },
    /// The core of a quasi-category.
    Core { input: PathBuf },
    /// The homotopy category of a quasi-category.
    Ho { input: PathBuf },
    /// Isomorphism classes of vertices of hom(K, X).
    Tau0 { source: PathBuf, target: PathBuf },
    /// Attach a simplex along every inner horn.
    Saturate { input: PathBuf },
    /// Maximal simplices of a prism as lattice paths.
    Shuffles { r: usize, s: usize },
    /// Build an inner anodyne certificate.
    CertBuild {
        /// Horn-times-simplex inclusion for n k m.
        #[arg(long, num_args = 3, value_names = ["N", "K", "M"], conflicts_with = "lemma8")]
        theorem45: Option<Vec<usize>>,
        /// Union of the faces S of Δ^n, given as n followed by S.
        #[arg(long, num_args = 1.., value_names = ["N", "S"])]
        lemma8: Option<Vec<usize>>,
    },
    /// Replay a certificate.
    CertVerify { input: PathBuf },
    /// Equivalence test through powers of the five small shapes.
    Equiv40 { input: PathBuf },
    /// Run the checks over the bundled corpus.
    CorpusRun {
        /// Also write the corpus files into this directory.
        #[arg(long, value_name = "DIR")]
        write: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
