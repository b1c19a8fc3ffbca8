//! `gol`: runs the verification suites and moves trees and algebras in and
//! out of JSON.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use gol_core::algebra::{cartan_matrix, check_algebra, BasisAlgebra};
use gol_core::brauer_tree::{predicted_cartan, to_algebra_over, BrauerTree, Exceptional};
use gol_core::par::Exec;
use gol_core::report::{emit_json, run_suite, SuiteParams};

#[derive(Parser)]
#[command(name = "gol", version, about = "Exact verification suites for Brauer tree algebras and Green orders")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct RunArgs {
    /// brauer, green, recollement, polyfunc, oracle-s3 or all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Prime; each suite has its own default.
    #[arg(long)]
    p: Option<u64>,
    /// p-adic precision N for the green suite.
    #[arg(long)]
    precision: Option<u32>,
    /// Randomized trials per check.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the reports as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run everything on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print a tree as JSON.
    Tree(TreeArgs),
    /// Print the algebra of a tree as JSON.
    Algebra {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Check an algebra JSON document and print its Cartan matrix.
    Inspect {
        path: PathBuf,
        /// Compare against the predictions of this tree document.
        #[arg(long)]
        tree: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TreeArgs {
    /// Path with this many edges.
    #[arg(long, conflicts_with_all = ["star", "file"])]
    stem: Option<usize>,
    /// Star with this many edges.
    #[arg(long, conflicts_with = "file")]
    star: Option<usize>,
    /// Multiplicity of the star's center.
    #[arg(long, requires = "star", default_value_t = 1)]
    multiplicity: u32,
    /// Tree JSON document.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl TreeArgs {
    fn build(&self) -> Result<BrauerTree> {
        Ok(match (self.stem, self.star, &self.file) {
            (Some(n), _, _) => BrauerTree::stem(n)?,
            (_, Some(k), _) => {
                BrauerTree::star(k, Some(Exceptional { vertex: 0, multiplicity: self.multiplicity }))?
            }
            (_, _, Some(path)) => {
                let s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                BrauerTree::from_json(&s)?
            }
            _ => anyhow::bail!("give one of --stem, --star or --file"),
        })
    }
}

fn run(args: &RunArgs) -> Result<bool> {
    let params = SuiteParams {
        p: args.p,
        precision: args.precision,
        trials: args.trials,
        seed: args.seed,
        exec: if args.sequential { Exec::Sequential } else { Exec::Parallel },
    };
    let reports = run_suite(&args.suite, &params)?;
    for r in &reports {
        println!("{}", r.summary_line());
        if let Some(w) = &r.witness {
            println!("  witness: {w}");
        }
    }
    if let Some(path) = &args.json {
        emit_json(&reports, path).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(reports.iter().all(|r| r.passed()))
}

fn inspect(path: &PathBuf, tree: Option<&PathBuf>) -> Result<bool> {
    let s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let a = BasisAlgebra::from_json(&s)?;
    let report = check_algebra(&a);
    println!("dim {}, radical {}, vertices {}", a.dim(), a.radical().dim(), a.vertex_count());
    println!("{}", serde_json::to_string(&report)?);
    if !report.all_pass() {
        return Ok(false);
    }
    let c = cartan_matrix(&a)?;
    println!("cartan {}", serde_json::to_string(&c)?);
    if let Some(tp) = tree {
        let t = BrauerTree::from_json(&std::fs::read_to_string(tp)?)?;
        let ok = c == predicted_cartan(&t);
        println!("matches tree prediction: {ok}");
        return Ok(ok);
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        None => run(&cli.run),
        Some(Command::Tree(t)) => t.build().and_then(|t| {
            println!("{}", t.to_json()?);
            Ok(true)
        }),
        Some(Command::Algebra { tree, p }) => tree.build().and_then(|t| {
            println!("{}", to_algebra_over(&t, *p)?.to_json()?);
            Ok(true)
        }),
        Some(Command::Inspect { path, tree }) => inspect(path, tree.as_ref()),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
