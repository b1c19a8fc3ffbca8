//! `polyfunc`: dimensions, cross effects and mod-p checks of polynomial functors.

use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use gol_core::par::Exec;
use gol_core::polyfunctor::{cross_effect_dims, dim_at, tensor_end_dim, verify_welldefined, PolyFunctorSpec};

#[derive(Parser)]
#[command(name = "polyfunc", version, about = "Polynomial functor bookkeeping")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    /// F(pA) = 0 and F(A + pG) = F(A) mod p below degree p.
    Welldefined,
    /// dim End((F_p^k)^{⊗n}) over all matrices is n!.
    TensorEnd,
}

#[derive(Subcommand)]
enum Command {
    /// dim F(Z^k).
    Dims {
        /// id | const | tensor:n | sym:n | ext:n | lin:m:n | sum(spec,...)
        #[arg(long)]
        functor: PolyFunctorSpec,
        #[arg(long)]
        k: usize,
    },
    /// Cross-effect dimensions c_1..c_slots and the constant offset.
    Cross {
        #[arg(long)]
        functor: PolyFunctorSpec,
        #[arg(long)]
        slots: usize,
    },
    /// Randomized or exhaustive checks; exits nonzero on failure.
    Verify {
        #[arg(long, value_enum)]
        lemma: Check,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Tensor degree for tensor-end.
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Dims { functor, k } => {
            println!("{}", dim_at(&functor, k)?);
        }
        Command::Cross { functor, slots } => {
            println!("{}", serde_json::to_string(&cross_effect_dims(&functor, slots)?)?);
        }
        Command::Verify { lemma: Check::Welldefined, p, trials, seed, .. } => {
            let out = verify_welldefined(p, trials, seed, Exec::Parallel)?;
            println!("{}", serde_json::to_string(&out)?);
            return Ok(out.failures == 0);
        }
        Command::Verify { lemma: Check::TensorEnd, p, n, .. } => {
            let mut ok = true;
            let mut fact = 1;
            for k in 1..=n {
                fact *= k;
            }
            for k in n..=n.max(4) {
                let t = tensor_end_dim(n, k, p)?;
                println!("n = {n}, k = {k}: dim {} (expected {fact})", t.dim);
                ok &= t.dim == fact;
            }
            return Ok(ok);
        }
    }
    Ok(true)
}
