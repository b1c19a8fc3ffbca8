//! Exact arithmetic over `F_p` and the truncated p-adic integers `Z/p^N`.
//!
//! Everything here is a plain value type. Precision is carried by each
//! scalar and matrix, and binary operations refuse to mix precisions.

pub mod arith;
mod int;
mod matrix;
mod scalar;
mod smith;
mod subspace;

pub use int::IntMatrix;
pub use matrix::{mat_kernel_fp, mat_rank_fp, ExactMatrix};
pub use scalar::{padic_valuation, FpScalar, PadicScalar, Ring, Valuation};
pub use smith::{padic_elementary_divisors, smith_form, Lattice, SmithForm};
pub use subspace::{Basis, Subspace};
