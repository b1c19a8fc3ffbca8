//! Exact computational algebra for Brauer tree algebras, Green orders over
//! truncated p-adic integers, idempotent recollements and polynomial-functor
//! dimension data, with verification suites over all of them.

pub mod algebra;
pub mod brauer_tree;
pub mod error;
pub mod exactring;
pub mod green;
pub mod par;
pub mod polyfunctor;
pub mod recollement;
pub mod report;

pub use error::{Error, Result};
