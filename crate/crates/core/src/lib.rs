//! Exact Hopf-algebraic evaluation of non-semisimple quantum invariants.
//!
//! The small quantum group of sl2 at an odd root of unity is built as explicit
//! structure tensors over a cyclotomic field. On top of it sit the ribbon
//! category of its modules, an evaluator for slice-presented ribbon graphs
//! with surgery, and the coend operators that generate mapping class group
//! representations.

pub mod cyclo;
pub mod hopf;
pub mod mcg;
mod error;
pub mod par;
pub mod rep;
pub mod suite;
pub mod tangle;

pub use error::Error;
