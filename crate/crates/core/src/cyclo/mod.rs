//! Exact arithmetic in Q(z), z a primitive 4r-th root of unity, and exact
//! sparse linear algebra over it.

pub mod field;
pub mod linalg;
pub mod matrix;
pub mod num;
pub mod poly;
pub mod text;

pub use field::{field_init, FieldCtx};
pub use linalg::{inverse, min_poly, nullspace, nullspace_from_rref, proportional, rank, rref, solve, Echelon, Proportionality, Rref};
pub use matrix::{canonicalize, kron_apply, ExactMatrix, KronOp, SparseVec};
pub use num::CycloNum;
pub use poly::Poly;
pub use text::parse_cyclo;
