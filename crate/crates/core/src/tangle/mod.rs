//! A slice language for ribbon and bichrome graphs, its evaluation in the
//! module category, and the renormalized invariant of surgery
//! presentations.
//!
//! A program lists the bottom boundary, then slices read bottom to top.
//! Each slice covers the whole running boundary from left to right.
//! Red strands are surgery components; a graph with n red components is
//! given in n-bottom form, each component cut once and its two ends placed
//! as a (down, up) pair at the left of the bottom.

mod ast;
mod check;
mod coupons;
mod eval;
mod surgery;

pub use ast::{parse_tangle, Color, Orientation, Piece, Sign, Slice, Strand, TangleAst};
pub use check::{check, red_link, RedLink, Walk};
pub use coupons::{Coupon, CouponRegistry};
pub use eval::{CutPoint, Evaluator, DEFAULT_WIDTH_CAP};
pub use surgery::{linking_signature, parse_surgery, surgery_invariant, SurgeryPresentation};
