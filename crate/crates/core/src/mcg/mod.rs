//! Coend operators of the module category and the two projective mapping
//! class group representations they generate, with the copairing that
//! intertwines them.

mod coend;
mod order;
mod relations;
mod reps;

pub use crate::cyclo::{proportional, Proportionality};
pub use coend::{coend_operators, copairing_from, double_braiding, from_dinatural_at_h, radford_copairing, CoendOps, Slot};
pub use order::{infinite_order_witness, OrderReport};
pub use relations::{coend_sl2z_checks, dinaturality_checks, intertwining_checks, proportional_scalar, radford_checks, rep_relations, sl2z_relations, Check};
pub use reps::{generators, intertwiner_phi, lyu_rep, rhox_rep, Generator, McgRep, McgSetup, Side};
