//! Single-qubit open-system dynamics under five environment models, tracking
//! non-classical volume, von Neumann entropy, entropy production and
//! ergotropy along each trajectory.

// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod numerics;
pub mod quantifiers;
pub mod runner;
pub mod spin_boson;
pub mod spin_spin;
pub mod states;

pub use error::{Error, Result};
