//! Qubit coupled to spin environments.

pub mod central_spin;
pub mod collision;
