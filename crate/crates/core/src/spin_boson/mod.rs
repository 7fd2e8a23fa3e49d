//! Qubit coupled to bosonic environments.

pub mod gad;
pub mod jcm;
pub mod nmad;
