//! Exact evaluation and verification of bosonic six-vertex lattice models of
//! Cartan types A and B/C.

pub mod arith;
pub mod braket;
pub mod classify;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod relations;
pub mod special;

pub use error::{Error, Result};
