//! Trace fields of hyperbolic triangle groups, their principal congruence
//! quotients modulo prime ideals, and the congruence dessins d'enfants those
//! quotients define.

pub mod cli;
pub mod dessin;
pub mod error;
pub mod galois;
pub mod oarith;
pub mod poly;
pub mod qfield;
pub mod selftest;
pub mod tri;

pub use error::{Error, Result};
