//! Homomorphic quantum error correction: Pauli-mask encryption over stabilizer codes,
//! compatibility checks, and exact simulation of the encrypt, evaluate, decrypt protocols.

pub mod bits;
pub mod codes;
pub mod compat;
pub mod error;
pub mod f2;
pub mod pauli;
pub mod protocol;
pub mod sim;

pub use error::{Error, Result};
