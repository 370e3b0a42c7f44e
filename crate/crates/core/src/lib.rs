//! Minimal codewords and minimal linear codes over Galois rings GR(p^n, l).

pub mod bounds;
pub mod budget;
pub mod cli;
pub mod codes;
pub mod constructions;
pub mod error;
pub mod format;
pub mod linalg;
mod residue;
pub mod ring;

pub use budget::Budget;
pub use error::{Error, Result};
pub use ring::{Elem, GaloisRing, RingError};
