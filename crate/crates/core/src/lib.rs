//! Rigid triples in real cyclotomic rings, their attached hyperelliptic
//! families, and point-count checks of mod-ℓ congruences between them.

pub mod arith;
pub mod counting;
pub mod curves;
pub mod cyclo;
pub mod error;
pub mod fp_poly;
pub mod gf;
pub mod report;
pub mod triples;
pub mod zpoly;

pub use cyclo::{RingElement, RingSpec};
pub use error::{Error, Result};
