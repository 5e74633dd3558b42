//! Zeta functions of curves over finite fields and their Diophantine
//! stability: conversions between point counts, place counts and Weil
//! polynomials, a pruned search for real Weil polynomials, brute-force point
//! counting, and the Carlitz and Drinfeld torsion constructions.

pub mod arith;
pub mod carlitz;
pub mod curvelab;
pub mod drinfeld;
pub mod enumerator;
pub mod error;
pub mod gfpoly;
pub mod zetacore;

pub use error::{Error, Result};
