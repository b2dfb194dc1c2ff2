//! p-typical Witt vectors.
//!
//! [`classical`] works coordinatewise through the universal polynomials over
//! any [`CommRing`](crate::ring::CommRing). [`lattice`] presents `W_{q+1}(Z/a)`
//! as a finitely generated abelian group in the basis `V^i(1)`, which is what
//! the Mackey-functor side of the library uses.

pub mod classical;
pub mod lattice;

pub use classical::{UniversalWittPolynomials, WittParams, WittRing, WittVector};
pub use lattice::WittGroup;
