//! Exact computer algebra for p-typical Witt vectors, Mackey, Green and
//! Tambara functors over cyclic groups, equivariant Witt vectors, and a
//! verifier for the (equivariant) Witt complex axioms.
//!
//! Everything is computed over the integers with arbitrary precision. The
//! crate is `no_std` and only needs `alloc`; IO, file formats and the
//! command-line front end live in the `wittlab` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod abelian;
pub mod arith;
pub mod complex;
pub mod eqwitt;
mod error;
pub mod green;
pub mod mackey;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod snf;
pub mod witt;

pub use num_bigint::BigInt;

pub use abelian::{AbHom, FgAbGroup};
pub use eqwitt::EquivariantWitt;
pub use error::{Error, Result};
pub use green::{Bilinear, GreenFunctor, NormClass, TambaraFunctor};
pub use mackey::{MackeyFunctor, MackeyMap};
pub use matrix::IntMatrix;
