//! Exact algebra for bordered and involutive knot Floer computations:
//! free complexes over `F2`, `F2[U]` and `F2[U,V]`, the torus algebra,
//! type-D structures and type-A modules, box tensor products, and the
//! numerical invariants built on top of them.

pub mod bordered;
pub mod catalog;
pub mod coeff;
pub mod error;
pub mod invariants;
pub mod json;
pub mod pairing;
pub mod registry;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
