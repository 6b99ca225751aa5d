//! Coefficient rings, free complexes and their homology.

mod chain_map;
mod complex;
pub mod f2;
mod homology;
mod poly;

pub use chain_map::{are_chain_homotopic, hom_complex, ChainMap};
pub use complex::{Chain, ComplexBuilder, Entry, FreeComplex, Generator, Ring, ValidationReport, Violation};
pub use homology::{Homology, HomologyClass, Summand};
pub use poly::{UPoly, UVMonomial};
