//! Type-D structures, type-A modules and morphism complexes.

mod morphism;
mod type_a;
mod type_d;

pub use morphism::{DMorphism, MorComplex};
pub use type_a::{Flavor, Operation, TypeABuilder, TypeAModule, TypeAReport, TypeAViolation};
pub use type_d::{Arrow, TypeDBuilder, TypeDReport, TypeDStructure, TypeDViolation};
