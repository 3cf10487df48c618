#![no_std]

extern crate alloc;

pub mod builders;
pub mod character;
pub mod cohomology;
pub mod error;
pub mod exterior;
pub mod hodge;
pub mod kuranishi;
pub mod linalg;
pub mod mirror;
pub mod model;
pub mod poisson;
pub mod poly;
pub mod registry;
pub mod scalar;
pub mod sparse;

pub use builders::{ManifoldSpec, ModelKind};
pub use character::{Character, OracleMode, Rule, TrivialityOracle};
pub use error::Error;
pub use exterior::{Element, Kind, Term, Universe, UniverseBuilder, Word};
pub use model::FiniteDGA;
pub use scalar::Scalar;
