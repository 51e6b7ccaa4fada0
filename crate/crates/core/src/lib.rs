//! Automorphism groups of complete toric varieties, computed from fans.
//!
//! The crate works purely at the combinatorial level: exact integer lattice
//! algebra ([`lattice`]), cones and fans ([`fan`]), Demazure roots
//! ([`roots`]), the root-subgroup comorphisms and their certificates
//! ([`symbolic`]), and fan isomorphisms, product decompositions and the
//! automorphism structure report ([`structure`]).

pub mod catalog;
pub mod error;
pub mod fan;
pub mod lattice;
pub mod roots;
pub mod structure;
pub mod symbolic;

pub use error::{Error, Result};
pub use fan::{product_fan, validate_fan, Cone, Fan, FanData, ValidationReport};
pub use lattice::{LatticeMatrix, LatticeVector};
pub use roots::{demazure_roots, DemazureRoot};
pub use structure::{aut_structure_report, decompose, fan_automorphisms, fan_isomorphism};
