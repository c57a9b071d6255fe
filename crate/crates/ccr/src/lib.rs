//! Weyl (CCR) algebras over presymplectic Abelian groups.
//!
//! Coefficients are exact elements of cyclotomic fields; every pairing is a rational
//! multiple of `π` and is stored by that coefficient.

pub mod center;
pub mod characters;
pub mod cyclo;
pub mod error;
pub mod group;
pub mod morphism;
pub mod weyl;

pub use center::{center_test, CenterDecision};
pub use characters::{character_group, character_map, CharacterGroup};
pub use cyclo::Cyclo;
pub use error::{CcrError, Result};
pub use group::{Element, GeneratorKind, PresymplecticGroup};
pub use morphism::{locality_witness, PresymplecticMap};
pub use weyl::{reference_state, weyl_phase, AbsSum, WeylElement};
