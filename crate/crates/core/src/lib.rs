//! Discretized Abelian gauge theory on product spacetime cubical complexes.
//!
//! Spacetimes are a time interval times a spatial cubical complex. Everything
//! is exact rational arithmetic: cohomology with causal supports, retarded and
//! advanced Green operators, presymplectic observable spaces for Maxwell
//! k-forms and U(1) Yang–Mills, and the locality audits built on them.

pub mod cochain;
pub mod cohomology;
pub mod complex;
pub mod embedding;
pub mod error;
pub mod maxwell;
pub mod presets;
pub mod propagator;
pub mod support;
pub mod toolkit;
pub mod yangmills;

pub use cochain::{metric_pairing, wedge_pairing, Cochain};
pub use cohomology::{
    cohomology, duality_pairing_matrix, induced_map, integer_h1, pairing_matrix, CohomologySpace, DualPair, InducedMap,
    IntegerCohomologyLattice,
};
pub use complex::{
    build_complex, build_spatial, AxisKind, AxisSpec, Cell, ComponentSpec, CubicalComplex, SpacetimeSpec,
};
pub use embedding::{ComponentMap, Embedding};
pub use error::{Error, Result};
pub use gaugeloc_linalg as linalg;
pub use support::{allowed, allowed_indices, coboundary_matrix, codifferential_matrix, Flag, Flavor, SupportSystem};
