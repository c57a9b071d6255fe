//! Standard complexes and embeddings used by the audits.

use std::sync::Arc;

use crate::complex::{build_complex, AxisSpec, ComponentSpec, CubicalComplex, SpacetimeSpec};
use crate::embedding::{ComponentMap, Embedding};
use crate::error::Result;

/// Observables are supported this many vertex steps away from the spatial boundary.
pub const SPATIAL_MARGIN: usize = 3;

fn st(nt: usize, comps: Vec<ComponentSpec>) -> SpacetimeSpec {
    SpacetimeSpec::new(AxisSpec::interval(nt), comps)
}

fn grid(n: usize) -> ComponentSpec {
    ComponentSpec::new(vec![AxisSpec::interval(n), AxisSpec::interval(n)])
}

pub fn cyl2_spec() -> SpacetimeSpec {
    st(6, vec![ComponentSpec::new(vec![AxisSpec::circle(8)])])
}

pub fn plane3_spec() -> SpacetimeSpec {
    st(3, vec![grid(16)])
}

pub fn ann3_spec() -> SpacetimeSpec {
    st(3, vec![grid(16).delete_block(&[7, 7], &[9, 9])])
}

/// The annulus with a wider hole, a subregion of ANN3.
pub fn ann3_small_spec() -> SpacetimeSpec {
    st(3, vec![grid(16).delete_block(&[6, 6], &[10, 10])])
}

pub fn tor3_spec() -> SpacetimeSpec {
    st(3, vec![ComponentSpec::new(vec![AxisSpec::circle(8), AxisSpec::circle(8)])])
}

pub fn twocyl_spec() -> SpacetimeSpec {
    let c = ComponentSpec::new(vec![AxisSpec::circle(12)]);
    st(3, vec![c.clone(), c])
}

pub fn twostrip_spec() -> SpacetimeSpec {
    let c = ComponentSpec::new(vec![AxisSpec::interval(8)]);
    st(3, vec![c.clone(), c])
}

pub fn mink2_spec() -> SpacetimeSpec {
    st(3, vec![ComponentSpec::new(vec![AxisSpec::interval(24)])])
}

/// Named complexes, in catalog order.
pub const COMPLEXES: [&str; 8] = ["CYL2", "PLANE3", "ANN3", "ANN3S", "TOR3", "TWOCYL", "TWOSTRIP", "MINK2"];

pub fn spec(name: &str) -> Option<SpacetimeSpec> {
    Some(match name {
        "CYL2" => cyl2_spec(),
        "PLANE3" => plane3_spec(),
        "ANN3" => ann3_spec(),
        "ANN3S" => ann3_small_spec(),
        "TOR3" => tor3_spec(),
        "TWOCYL" => twocyl_spec(),
        "TWOSTRIP" => twostrip_spec(),
        "MINK2" => mink2_spec(),
        _ => return None,
    })
}

pub fn complex(name: &str) -> Option<Arc<CubicalComplex>> {
    spec(name).map(|s| Arc::new(build_complex(&s).expect("preset specs are valid")))
}

/// The two strips placed far apart on the line.
pub fn strips_into_line(strips: Arc<CubicalComplex>, line: Arc<CubicalComplex>) -> Result<Embedding> {
    Embedding::new(strips, line, 0, &[ComponentMap::new(0, vec![2]), ComponentMap::new(0, vec![14])], 1)
}

/// Each strip wrapped into its own circle.
pub fn strips_into_circles(strips: Arc<CubicalComplex>, circles: Arc<CubicalComplex>) -> Result<Embedding> {
    Embedding::new(strips, circles, 0, &[ComponentMap::new(0, vec![0]), ComponentMap::new(1, vec![0])], 1)
}

/// Annulus into the full plane (same coordinates).
pub fn annulus_into_plane(ann: Arc<CubicalComplex>, plane: Arc<CubicalComplex>) -> Result<Embedding> {
    Embedding::new(ann, plane, 0, &[ComponentMap::new(0, vec![0, 0])], 1)
}

/// `T(nt) × Σ` into `T(nt_big) × Σ` at a time offset.
pub fn sub_window(small: Arc<CubicalComplex>, big: Arc<CubicalComplex>, time_offset: usize) -> Result<Embedding> {
    let comps: Vec<ComponentMap> =
        (0..small.components().len()).map(|ci| ComponentMap::new(ci, vec![0; small.spatial_dim()])).collect();
    Embedding::new(small, big, time_offset, &comps, 1)
}

/// CYL2 restricted to four time cells, one cell in from each end.
pub fn cyl2_window_spec() -> SpacetimeSpec {
    let mut s = cyl2_spec();
    s.time = AxisSpec::interval(4);
    s
}
