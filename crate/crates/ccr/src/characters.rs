//! Presymplectic groups of gauge-invariant characters of U(1) Yang–Mills.
//!
//! A class `x` of degree-1 observables is a character when its linear part pairs
//! integrally with `H¹(M, ℤ)`. Writing `P` for those pairings, the characters form
//! `P⁻¹(ℤ^r) = ℤ-lift of (im P ∩ ℤ^r) ⊕ ker P`, which is presented with integer
//! generators for the first summand and divisible ones for the second. The form is `υ`.

use std::sync::Arc;

use gaugeloc::embedding::Embedding;
use gaugeloc::maxwell::pushforward_matrix;
use gaugeloc::yangmills::CharacterObservableGroup;
use gaugeloc::cohomology::integral_points;
use gaugeloc::{metric_pairing, Cochain};
use gaugeloc_linalg::{kernel_vectors, RationalMatrix, Rat, SpanSolver, SparseVec, Subspace};

use crate::error::{CcrError, Result};
use crate::group::{Element, GeneratorKind, PresymplecticGroup};
use crate::morphism::PresymplecticMap;

#[derive(Clone, Debug)]
pub struct CharacterGroup {
    chars: CharacterObservableGroup,
    group: Arc<PresymplecticGroup>,
    /// `Obs` coordinates of each generator.
    basis: Vec<Vec<Rat>>,
    solver: SpanSolver,
}

pub fn character_group(chars: &CharacterObservableGroup) -> Result<CharacterGroup> {
    let obs = chars.maxwell();
    let c = obs.complex();
    let n = obs.dim();
    let gens = chars.lattice().integer_generators();
    let r = gens.len();
    let mut rows = vec![Vec::with_capacity(n); r];
    for rep in obs.representatives() {
        let w = Cochain::new(c, 1, rep.clone())?;
        for (row, g) in rows.iter_mut().zip(gens) {
            row.push(metric_pairing(c, &w, g)?);
        }
    }
    let p = RationalMatrix::from_rows(n, rows.iter().map(|row| SparseVec::from_dense(row)).collect());
    let cols = p.columns();
    let image = Subspace::from_vectors(r, cols.clone());
    let points = integral_points(image.basis())?;
    let span = SpanSolver::new(r, cols);
    let mut basis = Vec::new();
    let mut kinds = Vec::new();
    let mut labels = Vec::new();
    for (i, z) in points.iter().enumerate() {
        let x = span.solve(z).ok_or_else(|| CcrError::InvalidGroup("lattice point outside the image".into()))?;
        basis.push(x.to_dense());
        kinds.push(GeneratorKind::Integer);
        labels.push(format!("n{}", i + 1));
    }
    for (i, v) in kernel_vectors(&p).into_iter().enumerate() {
        basis.push(v.to_dense());
        kinds.push(GeneratorKind::Divisible);
        labels.push(format!("q{}", i + 1));
    }
    if p.rows() == 0 {
        // No integrality conditions: every class is a character.
        basis = (0..n).map(|i| SparseVec::unit(n, i).to_dense()).collect();
        kinds = vec![GeneratorKind::Divisible; n];
        labels = (1..=n).map(|i| format!("q{i}")).collect();
    }
    let b = RationalMatrix::from_columns(n, &basis.iter().map(|v| SparseVec::from_dense(v)).collect::<Vec<_>>());
    let form = b.transpose().mul(&obs.gram().mul(&b)).scale(&chars.h0().recip()).to_dense();
    let group = Arc::new(PresymplecticGroup::new(labels, kinds, form)?);
    let solver = SpanSolver::new(n, basis.iter().map(|b| SparseVec::from_dense(b)).collect());
    Ok(CharacterGroup { chars: chars.clone(), group, basis, solver })
}

impl CharacterGroup {
    pub fn characters(&self) -> &CharacterObservableGroup {
        &self.chars
    }

    pub fn group(&self) -> &Arc<PresymplecticGroup> {
        &self.group
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn to_obs(&self, h: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.chars.maxwell().dim()];
        for (x, b) in h.iter().zip(&self.basis) {
            if !x.is_zero() {
                for (o, y) in out.iter_mut().zip(b) {
                    *o += x * y;
                }
            }
        }
        out
    }

    /// Group coordinates of a character, or `InvalidElement` when `x` is not one.
    pub fn from_obs(&self, x: &[Rat]) -> Result<Element> {
        let coords = self
            .solver
            .solve(&SparseVec::from_dense(x))
            .ok_or_else(|| CcrError::InvalidElement("coordinates outside Obs".into()))?
            .to_dense();
        self.group.validate(&coords)?;
        Ok(coords)
    }
}

/// The pushforward of characters along `e`, in group coordinates.
pub fn character_map(e: &Embedding, src: &CharacterGroup, tgt: &CharacterGroup) -> Result<PresymplecticMap> {
    let m = pushforward_matrix(e, src.chars.maxwell(), tgt.chars.maxwell())?;
    let images = src
        .basis
        .iter()
        .map(|b| tgt.from_obs(&m.mul_vec(&SparseVec::from_dense(b)).to_dense()))
        .collect::<Result<Vec<_>>>()?;
    PresymplecticMap::new(src.group.clone(), tgt.group.clone(), images)
}
