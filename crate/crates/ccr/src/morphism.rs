//! Pairing-preserving homomorphisms and the induced maps `Δ(L)W_h = W_{Lh}`.

use std::collections::BTreeSet;
use std::sync::Arc;

use gaugeloc_linalg::Rat;

use crate::error::{CcrError, Result};
use crate::group::{Element, GeneratorKind, PresymplecticGroup};
use crate::weyl::{same_group, WeylElement};

#[derive(Clone, Debug)]
pub struct PresymplecticMap {
    source: Arc<PresymplecticGroup>,
    target: Arc<PresymplecticGroup>,
    /// Images of the source generators, in target coordinates.
    images: Vec<Element>,
}

impl PresymplecticMap {
    pub fn new(source: Arc<PresymplecticGroup>, target: Arc<PresymplecticGroup>, images: Vec<Element>) -> Result<PresymplecticMap> {
        if images.len() != source.rank() {
            return Err(CcrError::InvalidElement(format!("{} generators need {} images", source.rank(), images.len())));
        }
        for (i, im) in images.iter().enumerate() {
            target.validate(im)?;
            if source.kinds()[i] == GeneratorKind::Divisible {
                let bad = im.iter().zip(target.kinds()).any(|(x, k)| *k == GeneratorKind::Integer && !x.is_zero());
                if bad {
                    return Err(CcrError::InvalidElement(format!(
                        "divisible generator {} cannot map onto integer generators",
                        source.labels()[i]
                    )));
                }
            }
        }
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                let expected = &source.form()[i][j];
                let found = target.pairing(&images[i], &images[j]);
                if *expected != found {
                    return Err(CcrError::NotPresymplectic { i, j, expected: expected.to_string(), found: found.to_string() });
                }
            }
        }
        Ok(PresymplecticMap { source, target, images })
    }

    pub fn identity(g: Arc<PresymplecticGroup>) -> PresymplecticMap {
        let images = (0..g.rank()).map(|i| g.generator(i)).collect();
        PresymplecticMap { source: g.clone(), target: g, images }
    }

    pub fn source(&self) -> &Arc<PresymplecticGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PresymplecticGroup> {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply_element(&self, h: &[Rat]) -> Element {
        let mut out = self.target.zero();
        for (x, im) in h.iter().zip(&self.images) {
            if x.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(im) {
                *o += x * y;
            }
        }
        out
    }

    /// `Δ(L)`: linear, `W_h ↦ W_{Lh}`.
    pub fn apply(&self, a: &WeylElement) -> Result<WeylElement> {
        if !same_group(a.group(), &self.source) {
            return Err(CcrError::GroupMismatch);
        }
        WeylElement::from_terms(&self.target, a.terms().iter().map(|(h, c)| (self.apply_element(h), c.clone())))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &PresymplecticMap) -> Result<PresymplecticMap> {
        if !same_group(first.target(), &self.source) {
            return Err(CcrError::GroupMismatch);
        }
        let images = first.images.iter().map(|h| self.apply_element(h)).collect();
        Ok(PresymplecticMap { source: first.source.clone(), target: self.target.clone(), images })
    }

    /// Whether the labels of `a` stay distinct under `L`, so that `Δ(L)` cannot merge
    /// or cancel its terms.
    pub fn separates_terms(&self, a: &WeylElement) -> bool {
        let images: BTreeSet<Element> = a.terms().keys().map(|h| self.apply_element(h)).collect();
        images.len() == a.len()
    }
}

/// `1 − W_h`, which `Δ(L)` annihilates exactly when `Lh = 0`.
pub fn locality_witness(g: &Arc<PresymplecticGroup>, h: &[Rat]) -> Result<WeylElement> {
    WeylElement::unit(g).sub(&WeylElement::weyl(g, h)?)
}
