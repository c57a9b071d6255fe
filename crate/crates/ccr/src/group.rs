//! Presymplectic Abelian groups given by generators and an antisymmetric form.

use gaugeloc_linalg::Rat;

use crate::error::{CcrError, Result};

/// Coordinates over the generators of a group.
pub type Element = Vec<Rat>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Coordinates along the generator are integers.
    Integer,
    /// Coordinates along the generator are arbitrary rationals.
    Divisible,
}

/// `ℤ^a ⊕ ℚ^b` with a rational antisymmetric form `ρ/π` on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresymplecticGroup {
    labels: Vec<String>,
    kinds: Vec<GeneratorKind>,
    form: Vec<Vec<Rat>>,
}

impl PresymplecticGroup {
    pub fn new(labels: Vec<String>, kinds: Vec<GeneratorKind>, form: Vec<Vec<Rat>>) -> Result<PresymplecticGroup> {
        let n = labels.len();
        if kinds.len() != n || form.len() != n || form.iter().any(|r| r.len() != n) {
            return Err(CcrError::InvalidGroup(format!("{n} labels need {n} kinds and an {n}×{n} form")));
        }
        for i in 0..n {
            for j in 0..=i {
                if form[i][j] != -&form[j][i] {
                    return Err(CcrError::InvalidGroup(format!("form is not antisymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(PresymplecticGroup { labels, kinds, form })
    }

    /// Free Abelian group on the labels.
    pub fn free(labels: Vec<String>, form: Vec<Vec<Rat>>) -> Result<PresymplecticGroup> {
        let kinds = vec![GeneratorKind::Integer; labels.len()];
        PresymplecticGroup::new(labels, kinds, form)
    }

    /// Rational vector space on the labels.
    pub fn divisible(labels: Vec<String>, form: Vec<Vec<Rat>>) -> Result<PresymplecticGroup> {
        let kinds = vec![GeneratorKind::Divisible; labels.len()];
        PresymplecticGroup::new(labels, kinds, form)
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn kinds(&self) -> &[GeneratorKind] {
        &self.kinds
    }

    /// `ρ(e_i, e_j)/π`.
    pub fn form(&self) -> &[Vec<Rat>] {
        &self.form
    }

    pub fn zero(&self) -> Element {
        vec![Rat::zero(); self.rank()]
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = Rat::one();
        e
    }

    pub fn validate(&self, h: &[Rat]) -> Result<()> {
        if h.len() != self.rank() {
            return Err(CcrError::InvalidElement(format!("expected {} coordinates, found {}", self.rank(), h.len())));
        }
        for (i, (x, k)) in h.iter().zip(&self.kinds).enumerate() {
            if *k == GeneratorKind::Integer && !x.is_integer() {
                return Err(CcrError::InvalidElement(format!("coordinate {x} along {} must be an integer", self.labels[i])));
            }
        }
        Ok(())
    }

    /// `ρ(h, k)/π`.
    pub fn pairing(&self, h: &[Rat], k: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, hi) in h.iter().enumerate() {
            if hi.is_zero() {
                continue;
            }
            for (j, kj) in k.iter().enumerate() {
                if !kj.is_zero() && !self.form[i][j].is_zero() {
                    acc += &(hi * kj) * &self.form[i][j];
                }
            }
        }
        acc
    }
}

pub(crate) fn add(h: &[Rat], k: &[Rat]) -> Element {
    h.iter().zip(k).map(|(a, b)| a + b).collect()
}

pub(crate) fn neg(h: &[Rat]) -> Element {
    h.iter().map(|a| -a).collect()
}
