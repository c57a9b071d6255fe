//! Central Weyl symbols.
//!
//! `W_h W_k = exp(−iρ(h, k)) W_k W_h`, so `W_h` is central iff `ρ(h, k) ∈ 2πℤ` for every
//! group element `k`. Integer generators must pair into `2πℤ`; divisible generators must
//! pair to zero, since their rational multiples are group elements too.

use std::sync::Arc;

use gaugeloc_linalg::Rat;

use crate::error::Result;
use crate::group::{Element, GeneratorKind, PresymplecticGroup};
use crate::weyl::WeylElement;

#[derive(Clone, Debug)]
pub enum CenterDecision {
    Central,
    NotCentral {
        /// Index of the generator that exposes the failure.
        generator: usize,
        /// A group element `k` with `ρ(h, k) ∉ 2πℤ`.
        partner: Element,
        /// `ρ(h, k)/π`.
        pairing: Rat,
        /// `W_h W_k − W_k W_h`, computed directly.
        commutator: WeylElement,
    },
}

impl CenterDecision {
    pub fn is_central(&self) -> bool {
        matches!(self, CenterDecision::Central)
    }
}

pub fn center_test(g: &Arc<PresymplecticGroup>, h: &[Rat]) -> Result<CenterDecision> {
    g.validate(h)?;
    let two = Rat::int(2);
    for i in 0..g.rank() {
        let e = g.generator(i);
        let p = g.pairing(h, &e);
        let partner = match g.kinds()[i] {
            GeneratorKind::Integer if !(&p / &two).is_integer() => e,
            GeneratorKind::Divisible if !p.is_zero() => {
                if (&p / &two).is_integer() {
                    e.iter().map(|x| x / &p).collect()
                } else {
                    e
                }
            }
            _ => continue,
        };
        let pairing = g.pairing(h, &partner);
        let wh = WeylElement::weyl(g, h)?;
        let wk = WeylElement::weyl(g, &partner)?;
        let commutator = wh.commutator(&wk)?;
        return Ok(CenterDecision::NotCentral { generator: i, partner, pairing, commutator });
    }
    Ok(CenterDecision::Central)
}
