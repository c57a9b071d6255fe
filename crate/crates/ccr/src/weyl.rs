//! Finite combinations of Weyl symbols `W_h` with exact coefficients.
//!
//! `W_h W_k = exp(−(i/2)ρ(h, k)) W_{h+k}` and `W_h* = W_{−h}`. Only finite sums are
//! represented; the Banach completion is not modelled. For symplectic (nondegenerate)
//! forms the C*-norm on the completion is unique, and `‖·‖₁` bounds it from above.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use gaugeloc_linalg::Rat;

use crate::cyclo::Cyclo;
use crate::error::{CcrError, Result};
use crate::group::{add, neg, Element, PresymplecticGroup};

/// `exp(−(i/2)ρ(h, k))`.
pub fn weyl_phase(g: &PresymplecticGroup, h: &[Rat], k: &[Rat]) -> Cyclo {
    Cyclo::exp_i_pi(&(-&g.pairing(h, k) / &Rat::int(2)))
}

pub(crate) fn same_group(a: &Arc<PresymplecticGroup>, b: &Arc<PresymplecticGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    group: Arc<PresymplecticGroup>,
    terms: BTreeMap<Element, Cyclo>,
}

impl WeylElement {
    pub fn zero(g: &Arc<PresymplecticGroup>) -> WeylElement {
        WeylElement { group: g.clone(), terms: BTreeMap::new() }
    }

    /// `W_0 = 1`.
    pub fn unit(g: &Arc<PresymplecticGroup>) -> WeylElement {
        WeylElement::weyl(g, &g.zero()).expect("zero is an element")
    }

    pub fn weyl(g: &Arc<PresymplecticGroup>, h: &[Rat]) -> Result<WeylElement> {
        WeylElement::from_terms(g, [(h.to_vec(), Cyclo::one())])
    }

    pub fn from_terms(g: &Arc<PresymplecticGroup>, terms: impl IntoIterator<Item = (Element, Cyclo)>) -> Result<WeylElement> {
        let mut out = WeylElement::zero(g);
        for (h, c) in terms {
            g.validate(&h)?;
            out.accumulate(h, c);
        }
        Ok(out)
    }

    fn accumulate(&mut self, h: Element, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&h) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(h, s);
                }
            }
            None => {
                self.terms.insert(h, c);
            }
        }
    }

    pub fn group(&self) -> &Arc<PresymplecticGroup> {
        &self.group
    }

    pub fn terms(&self) -> &BTreeMap<Element, Cyclo> {
        &self.terms
    }

    pub fn coefficient(&self, h: &[Rat]) -> Cyclo {
        self.terms.get(h).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    fn check(&self, other: &WeylElement) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(CcrError::GroupMismatch)
        }
    }

    pub fn add(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (h, c) in &other.terms {
            out.accumulate(h.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &WeylElement) -> Result<WeylElement> {
        self.add(&other.scale(&Cyclo::from_rat(Rat::int(-1))))
    }

    pub fn scale(&self, c: &Cyclo) -> WeylElement {
        let mut out = WeylElement::zero(&self.group);
        for (h, a) in &self.terms {
            out.accumulate(h.clone(), a * c);
        }
        out
    }

    /// Bilinear extension of the Weyl relations.
    pub fn product(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check(other)?;
        let mut out = WeylElement::zero(&self.group);
        for (h, a) in &self.terms {
            for (k, b) in &other.terms {
                let phase = weyl_phase(&self.group, h, k);
                out.accumulate(add(h, k), &(a * b) * &phase);
            }
        }
        Ok(out)
    }

    /// `(Σ c_h W_h)* = Σ c̄_h W_{−h}`.
    pub fn star(&self) -> WeylElement {
        let mut out = WeylElement::zero(&self.group);
        for (h, c) in &self.terms {
            out.accumulate(neg(h), c.conj());
        }
        out
    }

    pub fn commutator(&self, other: &WeylElement) -> Result<WeylElement> {
        self.product(other)?.sub(&other.product(self)?)
    }

    /// `‖Σ c_h W_h‖₁ = Σ |c_h|`.
    pub fn l1_norm(&self) -> AbsSum {
        let mut out = AbsSum::zero();
        for c in self.terms.values() {
            out.push_sq(c.norm_sq());
        }
        out
    }
}

/// `ω̃(Σ c_h W_h) = c_0`.
pub fn reference_state(a: &WeylElement) -> Cyclo {
    a.coefficient(&a.group.zero())
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(h, c)| {
                let h: Vec<String> = h.iter().map(Rat::to_string).collect();
                format!("({c})·W[{}]", h.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({self})")
    }
}

/// A nonnegative real `r + Σ √s_i` with rational `r` and real cyclotomic `s_i > 0`
/// whose square roots are not rational.
#[derive(Clone, Debug)]
pub struct AbsSum {
    rational: Rat,
    roots: Vec<Cyclo>,
}

impl AbsSum {
    pub fn zero() -> AbsSum {
        AbsSum { rational: Rat::zero(), roots: Vec::new() }
    }

    pub fn from_rat(r: Rat) -> AbsSum {
        assert!(r.signum() >= 0, "negative absolute value");
        AbsSum { rational: r, roots: Vec::new() }
    }

    /// Adds `√s` for a real `s ≥ 0`.
    pub fn push_sq(&mut self, s: Cyclo) {
        if s.is_zero() {
            return;
        }
        match sqrt_rational(&s) {
            Some(r) => self.rational += r,
            None => self.roots.push(s),
        }
    }

    /// `|z|`.
    pub fn modulus(z: &Cyclo) -> AbsSum {
        let mut out = AbsSum::zero();
        out.push_sq(z.norm_sq());
        out
    }

    /// The value when it is rational by construction.
    pub fn exact(&self) -> Option<Rat> {
        self.roots.is_empty().then(|| self.rational.clone())
    }

    pub fn approx(&self) -> f64 {
        self.rational.approx() + self.roots.iter().map(|s| s.approx().0.max(0.0).sqrt()).sum::<f64>()
    }

    pub fn mul(&self, other: &AbsSum) -> AbsSum {
        let mut out = AbsSum::from_rat(&self.rational * &other.rational);
        let r2 = Cyclo::from_rat(&self.rational * &self.rational);
        let q2 = Cyclo::from_rat(&other.rational * &other.rational);
        for t in &other.roots {
            out.push_sq(&r2 * t);
        }
        for s in &self.roots {
            out.push_sq(&q2 * s);
            for t in &other.roots {
                out.push_sq(s * t);
            }
        }
        out
    }

    /// Equal as formal sums: same rational part and the same multiset of radicands.
    pub fn same_terms(&self, other: &AbsSum) -> bool {
        if self.rational != other.rational || self.roots.len() != other.roots.len() {
            return false;
        }
        let mut used = vec![false; other.roots.len()];
        self.roots.iter().all(|s| match (0..other.roots.len()).find(|&j| !used[j] && other.roots[j] == *s) {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        })
    }

    /// The comparison when it can be decided exactly: both sides rational, or equal as
    /// formal sums.
    pub fn compare_exactly(&self, other: &AbsSum) -> Option<Ordering> {
        if let (Some(a), Some(b)) = (self.exact(), other.exact()) {
            return Some(a.cmp(&b));
        }
        self.same_terms(other).then_some(Ordering::Equal)
    }

    /// Exact where `compare_exactly` decides; otherwise read from floating-point values,
    /// with differences within a relative `1e-9` counted as equal.
    pub fn compare(&self, other: &AbsSum) -> Ordering {
        if let Some(o) = self.compare_exactly(other) {
            return o;
        }
        let (a, b) = (self.approx(), other.approx());
        if (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0) {
            Ordering::Equal
        } else {
            a.partial_cmp(&b).expect("finite")
        }
    }

    pub fn le(&self, other: &AbsSum) -> bool {
        self.compare(other) != Ordering::Greater
    }
}

impl fmt::Display for AbsSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "{:.12}", self.approx()),
        }
    }
}

fn sqrt_rational(s: &Cyclo) -> Option<Rat> {
    let q = s.as_rational()?;
    let (p, d) = (q.numer(), q.denom());
    let (sp, sd) = (p.sqrt(), d.sqrt());
    (&sp * &sp == p && &sd * &sd == d).then(|| Rat::from_bigints(sp, sd))
}
