//! Cochains and the two pairings.

use gaugeloc_linalg::{Rat, SparseVec};

use crate::complex::{Cell, CubicalComplex};
use crate::error::{Error, Result};
use crate::support::{allowed, Flavor, SupportSystem};

/// A degree-`k` cochain: one rational per `k`-cell of its complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    complex_id: u64,
    degree: usize,
    values: SparseVec,
}

impl Cochain {
    pub fn new(c: &CubicalComplex, degree: usize, values: SparseVec) -> Result<Cochain> {
        if degree > c.m() {
            return Err(Error::DegreeMismatch(format!("degree {degree} exceeds dimension {}", c.m())));
        }
        if values.dim() != c.dim(degree) {
            return Err(Error::DegreeMismatch(format!(
                "{} values for {} cells of degree {degree}",
                values.dim(),
                c.dim(degree)
            )));
        }
        Ok(Cochain { complex_id: c.id(), degree, values })
    }

    pub(crate) fn new_unchecked(complex_id: u64, degree: usize, values: SparseVec) -> Cochain {
        Cochain { complex_id, degree, values }
    }

    pub fn zero(c: &CubicalComplex, degree: usize) -> Cochain {
        Cochain { complex_id: c.id(), degree, values: SparseVec::zeros(c.dim(degree)) }
    }

    pub fn indicator(c: &CubicalComplex, degree: usize, index: usize) -> Cochain {
        Cochain { complex_id: c.id(), degree, values: SparseVec::unit(c.dim(degree), index) }
    }

    /// Builds a cochain from explicit cells; every cell must exist and have the right degree.
    pub fn from_cells(c: &CubicalComplex, degree: usize, cells: &[(Cell, Rat)]) -> Result<Cochain> {
        let mut pairs = Vec::with_capacity(cells.len());
        for (cell, v) in cells {
            if cell.degree() != degree {
                return Err(Error::DegreeMismatch(format!("cell {} is not of degree {degree}", c.show(cell))));
            }
            let i = c.index_of(cell).ok_or_else(|| Error::Invalid(format!("cell {} not in complex", c.show(cell))))?;
            pairs.push((i, v.clone()));
        }
        Ok(Cochain { complex_id: c.id(), degree, values: SparseVec::from_pairs(c.dim(degree), pairs) })
    }

    pub fn complex_id(&self) -> u64 {
        self.complex_id
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &SparseVec {
        &self.values
    }

    pub fn into_values(self) -> SparseVec {
        self.values
    }

    pub fn get(&self, i: usize) -> Rat {
        self.values.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    fn check(&self, c: &CubicalComplex) -> Result<()> {
        if self.complex_id != c.id() {
            return Err(Error::ComplexMismatch);
        }
        Ok(())
    }

    fn same(&self, other: &Cochain) -> Result<()> {
        if self.complex_id != other.complex_id {
            return Err(Error::ComplexMismatch);
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!("degrees {} and {}", self.degree, other.degree)));
        }
        Ok(())
    }

    pub fn d(&self, c: &CubicalComplex) -> Result<Cochain> {
        self.check(c)?;
        if self.degree == c.m() {
            return Ok(Cochain { complex_id: self.complex_id, degree: self.degree + 1, values: SparseVec::zeros(0) });
        }
        Ok(Cochain {
            complex_id: self.complex_id,
            degree: self.degree + 1,
            values: c.d(self.degree).mul_vec(&self.values),
        })
    }

    pub fn delta(&self, c: &CubicalComplex) -> Result<Cochain> {
        self.check(c)?;
        if self.degree == 0 {
            return Err(Error::DegreeMismatch("codifferential of a 0-cochain".into()));
        }
        Ok(Cochain {
            complex_id: self.complex_id,
            degree: self.degree - 1,
            values: c.delta(self.degree).mul_vec(&self.values),
        })
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.same(other)?;
        Ok(Cochain { values: self.values.add(&other.values), ..self.clone() })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.same(other)?;
        Ok(Cochain { values: self.values.sub(&other.values), ..self.clone() })
    }

    pub fn scale(&self, x: &Rat) -> Cochain {
        Cochain { values: self.values.scale(x), ..self.clone() }
    }

    /// First cell outside the allowed set of `s`, if any.
    pub fn support_violation(&self, c: &CubicalComplex, s: SupportSystem, flavor: Flavor) -> Option<usize> {
        let ok = allowed(c, self.degree, s, flavor);
        self.values.iter().map(|(i, _)| i).find(|&i| !ok[i])
    }

    pub fn satisfies(&self, c: &CubicalComplex, s: SupportSystem, flavor: Flavor) -> bool {
        self.support_violation(c, s, flavor).is_none()
    }

    /// Errors with `SupportLeak` naming the first offending cell.
    pub fn require_support(&self, c: &CubicalComplex, s: SupportSystem, flavor: Flavor) -> Result<()> {
        self.check(c)?;
        match self.support_violation(c, s, flavor) {
            None => Ok(()),
            Some(i) => Err(Error::SupportLeak { cell: c.show_index(self.degree, i) }),
        }
    }
}

/// `(α, β) = Σ ε(σ) w(σ) α(σ) β(σ)`.
pub fn metric_pairing(c: &CubicalComplex, a: &Cochain, b: &Cochain) -> Result<Rat> {
    a.check(c)?;
    a.same(b)?;
    Ok(a.values.weighted_dot(&b.values, c.weights(a.degree)))
}

/// `∫ α ∧ β`, realized as the integrated cubical cup product.
pub fn wedge_pairing(c: &CubicalComplex, a: &Cochain, b: &Cochain) -> Result<Rat> {
    a.check(c)?;
    b.check(c)?;
    let m = c.m();
    let p = a.degree;
    if p + b.degree != m {
        return Err(Error::DegreeMismatch(format!("degrees {} + {} ≠ {m}", p, b.degree)));
    }
    let a_dense = a.values.to_dense();
    let b_dense = b.values.to_dense();
    let mut total = Rat::zero();
    for top in c.cells(m) {
        let ax = c.axes(top.comp as usize);
        for subset in 0u32..(1 << m) {
            if subset.count_ones() as usize != p {
                continue;
            }
            let mut sign_exp = 0;
            for x in 0..m {
                if subset & (1 << x) != 0 {
                    sign_exp += (0..x).filter(|y| subset & (1 << y) == 0).count();
                }
            }
            // α on the front face (B axes at their lower vertex), β on the back face (A axes at their upper vertex).
            let mut front = *top;
            let mut back = *top;
            for x in 0..m {
                if subset & (1 << x) != 0 {
                    back.edges &= !(1 << x);
                    back.pos[x] = ax[x].upper(top.pos[x] as usize) as u16;
                } else {
                    front.edges &= !(1 << x);
                }
            }
            let fa = &a_dense[c.index_of(&front).expect("face")];
            if fa.is_zero() {
                continue;
            }
            let fb = &b_dense[c.index_of(&back).expect("face")];
            if fb.is_zero() {
                continue;
            }
            let term = fa * fb;
            if sign_exp % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    Ok(total)
}
