//! Time integration and extension, the section/projection pair, and the two
//! cochain homotopies relating them to the identity.

use std::collections::BTreeMap;

use gaugeloc_linalg::{Rat, RationalMatrix, SparseVec};

use crate::cochain::Cochain;
use crate::cohomology::cohomology;
use crate::complex::{Cell, CubicalComplex};
use crate::error::{Error, Result};
use crate::support::{Flag, Flavor, SupportSystem};

/// Time profile `a` on time edges; the mass of edge `t` is `a(t)·Δt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeProfile {
    density: Vec<Rat>,
    mass: Vec<Rat>,
}

impl TimeProfile {
    /// Validates that the profile sits on interior time edges and has total mass one.
    pub fn new(c: &CubicalComplex, density: Vec<Rat>) -> Result<TimeProfile> {
        let t = c.time_axis().ok_or_else(|| Error::BadProfile("complex has no time axis".into()))?;
        let n = t.n_cells();
        if density.len() != n {
            return Err(Error::BadProfile(format!("{} profile values for {n} time edges", density.len())));
        }
        if !density[0].is_zero() || !density[n - 1].is_zero() {
            return Err(Error::BadProfile("profile touches the time boundary".into()));
        }
        let mass: Vec<Rat> = density.iter().map(|a| a * &t.spacing).collect();
        let total: Rat = mass.iter().sum();
        if !total.is_one() {
            return Err(Error::BadProfile(format!("profile mass is {total}, expected 1")));
        }
        Ok(TimeProfile { density, mass })
    }

    /// Unit mass on the central time edge.
    pub fn central(c: &CubicalComplex) -> Result<TimeProfile> {
        let t = c.time_axis().ok_or_else(|| Error::BadProfile("complex has no time axis".into()))?;
        let n = t.n_cells();
        if n < 3 {
            return Err(Error::BadProfile(format!("{n} time edges leave no interior edge")));
        }
        let mut density = vec![Rat::zero(); n];
        density[(n - 1) / 2] = t.spacing.recip();
        TimeProfile::new(c, density)
    }

    pub fn density(&self) -> &[Rat] {
        &self.density
    }

    pub fn mass(&self, t: usize) -> &Rat {
        &self.mass[t]
    }
}

fn time_axis(c: &CubicalComplex) -> Result<(usize, usize)> {
    match c.time_index() {
        Some(ta) => Ok((ta, c.nt())),
        None => Err(Error::Invalid("complex has no time axis".into())),
    }
}

fn lift(spatial: &Cell, ta: usize, t: usize, edge: bool) -> Cell {
    let mut c = *spatial;
    c.pos[ta] = t as u16;
    if edge {
        c.edges |= 1 << ta;
    }
    c
}

/// Groups the time-edge components of `w` by spatial cell: `σ ↦ [(t, ω(σ×e_t))]`.
fn time_edge_parts(c: &CubicalComplex, w: &Cochain, ta: usize) -> BTreeMap<Cell, Vec<(usize, Rat)>> {
    let mut out: BTreeMap<Cell, Vec<(usize, Rat)>> = BTreeMap::new();
    for (i, x) in w.values().iter() {
        let cell = c.cell(w.degree(), i);
        if cell.is_edge(ta) {
            out.entry(c.spatial_part(cell)).or_default().push((cell.pos[ta] as usize, x.clone()));
        }
    }
    out
}

fn check_on(c: &CubicalComplex, w: &Cochain) -> Result<()> {
    if w.complex_id() != c.id() {
        return Err(Error::ComplexMismatch);
    }
    Ok(())
}

/// `i(ω)(σ) = Σ_t ω(σ×e_t)`, a cochain of degree `k−1` on the spatial factor.
pub fn time_integration(c: &CubicalComplex, sigma: &CubicalComplex, w: &Cochain) -> Result<Cochain> {
    check_on(c, w)?;
    let (ta, _) = time_axis(c)?;
    let k = w.degree();
    if k == 0 {
        return Err(Error::DegreeMismatch("time integration of a 0-cochain".into()));
    }
    let pairs = time_edge_parts(c, w, ta).into_iter().map(|(s, parts)| {
        let total: Rat = parts.iter().map(|(_, x)| x).sum();
        (sigma.index_of(&s).expect("spatial part exists"), total)
    });
    Cochain::new(sigma, k - 1, SparseVec::from_pairs(sigma.dim(k - 1), pairs))
}

/// `e(φ)(σ×e_t) = a(t)·Δt·φ(σ)`, zero on cells without a time edge.
pub fn time_extension(c: &CubicalComplex, sigma: &CubicalComplex, phi: &Cochain, p: &TimeProfile) -> Result<Cochain> {
    check_on(sigma, phi)?;
    let (ta, n) = time_axis(c)?;
    let k = phi.degree() + 1;
    let mut pairs = Vec::new();
    for (j, x) in phi.values().iter() {
        let s = sigma.cell(k - 1, j);
        for t in 0..n {
            let a = p.mass(t);
            if !a.is_zero() {
                pairs.push((c.index_of(&lift(s, ta, t, true)).expect("product cell"), a * x));
            }
        }
    }
    Cochain::new(c, k, SparseVec::from_pairs(c.dim(k), pairs))
}

fn sign(k: usize) -> Rat {
    if k.is_multiple_of(2) {
        Rat::one()
    } else {
        Rat::int(-1)
    }
}

/// `Qω(σ×v_t) = (−1)^k Σ_{s<t} (ω(σ×e_s) − A(s)·iω(σ))`; satisfies
/// `e∘i − id = dQ + Qd` on cochains vanishing on the time boundary.
pub fn homotopy_q(c: &CubicalComplex, w: &Cochain, p: &TimeProfile) -> Result<Cochain> {
    check_on(c, w)?;
    let (ta, n) = time_axis(c)?;
    let k = w.degree();
    if k == 0 {
        return Err(Error::DegreeMismatch("homotopy of a 0-cochain".into()));
    }
    let sg = sign(k);
    let mut pairs = Vec::new();
    for (s, parts) in time_edge_parts(c, w, ta) {
        let mut per_t = vec![Rat::zero(); n];
        for (t, x) in parts {
            per_t[t] += x;
        }
        let total: Rat = per_t.iter().sum();
        let mut acc = Rat::zero();
        for t in 0..=n {
            if !acc.is_zero() {
                pairs.push((c.index_of(&lift(&s, ta, t, false)).expect("product cell"), &sg * &acc));
            }
            if t < n {
                acc += &per_t[t] - &(p.mass(t) * &total);
            }
        }
    }
    Cochain::new(c, k - 1, SparseVec::from_pairs(c.dim(k - 1), pairs))
}

/// `Pω(σ×v_t) = (−1)^k S(σ, t)`, with `S` the signed partial time sum of the
/// time-edge components starting at `t0`; satisfies `π*s* − id = dP + Pd`.
pub fn homotopy_p(c: &CubicalComplex, w: &Cochain, t0: usize) -> Result<Cochain> {
    check_on(c, w)?;
    let (ta, n) = time_axis(c)?;
    if t0 > n {
        return Err(Error::Invalid(format!("base slice {t0} outside 0..={n}")));
    }
    let k = w.degree();
    if k == 0 {
        return Err(Error::DegreeMismatch("homotopy of a 0-cochain".into()));
    }
    let sg = sign(k);
    let mut pairs = Vec::new();
    for (s, parts) in time_edge_parts(c, w, ta) {
        let mut per_t = vec![Rat::zero(); n];
        for (t, x) in parts {
            per_t[t] += x;
        }
        let mut acc = Rat::zero();
        for t in t0 + 1..=n {
            acc += &per_t[t - 1];
            if !acc.is_zero() {
                pairs.push((c.index_of(&lift(&s, ta, t, false)).expect("product cell"), &sg * &acc));
            }
        }
        let mut acc = Rat::zero();
        for t in (0..t0).rev() {
            acc -= &per_t[t];
            if !acc.is_zero() {
                pairs.push((c.index_of(&lift(&s, ta, t, false)).expect("product cell"), &sg * &acc));
            }
        }
    }
    Cochain::new(c, k - 1, SparseVec::from_pairs(c.dim(k - 1), pairs))
}

/// `s*ω`: restriction to the time slice `t0`.
pub fn section(c: &CubicalComplex, sigma: &CubicalComplex, w: &Cochain, t0: usize) -> Result<Cochain> {
    check_on(c, w)?;
    let (ta, n) = time_axis(c)?;
    if t0 > n {
        return Err(Error::Invalid(format!("slice {t0} outside 0..={n}")));
    }
    let k = w.degree();
    let pairs = w.values().iter().filter_map(|(i, x)| {
        let cell = c.cell(k, i);
        (!cell.is_edge(ta) && cell.pos[ta] as usize == t0)
            .then(|| (sigma.index_of(&c.spatial_part(cell)).expect("spatial part"), x.clone()))
    });
    let pairs: Vec<_> = pairs.collect();
    if k > sigma.m() {
        return Err(Error::DegreeMismatch(format!("no spatial cells of degree {k}")));
    }
    Cochain::new(sigma, k, SparseVec::from_pairs(sigma.dim(k), pairs))
}

/// `π*φ`: the time-constant extension of a spatial cochain.
pub fn projection(c: &CubicalComplex, sigma: &CubicalComplex, phi: &Cochain) -> Result<Cochain> {
    check_on(sigma, phi)?;
    let (ta, n) = time_axis(c)?;
    let k = phi.degree();
    let mut pairs = Vec::new();
    for (j, x) in phi.values().iter() {
        let s = sigma.cell(k, j);
        for t in 0..=n {
            pairs.push((c.index_of(&lift(s, ta, t, false)).expect("product cell"), x.clone()));
        }
    }
    Cochain::new(c, k, SparseVec::from_pairs(c.dim(k), pairs))
}

/// Spatial support that corresponds to `s` on the product.
pub fn spatial_support(s: SupportSystem) -> SupportSystem {
    SupportSystem { time: Flag::Free, space: s.space }
}

/// Matrices in class coordinates of `i_*: H^k_{(c,f)}(M) → H^{k−1}_f(Σ)` and
/// `e_*` in the opposite direction, for time-compact support `(c, f)`.
pub fn time_compact_iso(
    c: &CubicalComplex,
    k: usize,
    space: Flag,
    p: &TimeProfile,
) -> Result<(RationalMatrix, RationalMatrix)> {
    if k == 0 {
        return Err(Error::DegreeMismatch("time-compact isomorphism needs degree ≥ 1".into()));
    }
    let sigma = c.spatial_factor();
    let s = SupportSystem { time: Flag::Compact, space };
    let hm = cohomology(c, k, s, Flavor::D)?;
    let hs = cohomology(&sigma, k - 1, spatial_support(s), Flavor::D)?;
    let i_cols: Vec<SparseVec> = hm
        .representatives()
        .iter()
        .map(|r| Ok(SparseVec::from_dense(&hs.coordinates(&time_integration(c, &sigma, r)?)?)))
        .collect::<Result<_>>()?;
    let e_cols: Vec<SparseVec> = hs
        .representatives()
        .iter()
        .map(|r| Ok(SparseVec::from_dense(&hm.coordinates(&time_extension(c, &sigma, r, p)?)?)))
        .collect::<Result<_>>()?;
    Ok((RationalMatrix::from_columns(hs.dim(), &i_cols), RationalMatrix::from_columns(hm.dim(), &e_cols)))
}

/// Matrices of `s*: H^k_{(free,f)}(M) → H^k_f(Σ)` and `π*` back.
pub fn spacelike_iso(c: &CubicalComplex, k: usize, space: Flag, t0: usize) -> Result<(RationalMatrix, RationalMatrix)> {
    let sigma = c.spatial_factor();
    let s = SupportSystem { time: Flag::Free, space };
    let hm = cohomology(c, k, s, Flavor::D)?;
    if k > sigma.m() {
        return Ok((RationalMatrix::zeros(0, hm.dim()), RationalMatrix::zeros(hm.dim(), 0)));
    }
    let hs = cohomology(&sigma, k, spatial_support(s), Flavor::D)?;
    let s_cols: Vec<SparseVec> = hm
        .representatives()
        .iter()
        .map(|r| Ok(SparseVec::from_dense(&hs.coordinates(&section(c, &sigma, r, t0)?)?)))
        .collect::<Result<_>>()?;
    let p_cols: Vec<SparseVec> = hs
        .representatives()
        .iter()
        .map(|r| Ok(SparseVec::from_dense(&hm.coordinates(&projection(c, &sigma, r)?)?)))
        .collect::<Result<_>>()?;
    Ok((RationalMatrix::from_columns(hs.dim(), &s_cols), RationalMatrix::from_columns(hm.dim(), &p_cols)))
}
