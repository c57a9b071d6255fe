//! U(1) Yang–Mills on trivial bundles.
//!
//! Connections are stored as 1-cochains in units of `π`, offset from the reference
//! connection `0`. Phases and presymplectic values are rational multiples of `π` and
//! are stored as their coefficients. The Lagrangian constant is `h = h₀/π` with rational
//! `h₀`, so that `υ(φ, ψ) = π·h₀⁻¹·(φ, Gψ)`.

use std::sync::Arc;

use gaugeloc_linalg::{
    kernel_vectors, lattice_membership, quotient_coordinates, rank, Membership, QuotientMap, Rat,
    RationalMatrix, SpanSolver, SparseVec, Subspace,
};
use num_bigint::BigInt;
use num_integer::Integer;

use crate::cochain::{metric_pairing, Cochain};
use crate::cohomology::{cohomology, integer_h1, integral_points, IntegerCohomologyLattice};
use crate::complex::CubicalComplex;
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::maxwell::{
    exact_directions, gauge_region, image_within, indices, isotony_quotient, locality_kernel, no_go_witness,
    observable_region, pairing_block, IsotonyReport, MaxwellObservables,
};
use crate::presets::SPATIAL_MARGIN;
use crate::propagator::{build_dalembert, DAlembertOperator};
use crate::support::{allowed, Flavor, SupportSystem};
use crate::toolkit::section;

fn same_complex(c: &CubicalComplex, w: &Cochain) -> Result<()> {
    if w.complex_id() != c.id() {
        return Err(Error::ComplexMismatch);
    }
    Ok(())
}

fn require_degree(w: &Cochain, k: usize) -> Result<()> {
    if w.degree() != k {
        return Err(Error::DegreeMismatch(format!("expected a {k}-cochain, got degree {}", w.degree())));
    }
    Ok(())
}

/// Reduces a phase coefficient into `[0, 2)`.
pub fn normalize_phase(x: &Rat) -> Rat {
    let two = Rat::int(2);
    let q = (x / &two).floor();
    x - &(&Rat::from_bigint(q) * &two)
}

/// A connection `λ = π·value` on the trivial bundle.
#[derive(Clone, Debug)]
pub struct Connection {
    complex: Arc<CubicalComplex>,
    value: Cochain,
}

impl Connection {
    pub fn new(c: Arc<CubicalComplex>, value: Cochain) -> Result<Connection> {
        same_complex(&c, &value)?;
        require_degree(&value, 1)?;
        Ok(Connection { complex: c, value })
    }

    pub fn zero(c: Arc<CubicalComplex>) -> Connection {
        let value = Cochain::zero(&c, 1);
        Connection { complex: c, value }
    }

    pub fn complex(&self) -> &Arc<CubicalComplex> {
        &self.complex
    }

    pub fn value(&self) -> &Cochain {
        &self.value
    }

    pub fn shifted(&self, by: &Cochain) -> Result<Connection> {
        Connection::new(self.complex.clone(), self.value.add(by)?)
    }
}

/// `F(λ) = −dω`.
pub fn curvature(l: &Connection) -> Result<Cochain> {
    Ok(l.value.d(&l.complex)?.scale(&Rat::int(-1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeMembership {
    /// `w = dχ + 2·Σ winding_i·n_i` (units of `π`).
    Member { chi: Cochain, winding: Vec<BigInt> },
    NotClosed,
    /// Closed, with the given non-integral coordinates in the lattice basis.
    NonMember { coords: Vec<Rat> },
}

impl GaugeMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, GaugeMembership::Member { .. })
    }
}

/// Gauge shifts `dC⁰ + 2π·H¹(M, ℤ)`.
#[derive(Clone, Debug)]
pub struct GaugeShiftLattice {
    complex: Arc<CubicalComplex>,
    lattice: IntegerCohomologyLattice,
}

pub fn gauge_lattice(c: Arc<CubicalComplex>) -> Result<GaugeShiftLattice> {
    let lattice = integer_h1(&c)?;
    Ok(GaugeShiftLattice { complex: c, lattice })
}

impl GaugeShiftLattice {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn integer(&self) -> &IntegerCohomologyLattice {
        &self.lattice
    }

    /// Integer cocycles `n_i`; the topological shifts are `2·n_i` in units of `π`.
    pub fn integer_generators(&self) -> &[Cochain] {
        &self.lattice.generators
    }

    pub fn shifts(&self) -> Vec<Cochain> {
        self.lattice.generators.iter().map(|g| g.scale(&Rat::int(2))).collect()
    }

    pub fn membership(&self, w: &Cochain) -> Result<GaugeMembership> {
        same_complex(&self.complex, w)?;
        require_degree(w, 1)?;
        let c = &self.complex;
        if !w.d(c)?.is_zero() {
            return Ok(GaugeMembership::NotClosed);
        }
        match self.lattice.gauge_membership(w)? {
            Membership::NonMember(coords) => Ok(GaugeMembership::NonMember { coords }),
            Membership::Member(winding) => {
                // The lattice basis is 2·(integral basis), which the generators realize.
                let mut residual = w.clone();
                for (z, g) in winding.iter().zip(&self.lattice.generators) {
                    residual = residual.sub(&g.scale(&(Rat::from_bigint(z.clone()) * Rat::int(2))))?;
                }
                let solver = SpanSolver::new(c.dim(1), c.d(0).columns());
                let chi = solver
                    .solve(residual.values())
                    .ok_or_else(|| Error::Invalid("lattice residual is not exact".into()))?;
                Ok(GaugeMembership::Member { chi: Cochain::new(c, 0, chi)?, winding })
            }
        }
    }
}

/// `F(λ) = constant + (φ, λ)` with coexact linear part `φ = δη`.
#[derive(Clone, Debug)]
pub struct AffineObservable {
    pub constant: Rat,
    pub linear: Cochain,
    pub certificate: Cochain,
}

impl AffineObservable {
    pub fn new(c: &CubicalComplex, constant: Rat, certificate: Cochain) -> Result<AffineObservable> {
        require_degree(&certificate, 2)?;
        check_compact(c, &certificate)?;
        let linear = certificate.delta(c)?;
        Ok(AffineObservable { constant, linear, certificate })
    }

    /// Value in units of `π`.
    pub fn value(&self, l: &Connection) -> Result<Rat> {
        Ok(&self.constant + &metric_pairing(&l.complex, &self.linear, &l.value)?)
    }

    /// `δη = φ` and `φ` annihilates the lattice generators.
    pub fn verify(&self, c: &CubicalComplex, g: &GaugeShiftLattice) -> Result<bool> {
        let exact = self.certificate.delta(c)?.sub(&self.linear)?.is_zero();
        let blind = g.lattice.generators.iter().all(|n| metric_pairing(c, &self.linear, n).map(|x| x.is_zero()).unwrap_or(false));
        Ok(exact && blind)
    }
}

/// Cells on which compactly supported test forms may live: off every boundary stratum.
pub fn compact_cells(c: &CubicalComplex, k: usize) -> Vec<bool> {
    allowed(c, k, SupportSystem::C, Flavor::D)
}

fn check_compact(c: &CubicalComplex, w: &Cochain) -> Result<()> {
    let ok = compact_cells(c, w.degree());
    if let Some((i, _)) = w.values().iter().find(|(i, _)| !ok[*i]) {
        return Err(Error::SupportLeak { cell: c.show_index(w.degree(), i) });
    }
    Ok(())
}

/// `F*(β)(λ) = (β, F(λ))`; its linear part is `−δβ`.
pub fn curvature_dual(c: &CubicalComplex, beta: &Cochain) -> Result<AffineObservable> {
    same_complex(c, beta)?;
    require_degree(beta, 2)?;
    AffineObservable::new(c, Rat::zero(), beta.scale(&Rat::int(-1)))
}

/// `MW*(α) = F*(dα)`.
pub fn mw_dual(c: &CubicalComplex, alpha: &Cochain) -> Result<AffineObservable> {
    same_complex(c, alpha)?;
    require_degree(alpha, 1)?;
    check_compact(c, alpha)?;
    curvature_dual(c, &alpha.d(c)?)
}

/// `exp(iπ·(phase + (φ, value)))` with coclosed `φ` pairing integrally with `H¹(M, ℤ)`.
#[derive(Clone, Debug)]
pub struct AffineCharacter {
    pub phase: Rat,
    pub linear: Cochain,
    /// `(φ, n_i)` for the integer generators.
    pub certificate: Vec<Rat>,
}

impl AffineCharacter {
    pub fn new(g: &GaugeShiftLattice, phase: Rat, linear: Cochain) -> Result<AffineCharacter> {
        let c = &g.complex;
        same_complex(c, &linear)?;
        require_degree(&linear, 1)?;
        // δ is the exact adjoint of d, so invariance under dχ needs only δφ = 0.
        if !linear.delta(c)?.is_zero() {
            return Err(Error::Invalid("character linear part is not coclosed".into()));
        }
        let certificate: Vec<Rat> =
            g.lattice.generators.iter().map(|n| metric_pairing(c, &linear, n)).collect::<Result<_>>()?;
        if let Some(x) = certificate.iter().find(|x| !x.is_integer()) {
            return Err(Error::Invalid(format!("character pairs to {x} with an integer class, not gauge invariant")));
        }
        Ok(AffineCharacter { phase: normalize_phase(&phase), linear, certificate })
    }

    /// Phase of the value in units of `π`, in `[0, 2)`.
    pub fn value(&self, l: &Connection) -> Result<Rat> {
        Ok(normalize_phase(&(&self.phase + &metric_pairing(&l.complex, &self.linear, &l.value)?)))
    }

    /// Phase of `value(b)/value(a)`, in `[0, 2)`.
    pub fn ratio(&self, a: &Connection, b: &Connection) -> Result<Rat> {
        Ok(normalize_phase(&(&self.value(b)? - &self.value(a)?)))
    }
}

#[derive(Clone, Debug)]
pub enum Separation {
    GaugeEquivalent { chi: Cochain, winding: Vec<BigInt> },
    Separated { character: AffineCharacter, values: (Rat, Rat) },
}

/// Characters `α^i`, compactly supported and coclosed, with `(α^i, n_j) = δ_ij`.
pub fn dual_generators(g: &GaugeShiftLattice) -> Result<Vec<Cochain>> {
    let c = &g.complex;
    let hd = cohomology(c, 1, SupportSystem::C, Flavor::Delta)?;
    let gens = &g.lattice.generators;
    if hd.dim() != gens.len() {
        return Err(Error::Invalid(format!("dual cohomology has dim {} but lattice rank is {}", hd.dim(), gens.len())));
    }
    // P_aj = (r_a, n_j); α^i = Σ_a X_ia r_a with X·P = I.
    let rows: Vec<SparseVec> = hd
        .representatives()
        .iter()
        .map(|r| Ok(SparseVec::from_dense(&gens.iter().map(|n| metric_pairing(c, r, n)).collect::<Result<Vec<_>>>()?)))
        .collect::<Result<_>>()?;
    let p = RationalMatrix::from_rows(gens.len(), rows);
    let pt = p.transpose();
    let mut out = Vec::with_capacity(gens.len());
    for i in 0..gens.len() {
        let x = gaugeloc_linalg::solve(&pt, &SparseVec::unit(gens.len(), i))
            .map_err(|_| Error::Invalid("duality pairing is singular".into()))?;
        out.push(hd.combine(&x.to_dense()));
    }
    Ok(out)
}

pub fn separate_connections(g: &GaugeShiftLattice, a: &Connection, b: &Connection) -> Result<Separation> {
    let c = &g.complex;
    if a.complex.id() != c.id() || b.complex.id() != c.id() {
        return Err(Error::ComplexMismatch);
    }
    let diff = b.value.sub(&a.value)?;
    match g.membership(&diff)? {
        GaugeMembership::Member { chi, winding } => Ok(Separation::GaugeEquivalent { chi, winding }),
        GaugeMembership::NotClosed => {
            // Curvatures differ somewhere; test against one such cell.
            let df = curvature(b)?.sub(&curvature(a)?)?;
            let ok = compact_cells(c, 2);
            let Some((i, _)) = df.values().iter().find(|(i, _)| ok[*i]) else {
                return Err(Error::Unsupported("curvatures differ only on boundary cells".into()));
            };
            let beta = Cochain::indicator(c, 2, i);
            let obs = curvature_dual(c, &beta)?;
            let jump = metric_pairing(c, &beta, &df)?;
            let linear = obs.linear.scale(&jump.recip());
            let character = AffineCharacter::new(g, Rat::zero(), linear)?;
            let values = (character.value(a)?, character.value(b)?);
            Ok(Separation::Separated { character, values })
        }
        GaugeMembership::NonMember { coords } => {
            // Coordinates are in the basis 2·n_j; α^i pairs to 2·coords_i with the difference.
            let i = coords.iter().position(|x| !x.is_integer()).expect("non-member has a fractional coordinate");
            let alpha = dual_generators(g)?.swap_remove(i);
            let character = AffineCharacter::new(g, Rat::zero(), alpha)?;
            let values = (character.value(a)?, character.value(b)?);
            Ok(Separation::Separated { character, values })
        }
    }
}

/// Affine observables modulo `MW*(C_c¹)`, with the PSV⁰ quotient by curvature duals of closed forms.
#[derive(Clone, Debug)]
pub struct AffineObservableSpace {
    complex: Arc<CubicalComplex>,
    op: DAlembertOperator,
    region: Vec<bool>,
    linear: Subspace,
    van: Subspace,
    quotient: QuotientMap,
    g_reps: Vec<SparseVec>,
    gram: RationalMatrix,
    radical: Vec<SparseVec>,
    /// Classes `δη` with closed compact `η`, in quotient coordinates.
    closed_duals: Subspace,
    psv0: QuotientMap,
}

pub fn affine_obs_space(c: Arc<CubicalComplex>) -> Result<AffineObservableSpace> {
    if c.m() < 2 || c.time_index().is_none() {
        return Err(Error::DegreeMismatch("affine observables need a spacetime of dimension ≥ 2".into()));
    }
    let region = observable_region(&c, 1, SPATIAL_MARGIN);
    let r2 = gauge_region(&c, 2);
    let r2_cols = indices(&r2);
    let delta2 = c.delta(2);
    let linear = image_within(&delta2.select_cols(&r2_cols), &region);
    let r1_cols = indices(&gauge_region(&c, 1));
    let van = image_within(&delta2.mul(c.d(1)).select_cols(&r1_cols), &region);
    let quotient = quotient_coordinates(&van, &linear)
        .map_err(|_| Error::Invalid("a vanishing observable is not coexact".into()))?;
    let op = build_dalembert(c.clone(), 1)?;
    let reps = quotient.complement().to_vec();
    let g_reps = op.causal_many(&reps)?;
    let gram = pairing_block(&reps, &g_reps, c.weights(1));
    // φ is null when (δη, Gφ) = (η, dGφ) vanishes for every admissible η.
    let d1 = c.d(1);
    let residues: Vec<SparseVec> = g_reps
        .iter()
        .map(|g| {
            let dg = d1.mul_vec(g);
            SparseVec::from_pairs(c.dim(2), dg.iter().filter(|(i, _)| r2[*i]).map(|(i, x)| (i, x.clone())))
        })
        .collect();
    let radical = kernel_vectors(&RationalMatrix::from_columns(c.dim(2), &residues));
    let closed: Vec<SparseVec> = if c.m() >= 3 {
        kernel_vectors(&c.d(2).select_cols(&r2_cols)).into_iter().map(|v| v.reindex(c.dim(2), |j| Some(r2_cols[j]))).collect()
    } else {
        r2_cols.iter().map(|&i| SparseVec::unit(c.dim(2), i)).collect()
    };
    let closed_images = image_within(&delta2.mul(&RationalMatrix::from_columns(c.dim(2), &closed)), &region);
    let coords: Vec<SparseVec> = closed_images
        .basis()
        .iter()
        .map(|v| quotient.coords(v).map(|x| SparseVec::from_dense(&x)).map_err(Error::from))
        .collect::<Result<_>>()?;
    let closed_duals = Subspace::from_vectors(quotient.dim(), coords);
    let psv0 = quotient_coordinates(&closed_duals, &Subspace::full(quotient.dim())).map_err(Error::from)?;
    Ok(AffineObservableSpace { complex: c, op, region, linear, van, quotient, g_reps, gram, radical, closed_duals, psv0 })
}

impl AffineObservableSpace {
    pub fn complex(&self) -> &Arc<CubicalComplex> {
        &self.complex
    }

    pub fn operator(&self) -> &DAlembertOperator {
        &self.op
    }

    pub fn linear(&self) -> &Subspace {
        &self.linear
    }

    pub fn van(&self) -> &Subspace {
        &self.van
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn representatives(&self) -> &[SparseVec] {
        self.quotient.complement()
    }

    pub fn propagated(&self) -> &[SparseVec] {
        &self.g_reps
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn radical(&self) -> &[SparseVec] {
        &self.radical
    }

    pub fn closed_duals(&self) -> &Subspace {
        &self.closed_duals
    }

    pub fn psv0_dim(&self) -> usize {
        self.psv0.dim()
    }

    pub fn coordinates(&self, w: &SparseVec) -> Result<Vec<Rat>> {
        if let Some((i, _)) = w.iter().find(|(i, _)| !self.region[*i]) {
            return Err(Error::SupportLeak { cell: self.complex.show_index(1, i) });
        }
        self.quotient.coords(w).map_err(|_| Error::Invalid("linear part is not coexact".into()))
    }

    /// PSV⁰ coordinates of a coexact linear part.
    pub fn psv0_coordinates(&self, w: &SparseVec) -> Result<Vec<Rat>> {
        let x = self.coordinates(w)?;
        Ok(self.psv0.coords(&SparseVec::from_dense(&x))?)
    }

    /// Cochain representatives of the PSV⁰ basis.
    pub fn psv0_representatives(&self) -> Vec<SparseVec> {
        self.psv0
            .complement()
            .iter()
            .map(|x| {
                let mut acc = SparseVec::zeros(self.complex.dim(1));
                for (j, v) in x.iter() {
                    acc = acc.add_scaled(v, &self.representatives()[j]);
                }
                acc
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Psv0Report {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl Psv0Report {
    pub fn injective(&self) -> bool {
        self.rank == self.source_dim
    }
}

/// Rank of the PSV⁰ map induced by `e`.
pub fn psv0_locality(e: &Embedding, src: &AffineObservableSpace, tgt: &AffineObservableSpace) -> Result<Psv0Report> {
    if e.source().id() != src.complex.id() || e.target().id() != tgt.complex.id() {
        return Err(Error::ComplexMismatch);
    }
    let cols: Vec<SparseVec> = src
        .psv0_representatives()
        .into_iter()
        .map(|r| {
            let pushed = e.extend_by_zero(&Cochain::new(&src.complex, 1, r)?)?;
            Ok(SparseVec::from_dense(&tgt.psv0_coordinates(pushed.values())?))
        })
        .collect::<Result<_>>()?;
    let m = RationalMatrix::from_columns(tgt.psv0_dim(), &cols);
    Ok(Psv0Report { source_dim: src.psv0_dim(), target_dim: tgt.psv0_dim(), rank: rank(&m) })
}

/// Characters modulo the vanishing subgroup, with radical and center.
#[derive(Clone, Debug)]
pub struct CharacterObservableGroup {
    obs: MaxwellObservables,
    lattice: GaugeShiftLattice,
    h0: Rat,
    /// Classes `δη`, `η` closed and compact, in `Obs` coordinates.
    coexact: Subspace,
    /// Center generators modulo the radical, in `Obs` coordinates.
    center: Vec<SparseVec>,
}

/// Builds the character group on top of the degree-1 Maxwell observables.
pub fn character_obs_space(obs: MaxwellObservables, h0: Rat) -> Result<CharacterObservableGroup> {
    if obs.degree() != 1 {
        return Err(Error::DegreeMismatch("characters live in degree 1".into()));
    }
    if h0.signum() <= 0 {
        return Err(Error::Invalid("the Lagrangian constant must be positive".into()));
    }
    let c = obs.complex().clone();
    let lattice = gauge_lattice(c.clone())?;
    let r2_cols = indices(&gauge_region(&c, 2));
    let closed: Vec<SparseVec> = if c.m() >= 3 {
        kernel_vectors(&c.d(2).select_cols(&r2_cols)).into_iter().map(|v| v.reindex(c.dim(2), |j| Some(r2_cols[j]))).collect()
    } else {
        r2_cols.iter().map(|&i| SparseVec::unit(c.dim(2), i)).collect()
    };
    let images = image_within(&c.delta(2).mul(&RationalMatrix::from_columns(c.dim(2), &closed)), obs.region());
    let coords: Vec<SparseVec> = images
        .basis()
        .iter()
        .map(|v| obs.coordinates(v).map(|x| SparseVec::from_dense(&x)))
        .collect::<Result<_>>()?;
    let coexact = Subspace::from_vectors(obs.dim(), coords);
    let mut group = CharacterObservableGroup { obs, lattice, h0, coexact, center: Vec::new() };
    group.center = group.center_generators()?;
    Ok(group)
}

impl CharacterObservableGroup {
    pub fn maxwell(&self) -> &MaxwellObservables {
        &self.obs
    }

    pub fn lattice(&self) -> &GaugeShiftLattice {
        &self.lattice
    }

    pub fn h0(&self) -> &Rat {
        &self.h0
    }

    pub fn coexact(&self) -> &Subspace {
        &self.coexact
    }

    /// `υ(x, y)` in units of `π`.
    pub fn upsilon(&self, x: &[Rat], y: &[Rat]) -> Rat {
        &self.obs.tau(x, y) / &self.h0
    }

    /// Whether the class with coordinates `x` is a gauge-invariant character.
    pub fn is_character(&self, x: &[Rat]) -> Result<bool> {
        let c = self.obs.complex();
        let w = Cochain::new(c, 1, self.obs.combine(x))?;
        Ok(self.lattice.lattice.generators.iter().all(|n| metric_pairing(c, &w, n).map(|v| v.is_integer()).unwrap_or(false)))
    }

    pub fn exprad(&self) -> &[SparseVec] {
        self.obs.radical()
    }

    /// `[h⁻¹Gφ]` restricted to a middle slice, in the coordinates of the `2π`-lattice
    /// of the spatial slice (units of `π`).
    pub fn g_class(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        let c = self.obs.complex();
        let sigma = c.spatial_factor();
        let g = Cochain::new(c, 1, self.obs.g_of(x))?;
        let slice = section(c, &sigma, &g, c.nt() / 2)?.scale(&self.h0.recip());
        let lat = integer_h1(&sigma)?;
        let h = lat.h1.coordinates(&slice)?;
        Ok(match lattice_membership(&lat.gauge, &h)? {
            Membership::Member(z) => z.into_iter().map(Rat::from_bigint).collect(),
            Membership::NonMember(q) => q,
        })
    }

    /// Whether `x` lies in the center: coexact, with `[h⁻¹Gφ]` a lattice point.
    pub fn in_center(&self, x: &[Rat]) -> Result<bool> {
        if !self.coexact.contains(&SparseVec::from_dense(x)) {
            return Ok(false);
        }
        Ok(self.g_class(x)?.iter().all(Rat::is_integer))
    }

    fn center_generators(&self) -> Result<Vec<SparseVec>> {
        let basis = self.coexact.basis();
        if basis.is_empty() {
            return Ok(vec![]);
        }
        let cols: Vec<SparseVec> =
            basis.iter().map(|v| self.g_class(&v.to_dense()).map(|x| SparseVec::from_dense(&x))).collect::<Result<_>>()?;
        let n = cols[0].dim();
        let b = RationalMatrix::from_columns(n, &cols);
        let image = Subspace::from_vectors(n, b.columns());
        let points = integral_points(image.basis())?;
        let solver = SpanSolver::new(n, cols);
        points
            .into_iter()
            .map(|z| {
                let coeffs = solver.solve(&z).ok_or_else(|| Error::Invalid("lattice point outside the image".into()))?;
                let mut acc = SparseVec::zeros(self.obs.dim());
                for (j, a) in coeffs.iter() {
                    acc = acc.add_scaled(a, &basis[j]);
                }
                Ok(acc)
            })
            .collect()
    }

    /// Generators of `expcnt/exprad`.
    pub fn center(&self) -> &[SparseVec] {
        &self.center
    }

    /// Rank of `expcnt/exprad`.
    pub fn center_rank(&self) -> usize {
        self.center.len()
    }
}

/// Character-level locality: kernels along both legs and an element outside the center.
#[derive(Clone, Debug)]
pub struct YmLocalityAudit {
    pub kernel_f: usize,
    pub kernel_h: usize,
    pub cohomology_kernel_f: usize,
    pub cohomology_kernel_h: usize,
    pub witness: Option<CharacterWitness>,
}

#[derive(Clone, Debug)]
pub struct CharacterWitness {
    pub element: Vec<Rat>,
    pub element_cochain: SparseVec,
    pub partner_cochain: SparseVec,
    /// `υ` against the partner, in units of `π`.
    pub value: Rat,
}

impl CharacterWitness {
    /// The pairing lies outside `2πℤ`.
    pub fn outside_center(&self) -> bool {
        !(&self.value / &Rat::int(2)).is_integer()
    }
}

pub fn ym_locality_audit(
    f: &Embedding,
    h: &Embedding,
    src: &CharacterObservableGroup,
    n: &CharacterObservableGroup,
    o: &CharacterObservableGroup,
) -> Result<YmLocalityAudit> {
    let kf = locality_kernel(f, &src.obs, &n.obs)?;
    let kh = locality_kernel(h, &src.obs, &o.obs)?;
    let witness = match no_go_witness(f, h, &src.obs, &n.obs, &o.obs)? {
        None => None,
        Some(w) => {
            // Kernel elements are coexact, so every real multiple is a character.
            if !src.coexact.contains(&SparseVec::from_dense(&w.element)) {
                return Err(Error::Invalid("no-go element is not coexact".into()));
            }
            let c = n.obs.complex();
            let partner = Cochain::new(c, 1, w.partner_cochain.clone())?;
            let mut scale = BigInt::from(1);
            for g in &n.lattice.lattice.generators {
                scale = scale.lcm(&metric_pairing(c, &partner, g)?.denom());
            }
            let scale = Rat::from_bigint(scale);
            let partner_cochain = partner.scale(&scale).into_values();
            let value = &(&w.value * &scale) / &n.h0;
            Some(CharacterWitness { element: w.element, element_cochain: w.element_cochain, partner_cochain, value })
        }
    };
    Ok(YmLocalityAudit {
        kernel_f: kf.dim(),
        kernel_h: kh.dim(),
        cohomology_kernel_f: kf.cohomology_kernel_dim,
        cohomology_kernel_h: kh.cohomology_kernel_dim,
        witness,
    })
}

/// Isotony at the character level. Characters span `Obs` over `ℚ`, so ranks agree with
/// the Maxwell computation.
pub fn ym_isotony_quotient(chain: &[Embedding], groups: &[&CharacterObservableGroup]) -> Result<IsotonyReport> {
    let obs: Vec<&MaxwellObservables> = groups.iter().map(|g| &g.obs).collect();
    isotony_quotient(chain, &obs)
}

/// Pairings of `F(λ)` with compactly supported degree-2 classes of both flavors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeTable {
    /// Against `H²_{c,δ}` representatives.
    pub magnetic: Vec<Rat>,
    /// Against `H²_{c,d}` representatives.
    pub electric: Vec<Rat>,
}

pub fn charge_observables(l: &Connection) -> Result<ChargeTable> {
    let c = &l.complex;
    let f = curvature(l)?;
    let table = |flavor: Flavor| -> Result<Vec<Rat>> {
        let h = cohomology(c, 2, SupportSystem::C, flavor)?;
        h.representatives().iter().map(|r| metric_pairing(c, &f, r)).collect()
    };
    Ok(ChargeTable { magnetic: table(Flavor::Delta)?, electric: table(Flavor::D)? })
}

/// On-shell connections from the degree-1 solution space, as `Connection`s.
pub fn on_shell_connections(c: Arc<CubicalComplex>) -> Result<Vec<Connection>> {
    let sol = crate::maxwell::solution_space(c.clone(), 1)?;
    sol.solutions.into_iter().map(|a| Connection::new(c.clone(), Cochain::new(&c, 1, a)?)).collect()
}

/// Whether `G(x)` is pure gauge for the degree-1 observables (used by tests of `exprad`).
pub fn is_pure_gauge(obs: &MaxwellObservables, w: &SparseVec) -> bool {
    exact_directions(obs.complex(), 1).reduce(w).is_zero()
}
