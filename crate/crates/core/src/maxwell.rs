//! Maxwell k-forms: observables, presymplectic form, radical and the locality audits.

use std::sync::Arc;

use gaugeloc_linalg::{
    kernel_vectors, quotient_coordinates, rank, Echelon, QuotientMap, Rat, RationalMatrix, SpanSolver, SparseVec,
    Subspace,
};
use rayon::prelude::*;

use crate::cochain::Cochain;
use crate::cohomology::{cohomology, induced_map};
use crate::complex::CubicalComplex;
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::presets::SPATIAL_MARGIN;
use crate::propagator::{build_dalembert, DAlembertOperator, Direction};
use crate::support::{allowed, Flavor, SupportSystem};

fn check_degree(c: &CubicalComplex, k: usize) -> Result<()> {
    if k == 0 || k >= c.m() {
        return Err(Error::DegreeMismatch(format!(
            "Maxwell k-forms need 1 ≤ k ≤ m−1 = {}, got k = {k}: in degree 0 there is no gauge freedom and in degree m the field equation is empty",
            c.m().saturating_sub(1)
        )));
    }
    if c.time_index().is_none() {
        return Err(Error::Invalid("Maxwell observables need a spacetime complex".into()));
    }
    Ok(())
}

pub(crate) fn time_interior(c: &CubicalComplex, k: usize, i: usize) -> bool {
    let (lo, hi) = c.time_range(k, i).expect("spacetime complex");
    lo >= 1 && hi < c.nt()
}

/// Cells that may carry observables: off both time ends and at least `margin`
/// vertex steps from the spatial boundary.
pub fn observable_region(c: &CubicalComplex, k: usize, margin: usize) -> Vec<bool> {
    (0..c.dim(k)).map(|i| time_interior(c, k, i) && c.spatial_gap(k, i) >= margin).collect()
}

/// Cells on which gauge parameters `ρ` of vanishing observables may live.
pub fn gauge_region(c: &CubicalComplex, k: usize) -> Vec<bool> {
    (0..c.dim(k)).map(|i| time_interior(c, k, i) && !c.in_sb(k, i)).collect()
}

pub(crate) fn indices(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

pub(crate) fn lift(n: usize, cols: &[usize], v: SparseVec) -> SparseVec {
    v.reindex(n, |j| Some(cols[j]))
}

/// `ker δ` on cochains supported in `region`.
fn coclosed_on(c: &CubicalComplex, k: usize, region: &[bool]) -> Vec<SparseVec> {
    let cols = indices(region);
    kernel_vectors(&c.delta(k).select_cols(&cols)).into_iter().map(|v| lift(c.dim(k), &cols, v)).collect()
}

/// `δd C(from) ∩ C(region)`.
fn vanishing_on(c: &CubicalComplex, k: usize, from: &[bool], region: &[bool]) -> Subspace {
    let cols = indices(from);
    image_within(&c.delta(k + 1).mul(c.d(k)).select_cols(&cols), region)
}

/// Column span of `a` intersected with cochains supported in `region`.
pub(crate) fn image_within(a: &RationalMatrix, region: &[bool]) -> Subspace {
    let outside: Vec<usize> = (0..a.rows()).filter(|&i| !region[i]).collect();
    let coeffs = kernel_vectors(&a.select_rows(&outside));
    let images: Vec<SparseVec> = coeffs.par_iter().map(|r| a.mul_vec(r)).collect();
    Subspace::from_vectors(a.rows(), images)
}

/// Echelon of `d C^{k−1}`, the gauge directions in degree `k`.
pub(crate) fn exact_directions(c: &CubicalComplex, k: usize) -> Echelon {
    Echelon::from_rows(c.dim(k), c.d(k - 1).columns(), false)
}

/// `Obs = Inv / Van` in degree `k` with its presymplectic form.
#[derive(Clone, Debug)]
pub struct MaxwellObservables {
    complex: Arc<CubicalComplex>,
    degree: usize,
    spatial_margin: usize,
    op: DAlembertOperator,
    region: Vec<bool>,
    inv: Subspace,
    van: Subspace,
    quotient: QuotientMap,
    g_reps: Vec<SparseVec>,
    gram: RationalMatrix,
    radical: Vec<SparseVec>,
}

pub fn observables(c: Arc<CubicalComplex>, k: usize) -> Result<MaxwellObservables> {
    observables_with_margin(c, k, SPATIAL_MARGIN)
}

pub fn observables_with_margin(c: Arc<CubicalComplex>, k: usize, spatial_margin: usize) -> Result<MaxwellObservables> {
    check_degree(&c, k)?;
    let n = c.dim(k);
    let region = observable_region(&c, k, spatial_margin);
    let inv = Subspace::from_vectors(n, coclosed_on(&c, k, &region));
    let van = vanishing_on(&c, k, &gauge_region(&c, k), &region);
    let quotient = quotient_coordinates(&van, &inv)
        .map_err(|_| Error::Invalid("a vanishing observable is not coclosed".into()))?;
    let op = build_dalembert(c.clone(), k)?;
    let reps = quotient.complement().to_vec();
    let g_reps = op.causal_many(&reps)?;
    let w = c.weights(k);
    let gram = pairing_block(&reps, &g_reps, w);
    let antisym = (0..gram.rows()).all(|i| (0..gram.cols()).all(|j| gram.get(i, j) == -gram.get(j, i)));
    if !antisym {
        return Err(Error::Invalid("presymplectic matrix is not antisymmetric".into()));
    }
    if van.basis().par_iter().any(|v| g_reps.iter().any(|g| !v.weighted_dot(g, w).is_zero())) {
        return Err(Error::Invalid("presymplectic form does not vanish on vanishing observables".into()));
    }
    // ω is null exactly when Gω is pure gauge.
    let exact = exact_directions(&c, k);
    let residues: Vec<SparseVec> = g_reps.par_iter().map(|g| exact.reduce(g)).collect();
    let radical = kernel_vectors(&RationalMatrix::from_columns(n, &residues));
    Ok(MaxwellObservables { complex: c, degree: k, spatial_margin, op, region, inv, van, quotient, g_reps, gram, radical })
}

pub(crate) fn pairing_block(a: &[SparseVec], b: &[SparseVec], w: &[Rat]) -> RationalMatrix {
    let rows: Vec<SparseVec> =
        a.par_iter().map(|x| SparseVec::from_dense(&b.iter().map(|y| x.weighted_dot(y, w)).collect::<Vec<_>>())).collect();
    RationalMatrix::from_rows(b.len(), rows)
}

impl MaxwellObservables {
    pub fn complex(&self) -> &Arc<CubicalComplex> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn spatial_margin(&self) -> usize {
        self.spatial_margin
    }

    pub fn operator(&self) -> &DAlembertOperator {
        &self.op
    }

    pub fn region(&self) -> &[bool] {
        &self.region
    }

    pub fn inv(&self) -> &Subspace {
        &self.inv
    }

    pub fn van(&self) -> &Subspace {
        &self.van
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Coclosed cochains representing the basis of `Obs`.
    pub fn representatives(&self) -> &[SparseVec] {
        self.quotient.complement()
    }

    /// `G` of each representative.
    pub fn propagated(&self) -> &[SparseVec] {
        &self.g_reps
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    /// Radical in `Obs` coordinates.
    pub fn radical(&self) -> &[SparseVec] {
        &self.radical
    }

    /// Nullity of the square Gram matrix, which can exceed the radical on a finite window.
    pub fn gram_nullity(&self) -> usize {
        self.gram.cols() - rank(&self.gram)
    }

    /// Class coordinates of a coclosed cochain supported in the observable region.
    pub fn coordinates(&self, w: &SparseVec) -> Result<Vec<Rat>> {
        if let Some((i, _)) = w.iter().find(|(i, _)| !self.region[*i]) {
            return Err(Error::SupportLeak { cell: self.complex.show_index(self.degree, i) });
        }
        self.quotient.coords(w).map_err(|_| Error::Invalid("cochain is not coclosed".into()))
    }

    pub fn combine(&self, coords: &[Rat]) -> SparseVec {
        let mut acc = SparseVec::zeros(self.complex.dim(self.degree));
        for (x, r) in coords.iter().zip(self.representatives()) {
            if !x.is_zero() {
                acc = acc.add_scaled(x, r);
            }
        }
        acc
    }

    /// `τ(x, y) = xᵀ·gram·y` in `Obs` coordinates.
    pub fn tau(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let gy = self.gram.mul_vec(&SparseVec::from_dense(y));
        SparseVec::from_dense(x).dot(&gy)
    }

    pub fn in_radical(&self, x: &[Rat]) -> bool {
        let g = self.g_of(x);
        exact_directions(&self.complex, self.degree).reduce(&g).is_zero()
    }

    /// `G` of the class with coordinates `x` (on its representative).
    pub fn g_of(&self, x: &[Rat]) -> SparseVec {
        let mut acc = SparseVec::zeros(self.complex.dim(self.degree));
        for (c, g) in x.iter().zip(&self.g_reps) {
            if !c.is_zero() {
                acc = acc.add_scaled(c, g);
            }
        }
        acc
    }

    /// Evaluation `ev_ω(A) = (ω, A)` of the class with coordinates `x`.
    pub fn evaluate(&self, x: &[Rat], a: &Cochain) -> Result<Rat> {
        if a.complex_id() != self.complex.id() || a.degree() != self.degree {
            return Err(Error::ComplexMismatch);
        }
        Ok(self.combine(x).weighted_dot(a.values(), self.complex.weights(self.degree)))
    }
}

/// Agreement between the Gram radical and electric-flux classes `[δθ]`,
/// `θ` spanning `ker(H_c^{k+1} → H_tc^{k+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalCheck {
    pub radical_dim: usize,
    pub cohomology_kernel_dim: usize,
    /// Dimension of the span of the `[δθ]` in `Obs`.
    pub flux_span_dim: usize,
    /// Every `[δθ]` lies in the radical.
    pub flux_in_radical: bool,
    /// A representative of each kernel class was found inside the observable region.
    pub deep_representatives: bool,
}

impl RadicalCheck {
    pub fn agrees(&self) -> bool {
        self.deep_representatives
            && self.flux_in_radical
            && self.flux_span_dim == self.cohomology_kernel_dim
            && self.radical_dim == self.cohomology_kernel_dim
    }
}

/// Closed compactly supported `(k+1)`-cochains `θ` representing the classes of
/// `ker(H_c^{k+1} → H_tc^{k+1})`, each moved inside the observable region so that `δθ ∈ Inv`.
pub fn flux_sources(obs: &MaxwellObservables) -> Result<Option<Vec<Cochain>>> {
    let c = &obs.complex;
    let k = obs.degree;
    let hc = cohomology(c, k + 1, SupportSystem::C, Flavor::D)?;
    let htc = cohomology(c, k + 1, SupportSystem::TC, Flavor::D)?;
    let cols: Vec<SparseVec> = hc
        .representatives()
        .iter()
        .map(|r| htc.coordinates(r).map(|x| SparseVec::from_dense(&x)))
        .collect::<Result<_>>()?;
    let map = RationalMatrix::from_columns(htc.dim(), &cols);
    let kernel = kernel_vectors(&map);
    if kernel.is_empty() {
        return Ok(Some(vec![]));
    }
    // (k+1)-cells whose every face may carry observables.
    let deep: Vec<bool> = c
        .cells(k + 1)
        .iter()
        .map(|cell| c.faces(cell).iter().all(|(f, _)| obs.region[c.index_of(f).expect("face")]))
        .collect();
    let outside: Vec<usize> = (0..c.dim(k + 1)).filter(|&i| !deep[i]).collect();
    let beta_cols: Vec<usize> =
        allowed(c, k, SupportSystem::C, Flavor::D).iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
    let d_out = c.d(k).select_rows(&outside).select_cols(&beta_cols);
    let solver = SpanSolver::new(outside.len(), d_out.columns());
    let mut out = Vec::with_capacity(kernel.len());
    for kv in kernel {
        let theta0 = hc.combine(&kv.to_dense());
        let rhs = SparseVec::from_pairs(
            outside.len(),
            outside.iter().enumerate().map(|(r, &i)| (r, -theta0.get(i))).filter(|(_, x)| !x.is_zero()),
        );
        let Some(beta) = solver.solve(&rhs) else {
            return Ok(None);
        };
        let beta = Cochain::new(c, k, lift(c.dim(k), &beta_cols, beta))?;
        out.push(theta0.add(&beta.d(c)?)?);
    }
    Ok(Some(out))
}

pub fn radical_check(obs: &MaxwellObservables) -> Result<RadicalCheck> {
    let c = &obs.complex;
    let k = obs.degree;
    let hc = cohomology(c, k + 1, SupportSystem::C, Flavor::D)?;
    let htc = cohomology(c, k + 1, SupportSystem::TC, Flavor::D)?;
    let cols: Vec<SparseVec> = hc
        .representatives()
        .iter()
        .map(|r| htc.coordinates(r).map(|x| SparseVec::from_dense(&x)))
        .collect::<Result<_>>()?;
    let kernel_dim = hc.dim() - rank(&RationalMatrix::from_columns(htc.dim(), &cols));
    let radical_dim = obs.radical.len();
    let Some(thetas) = flux_sources(obs)? else {
        return Ok(RadicalCheck {
            radical_dim,
            cohomology_kernel_dim: kernel_dim,
            flux_span_dim: 0,
            flux_in_radical: false,
            deep_representatives: false,
        });
    };
    let mut coords = Vec::with_capacity(thetas.len());
    for t in &thetas {
        coords.push(obs.coordinates(t.delta(c)?.values())?);
    }
    let flux_in_radical = coords.iter().all(|x| obs.in_radical(x));
    let flux_span_dim =
        Subspace::from_vectors(obs.dim(), coords.iter().map(|x| SparseVec::from_dense(x)).collect()).dim();
    Ok(RadicalCheck {
        radical_dim,
        cohomology_kernel_dim: kernel_dim,
        flux_span_dim,
        flux_in_radical,
        deep_representatives: true,
    })
}

/// Matrix of the induced map `Obs_M → Obs_N` (columns indexed by `Obs_M`).
pub fn pushforward_matrix(e: &Embedding, src: &MaxwellObservables, tgt: &MaxwellObservables) -> Result<RationalMatrix> {
    if e.source().id() != src.complex.id() || e.target().id() != tgt.complex.id() || src.degree != tgt.degree {
        return Err(Error::ComplexMismatch);
    }
    let k = src.degree;
    let cols: Vec<SparseVec> = src
        .representatives()
        .par_iter()
        .map(|r| {
            let w = Cochain::new(&src.complex, k, r.clone())?;
            let pushed = e.extend_by_zero(&w)?;
            Ok(SparseVec::from_dense(&tgt.coordinates(pushed.values())?))
        })
        .collect::<Result<_>>()?;
    Ok(RationalMatrix::from_columns(tgt.dim(), &cols))
}

#[derive(Clone, Debug)]
pub struct LocalityKernel {
    pub matrix: RationalMatrix,
    /// Kernel basis in source `Obs` coordinates.
    pub kernel: Vec<SparseVec>,
    /// `dim ker(H_c^{k+1}(M) → H_c^{k+1}(N))`.
    pub cohomology_kernel_dim: usize,
    /// The kernel lies in the source radical.
    pub kernel_in_radical: bool,
}

impl LocalityKernel {
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn agrees(&self) -> bool {
        self.kernel.len() == self.cohomology_kernel_dim && self.kernel_in_radical
    }
}

pub fn locality_kernel(e: &Embedding, src: &MaxwellObservables, tgt: &MaxwellObservables) -> Result<LocalityKernel> {
    let matrix = pushforward_matrix(e, src, tgt)?;
    let kernel = kernel_vectors(&matrix);
    let cohomology_kernel_dim = induced_map(e, src.degree + 1, SupportSystem::C, Flavor::D)?.kernel_dim();
    let kernel_in_radical = kernel.iter().all(|v| src.in_radical(&v.to_dense()));
    Ok(LocalityKernel { matrix, kernel, cohomology_kernel_dim, kernel_in_radical })
}

/// An observable of `M` killed along `h` whose image along `f` pairs nontrivially with a partner.
#[derive(Clone, Debug)]
pub struct NoGoWitness {
    /// Source `Obs` coordinates.
    pub element: Vec<Rat>,
    pub element_cochain: SparseVec,
    /// Image in `Obs_N`.
    pub image: Vec<Rat>,
    /// Index of the partner in the `Obs_N` basis.
    pub partner: usize,
    pub partner_cochain: SparseVec,
    pub value: Rat,
}

pub fn no_go_witness(
    f: &Embedding,
    h: &Embedding,
    src: &MaxwellObservables,
    n_obs: &MaxwellObservables,
    o_obs: &MaxwellObservables,
) -> Result<Option<NoGoWitness>> {
    let along_h = locality_kernel(h, src, o_obs)?;
    let pf = pushforward_matrix(f, src, n_obs)?;
    for v in &along_h.kernel {
        let image = pf.mul_vec(v);
        let pairings = n_obs.gram.transpose().mul_vec(&image);
        // τ_N(image, e_j) = Σ_i image_i gram_ij.
        let first = pairings.iter().next().map(|(j, x)| (j, x.clone()));
        if let Some((j, value)) = first {
            return Ok(Some(NoGoWitness {
                element: v.to_dense(),
                element_cochain: src.combine(&v.to_dense()),
                image: image.to_dense(),
                partner: j,
                partner_cochain: n_obs.representatives()[j].clone(),
                value,
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct CausalityReport {
    pub block: RationalMatrix,
}

impl CausalityReport {
    pub fn is_zero(&self) -> bool {
        self.block.is_zero()
    }
}

/// `τ_N` between the images of two regions whose causal shadows are disjoint.
pub fn causality_check(
    f1: &Embedding,
    f2: &Embedding,
    o1: &MaxwellObservables,
    o2: &MaxwellObservables,
) -> Result<CausalityReport> {
    if f1.target().id() != f2.target().id() {
        return Err(Error::ComplexMismatch);
    }
    let n = f1.target().clone();
    let k = o1.degree;
    let op = build_dalembert(n.clone(), k)?;
    let image = |e: &Embedding, o: &MaxwellObservables| -> Vec<usize> {
        indices(&o.region).into_iter().map(|i| e.map(k)[i]).collect()
    };
    let s1 = image(f1, o1);
    let s2 = image(f2, o2);
    let mut shadow = op.cone(&s1, Direction::Retarded);
    for (i, b) in op.cone(&s1, Direction::Advanced).into_iter().enumerate() {
        shadow[i] |= b;
    }
    for &i in &s1 {
        shadow[i] = true;
    }
    if s2.iter().any(|&j| shadow[j]) {
        return Err(Error::ShadowsIntersect);
    }
    let push = |e: &Embedding, o: &MaxwellObservables| -> Result<Vec<SparseVec>> {
        o.representatives()
            .iter()
            .map(|r| Ok(e.extend_by_zero(&Cochain::new(&o.complex, k, r.clone())?)?.into_values()))
            .collect()
    };
    let p1 = push(f1, o1)?;
    let p2 = push(f2, o2)?;
    let g2 = op.causal_many(&p2)?;
    Ok(CausalityReport { block: pairing_block(&p1, &g2, n.weights(k)) })
}

#[derive(Clone, Debug)]
pub struct TimeSliceReport {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl TimeSliceReport {
    pub fn bijective(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.source_dim
    }
}

/// Minimum number of interior time vertices of a sub-window.
pub const MIN_INTERIOR_SLICES: usize = 3;

/// Checks that `e` is a full-space sub-window embedding with enough interior slices.
pub fn check_sub_window(e: &Embedding) -> Result<()> {
    let (s, t) = (e.source(), e.target());
    if s.components() != t.components() || e.map(0).len() != s.dim(0) {
        return Err(Error::Invalid("time-slice audit needs a full-space sub-window".into()));
    }
    let interior = s.nt().saturating_sub(1);
    if interior < MIN_INTERIOR_SLICES {
        return Err(Error::WindowTooThin(format!(
            "{interior} interior time slices, need at least {MIN_INTERIOR_SLICES}"
        )));
    }
    Ok(())
}

pub fn timeslice_check(e: &Embedding, src: &MaxwellObservables, tgt: &MaxwellObservables) -> Result<TimeSliceReport> {
    check_sub_window(e)?;
    let m = pushforward_matrix(e, src, tgt)?;
    Ok(TimeSliceReport { source_dim: src.dim(), target_dim: tgt.dim(), rank: rank(&m) })
}

/// Regions quotiented by the kernel of their map into a common target.
#[derive(Clone, Debug)]
pub struct IsotonyReport {
    pub dims: Vec<usize>,
    pub kernel_dims: Vec<usize>,
    pub quotient_dims: Vec<usize>,
    /// Ranks of the induced maps between consecutive quotients.
    pub step_ranks: Vec<usize>,
}

impl IsotonyReport {
    pub fn injective(&self) -> bool {
        self.step_ranks.iter().zip(&self.quotient_dims).all(|(r, d)| r == d)
    }
}

/// `chain[i]` embeds region `i` into region `i+1`; the last region is the target.
pub fn isotony_quotient(chain: &[Embedding], obs: &[&MaxwellObservables]) -> Result<IsotonyReport> {
    if obs.len() != chain.len() + 1 {
        return Err(Error::Invalid("need one observable space per region and target".into()));
    }
    let steps: Vec<RationalMatrix> =
        chain.iter().enumerate().map(|(i, e)| pushforward_matrix(e, obs[i], obs[i + 1])).collect::<Result<_>>()?;
    isotony_from_steps(&steps, &obs.iter().map(|o| o.dim()).collect::<Vec<_>>())
}

/// Bookkeeping for isotony: `steps[i]` is the matrix from space `i` to `i+1`.
pub fn isotony_from_steps(steps: &[RationalMatrix], dims: &[usize]) -> Result<IsotonyReport> {
    let last = dims.len() - 1;
    // Map each space to the target.
    let mut to_target: Vec<RationalMatrix> = vec![RationalMatrix::identity(dims[last])];
    for i in (0..last).rev() {
        let next = to_target.last().expect("nonempty").mul(&steps[i]);
        to_target.push(next);
    }
    to_target.reverse();
    let kernels: Vec<Subspace> =
        to_target.iter().zip(dims).map(|(m, &d)| Subspace::from_vectors(d, kernel_vectors(m))).collect();
    let quotients: Vec<QuotientMap> = kernels
        .iter()
        .zip(dims)
        .map(|(k, &d)| quotient_coordinates(k, &Subspace::full(d)).map_err(Error::from))
        .collect::<Result<_>>()?;
    let mut step_ranks = Vec::with_capacity(last);
    for i in 0..last {
        let cols: Vec<SparseVec> = quotients[i]
            .complement()
            .iter()
            .map(|r| Ok(SparseVec::from_dense(&quotients[i + 1].coords(&steps[i].mul_vec(r))?)))
            .collect::<Result<_>>()?;
        step_ranks.push(rank(&RationalMatrix::from_columns(quotients[i + 1].dim(), &cols)));
    }
    Ok(IsotonyReport {
        dims: dims.to_vec(),
        kernel_dims: kernels.iter().map(|k| k.dim()).collect(),
        quotient_dims: quotients.iter().map(|q| q.dim()).collect(),
        step_ranks,
    })
}

/// `[Sol]` presented as `G` of coclosed time-compact sources modulo `δd` of time-compact cochains.
#[derive(Clone, Debug)]
pub struct MaxwellSolutions {
    pub sources: Vec<SparseVec>,
    pub solutions: Vec<SparseVec>,
    /// Rank of the solutions modulo `d C^{k−1}`.
    pub gauge_rank: usize,
    /// `δdA = 0` on every cell off the time ends, for every representative.
    pub on_shell: bool,
}

impl MaxwellSolutions {
    pub fn dim(&self) -> usize {
        self.sources.len()
    }

    pub fn injective(&self) -> bool {
        self.gauge_rank == self.sources.len()
    }
}

pub fn solution_space(c: Arc<CubicalComplex>, k: usize) -> Result<MaxwellSolutions> {
    check_degree(&c, k)?;
    let n = c.dim(k);
    let region: Vec<bool> = (0..n).map(|i| time_interior(&c, k, i)).collect();
    let tc = Subspace::from_vectors(n, coclosed_on(&c, k, &region));
    let gauge = vanishing_on(&c, k, &region, &region);
    let q = quotient_coordinates(&gauge, &tc).map_err(Error::from)?;
    let op = build_dalembert(c.clone(), k)?;
    let sources = q.complement().to_vec();
    let solutions = op.causal_many(&sources)?;
    let dd = c.delta(k + 1).mul(c.d(k));
    let on_shell = solutions.iter().all(|a| dd.mul_vec(a).iter().all(|(i, _)| !time_interior(&c, k, i)));
    let exact = exact_directions(&c, k);
    let residues: Vec<SparseVec> = solutions.iter().map(|a| exact.reduce(a)).collect();
    let gauge_rank = rank(&RationalMatrix::from_columns(n, &residues));
    Ok(MaxwellSolutions { sources, solutions, gauge_rank, on_shell })
}

/// Evaluation matrix `(ω_i, A_j)` between `Obs` and `[Sol]` representatives.
pub fn evaluation_matrix(obs: &MaxwellObservables, sol: &MaxwellSolutions) -> RationalMatrix {
    pairing_block(obs.representatives(), &sol.solutions, obs.complex.weights(obs.degree))
}

/// `χ = −δ(G⁺(χ₊A) + G⁻(χ₋A))`, with `χ₊` the indicator of the time slices from `split` on.
pub fn lorenz_gauge(op: &DAlembertOperator, a: &Cochain, split: usize) -> Result<Cochain> {
    let c = op.complex();
    if a.degree() == 0 {
        return Err(Error::DegreeMismatch("Lorenz gauge needs degree ≥ 1".into()));
    }
    let late = Cochain::new(c, a.degree(), a.values().filter(|i| op.slice(i).0 >= split))?;
    let early = a.sub(&late)?;
    let sum = op.retarded(&late)?.add(&op.advanced(&early)?)?;
    Ok(sum.delta(c)?.scale(&Rat::int(-1)))
}
