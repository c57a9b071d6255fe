//! Support-restricted cohomology, induced maps, duality pairings and the
//! integer lattice in degree one.

use std::collections::VecDeque;

use gaugeloc_linalg::{
    kernel_vectors, lattice_membership, sparse_smith_factors, Echelon, IntegerLattice, Membership, Rat, RationalMatrix,
    SparseVec,
};

use crate::cochain::{metric_pairing, wedge_pairing, Cochain};
use crate::complex::CubicalComplex;
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::support::{allowed_indices, coboundary_matrix, codifferential_matrix, Flavor, SupportSystem};

/// `H^k` of the complex for one support system and flavor.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    complex_id: u64,
    degree: usize,
    support: SupportSystem,
    flavor: Flavor,
    cells: Vec<usize>,
    position: Vec<Option<usize>>,
    outgoing: Option<RationalMatrix>,
    boundaries: Echelon,
    reps: Vec<SparseVec>,
    rep_pivots: Vec<usize>,
    cochains: Vec<Cochain>,
}

/// Computes `H^k_{s}` for the `d` flavor (cocycles of `d` modulo `d`-images) or
/// the `δ` flavor.
pub fn cohomology(c: &CubicalComplex, k: usize, s: SupportSystem, flavor: Flavor) -> Result<CohomologySpace> {
    let m = c.m();
    if k > m {
        return Err(Error::DegreeMismatch(format!("degree {k} exceeds dimension {m}")));
    }
    let cells = allowed_indices(c, k, s, flavor);
    let n = cells.len();
    let (incoming, outgoing) = match flavor {
        Flavor::D => ((k >= 1).then(|| coboundary_matrix(c, k - 1, s)), (k < m).then(|| coboundary_matrix(c, k, s))),
        Flavor::Delta => {
            ((k < m).then(|| codifferential_matrix(c, k + 1, s)), (k >= 1).then(|| codifferential_matrix(c, k, s)))
        }
    };
    let boundaries = match &incoming {
        Some(inc) => Echelon::from_rows(n, inc.transpose().into_rows(), false),
        None => Echelon::new(n),
    };
    // Cocycles supported on non-pivot columns represent each class exactly once.
    let free: Vec<usize> = (0..n).filter(|&j| !boundaries.is_pivot(j)).collect();
    let reps: Vec<SparseVec> = match &outgoing {
        Some(out) => kernel_vectors(&out.select_cols(&free)),
        None => (0..free.len()).map(|j| SparseVec::unit(free.len(), j)).collect(),
    }
    .into_iter()
    .map(|v| v.reindex(n, |j| Some(free[j])))
    .collect();
    let reps = gaugeloc_linalg::Subspace::from_vectors(n, reps);
    let rep_pivots = reps.pivots().to_vec();
    let reps = reps.basis().to_vec();
    let mut position = vec![None; c.dim(k)];
    for (p, &i) in cells.iter().enumerate() {
        position[i] = Some(p);
    }
    let cochains = reps
        .iter()
        .map(|r| Cochain::new(c, k, r.reindex(c.dim(k), |j| Some(cells[j]))).expect("dimensions agree"))
        .collect();
    Ok(CohomologySpace {
        complex_id: c.id(),
        degree: k,
        support: s,
        flavor,
        cells,
        position,
        outgoing,
        boundaries,
        reps,
        rep_pivots,
        cochains,
    })
}

impl CohomologySpace {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn support(&self) -> SupportSystem {
        self.support
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn complex_id(&self) -> u64 {
        self.complex_id
    }

    /// One cocycle per class, echelon-normalized.
    pub fn representatives(&self) -> &[Cochain] {
        &self.cochains
    }

    /// Dimension of the image of the incoming differential.
    pub fn boundary_rank(&self) -> usize {
        self.boundaries.rank()
    }

    fn restrict(&self, w: &Cochain) -> Result<SparseVec> {
        if w.complex_id() != self.complex_id {
            return Err(Error::ComplexMismatch);
        }
        if w.degree() != self.degree {
            return Err(Error::DegreeMismatch(format!("degree {} cochain in H^{}", w.degree(), self.degree)));
        }
        let mut pairs = Vec::with_capacity(w.values().nnz());
        for (i, x) in w.values().iter() {
            match self.position[i] {
                Some(p) => pairs.push((p, x.clone())),
                None => return Err(Error::SupportLeak { cell: format!("degree {} cell #{i}", self.degree) }),
            }
        }
        Ok(SparseVec::from_sorted(self.cells.len(), pairs))
    }

    /// True when `w` is a cocycle of this flavor and support.
    pub fn is_cocycle(&self, w: &Cochain) -> Result<bool> {
        let v = self.restrict(w)?;
        Ok(self.outgoing.as_ref().map(|o| o.mul_vec(&v).is_zero()).unwrap_or(true))
    }

    /// Class coordinates of a cocycle.
    pub fn coordinates(&self, w: &Cochain) -> Result<Vec<Rat>> {
        let v = self.restrict(w)?;
        if let Some(o) = &self.outgoing {
            if !o.mul_vec(&v).is_zero() {
                return Err(Error::Invalid("cochain is not a cocycle".into()));
            }
        }
        Ok(self.coords_of_restricted(&v))
    }

    fn coords_of_restricted(&self, v: &SparseVec) -> Vec<Rat> {
        let r = self.boundaries.reduce(v);
        let coords: Vec<Rat> = self.rep_pivots.iter().map(|&p| r.get(p)).collect();
        let mut check = r;
        for (x, rep) in coords.iter().zip(&self.reps) {
            if !x.is_zero() {
                check = check.add_scaled(&-x.clone(), rep);
            }
        }
        assert!(check.is_zero(), "reduced cocycle must be a combination of representatives");
        coords
    }

    /// True when `w` is a coboundary (zero class).
    pub fn is_trivial(&self, w: &Cochain) -> Result<bool> {
        Ok(self.coordinates(w)?.iter().all(|x| x.is_zero()))
    }

    /// Cochain for given class coordinates.
    pub fn combine(&self, coords: &[Rat]) -> Cochain {
        let mut acc = SparseVec::zeros(self.position.len());
        for (x, rep) in coords.iter().zip(&self.cochains) {
            if !x.is_zero() {
                acc = acc.add_scaled(x, rep.values());
            }
        }
        Cochain::new_unchecked(self.complex_id, self.degree, acc)
    }
}

/// Matrix between cohomology spaces, columns indexed by the domain classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub matrix: RationalMatrix,
    /// True when the map goes from source to target (extension by zero); false for pullback.
    pub covariant: bool,
}

impl InducedMap {
    pub fn kernel_dim(&self) -> usize {
        self.matrix.cols() - gaugeloc_linalg::rank(&self.matrix)
    }
}

/// Map induced in cohomology by an embedding. Supports with a compact flag
/// push forward; the unrestricted support pulls back.
pub fn induced_map(e: &Embedding, k: usize, s: SupportSystem, flavor: Flavor) -> Result<InducedMap> {
    let src = e.source();
    let tgt = e.target();
    let hs = cohomology(src, k, s, flavor)?;
    let ht = cohomology(tgt, k, s, flavor)?;
    if s == SupportSystem::FREE {
        let cols: Vec<SparseVec> = ht
            .representatives()
            .iter()
            .map(|r| e.pullback(r).and_then(|p| hs.coordinates(&p)).map(|c| SparseVec::from_dense(&c)))
            .collect::<Result<_>>()?;
        return Ok(InducedMap { matrix: RationalMatrix::from_columns(hs.dim(), &cols), covariant: false });
    }
    let cols: Vec<SparseVec> = hs
        .representatives()
        .iter()
        .map(|r| e.extend_by_zero(r).and_then(|p| ht.coordinates(&p)).map(|c| SparseVec::from_dense(&c)))
        .collect::<Result<_>>()?;
    Ok(InducedMap { matrix: RationalMatrix::from_columns(ht.dim(), &cols), covariant: true })
}

/// Which duality a pairing matrix realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualPair {
    /// Compact against unrestricted support.
    CompactFree,
    /// Spacelike compact against timelike compact.
    SpacelikeTimelike,
}

/// Pairing matrix between two cohomology spaces: the wedge pairing for two
/// `d`-flavor spaces in complementary degrees, the metric pairing for a
/// `δ`-flavor space against a `d`-flavor space of equal degree. Supports must be dual.
pub fn pairing_matrix(c: &CubicalComplex, a: &CohomologySpace, b: &CohomologySpace) -> Result<RationalMatrix> {
    if a.complex_id != c.id() || b.complex_id != c.id() {
        return Err(Error::ComplexMismatch);
    }
    if a.support.dual() != b.support {
        return Err(Error::Invalid(format!("supports {} and {} are not dual", a.support, b.support)));
    }
    let wedge = match (a.flavor, b.flavor) {
        (Flavor::D, Flavor::D) => {
            if a.degree + b.degree != c.m() {
                return Err(Error::DegreeMismatch(format!(
                    "wedge pairing needs degrees summing to {}, got {} and {}",
                    c.m(),
                    a.degree,
                    b.degree
                )));
            }
            true
        }
        (Flavor::Delta, Flavor::D) | (Flavor::D, Flavor::Delta) => {
            if a.degree != b.degree {
                return Err(Error::DegreeMismatch(format!(
                    "metric pairing needs equal degrees, got {} and {}",
                    a.degree, b.degree
                )));
            }
            false
        }
        (Flavor::Delta, Flavor::Delta) => {
            return Err(Error::Invalid("two codifferential flavors do not pair".into()));
        }
    };
    let mut rows = Vec::with_capacity(a.dim());
    for x in a.representatives() {
        let mut row = Vec::with_capacity(b.dim());
        for y in b.representatives() {
            row.push(if wedge { wedge_pairing(c, x, y)? } else { metric_pairing(c, x, y)? });
        }
        rows.push(SparseVec::from_dense(&row));
    }
    Ok(RationalMatrix::from_rows(b.dim(), rows))
}

/// Duality pairing in degree `k`: for the wedge form, `H^k_s × H^{m−k}_{s'}`;
/// for the metric form, `H^k_{s,δ} × H^k_{s',d}`.
pub fn duality_pairing_matrix(c: &CubicalComplex, k: usize, pair: DualPair, metric: bool) -> Result<RationalMatrix> {
    let s = match pair {
        DualPair::CompactFree => SupportSystem::C,
        DualPair::SpacelikeTimelike => SupportSystem::SC,
    };
    if metric {
        let a = cohomology(c, k, s, Flavor::Delta)?;
        let b = cohomology(c, k, s.dual(), Flavor::D)?;
        pairing_matrix(c, &a, &b)
    } else {
        if k > c.m() {
            return Err(Error::DegreeMismatch(format!("degree {k} exceeds dimension {}", c.m())));
        }
        let a = cohomology(c, k, s, Flavor::D)?;
        let b = cohomology(c, c.m() - k, s.dual(), Flavor::D)?;
        pairing_matrix(c, &a, &b)
    }
}

/// Degree-one integer cohomology inside rational `H¹`, and its image scaled by
/// `2π` (coordinates in units of `π`).
#[derive(Clone, Debug)]
pub struct IntegerCohomologyLattice {
    pub h1: CohomologySpace,
    /// Classes of integer cocycles.
    pub integral: IntegerLattice,
    /// `2π` times the integral classes, in units of `π`.
    pub gauge: IntegerLattice,
    /// Integer cocycles whose classes form the basis of `integral`.
    pub generators: Vec<Cochain>,
}

impl IntegerCohomologyLattice {
    pub fn rank(&self) -> usize {
        self.integral.rank()
    }

    /// Decides whether a closed 1-cochain (in units of `π`) is `2π` times an integer class.
    pub fn gauge_membership(&self, w: &Cochain) -> Result<Membership> {
        let coords = self.h1.coordinates(w)?;
        Ok(lattice_membership(&self.gauge, &coords)?)
    }
}

/// Integer lattice of `H¹` for the unrestricted support.
pub fn integer_h1(c: &CubicalComplex) -> Result<IntegerCohomologyLattice> {
    if c.m() == 0 {
        return Err(Error::DegreeMismatch("complex has no edges".into()));
    }
    let factors = sparse_smith_factors(c.d(0))?;
    if let Some(f) = factors.iter().find(|f| **f != num_bigint::BigInt::from(1)) {
        return Err(Error::TorsionDetected { factor: f.to_string() });
    }
    let h1 = cohomology(c, 1, SupportSystem::FREE, Flavor::D)?;
    let nontree = nontree_edges(c);
    let rows = if c.m() >= 2 { c.d(1).select_cols(&nontree) } else { RationalMatrix::zeros(0, nontree.len()) };
    // Cocycles vanishing on a spanning forest meet integer cochains exactly in the integer classes.
    let basis: Vec<SparseVec> =
        kernel_vectors(&rows).into_iter().map(|v| v.reindex(c.dim(1), |j| Some(nontree[j]))).collect();
    let integral_basis = integral_points(&basis)?;
    let mut coords = Vec::with_capacity(integral_basis.len());
    let mut generators = Vec::with_capacity(integral_basis.len());
    for v in integral_basis {
        let w = Cochain::new(c, 1, v)?;
        coords.push(h1.coordinates(&w)?);
        generators.push(w);
    }
    // Forest-vanishing cocycles map isomorphically onto H¹, so these coordinates are independent.
    let integral = IntegerLattice::from_basis(h1.dim(), coords)?;
    if integral.rank() != h1.dim() {
        return Err(Error::Invalid(format!("integer classes span rank {} of H¹ dim {}", integral.rank(), h1.dim())));
    }
    let doubled: Vec<Vec<Rat>> =
        integral.basis().iter().map(|b| b.iter().map(|x| x * &Rat::int(2)).collect()).collect();
    let gauge = IntegerLattice::from_basis(h1.dim(), doubled)?;
    Ok(IntegerCohomologyLattice { h1, integral, gauge, generators })
}

fn nontree_edges(c: &CubicalComplex) -> Vec<usize> {
    let nv = c.dim(0);
    let d0 = c.d(0);
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for e in 0..d0.rows() {
        let ends: Vec<usize> = d0.row(e).iter().map(|(v, _)| v).collect();
        if let [a, b] = ends[..] {
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
    }
    let mut seen = vec![false; nv];
    let mut tree = vec![false; d0.rows()];
    for start in 0..nv {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        while let Some(v) = q.pop_front() {
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    tree[e] = true;
                    q.push_back(w);
                }
            }
        }
    }
    (0..d0.rows()).filter(|&e| !tree[e]).collect()
}

/// A ℤ-basis of `span(basis) ∩ ℤⁿ`, where `basis` is in reduced echelon form with
/// unit pivots (so integer points have integer coordinates).
pub fn integral_points(basis: &[SparseVec]) -> Result<Vec<SparseVec>> {
    if basis.iter().all(|b| b.iter().all(|(_, x)| x.is_integer())) {
        return Ok(basis.to_vec());
    }
    // Congruence conditions: Σ c_j b_j integral. Solve via the generator lattice of
    // the fractional rows.
    let n = basis.first().map(|b| b.dim()).unwrap_or(0);
    let r = basis.len();
    let dense: Vec<Vec<Rat>> = basis.iter().map(|b| b.to_dense()).collect();
    let bad_rows: Vec<usize> = (0..n).filter(|&i| dense.iter().any(|b| !b[i].is_integer())).collect();
    // c ranges over ℤ^r with B_bad·c ∈ ℤ^bad. The lattice of such c is the dual of
    // the lattice generated by ℤ^r and the rows of B_bad.
    let mut gens: Vec<Vec<Rat>> =
        (0..r).map(|j| (0..r).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
    for &i in &bad_rows {
        gens.push(dense.iter().map(|b| b[i].clone()).collect());
    }
    let l = IntegerLattice::from_generators(r, &gens);
    let dual = l.dual_basis();
    Ok(dual
        .into_iter()
        .map(|cvec| {
            let mut acc = SparseVec::zeros(n);
            for (x, b) in cvec.iter().zip(basis) {
                if !x.is_zero() {
                    acc = acc.add_scaled(x, b);
                }
            }
            acc
        })
        .collect())
}
