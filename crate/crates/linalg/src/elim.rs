//! Gaussian elimination: echelon forms, RREF, kernels, subspaces and quotients.

use std::collections::BTreeMap;

use crate::error::LinalgError;
use crate::rat::Rat;
use crate::sparse::{RationalMatrix, SparseVec};

const NO_ROW: usize = usize::MAX;

/// Row-echelon basis of a span. Every stored row has leading entry one and the
/// leading columns are distinct.
///
/// When built with tracking, each row also remembers how it was assembled from the
/// generators pushed so far, which is what makes [`Echelon::reduce_tracked`] useful
/// for solving linear systems.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    leads: Vec<usize>,
    row_of: Vec<usize>,
    combos: Option<Vec<SparseVec>>,
    ngen: usize,
    pushed: usize,
}

struct Pending {
    orig: usize,
    row: SparseVec,
    combo: Option<SparseVec>,
}

impl Echelon {
    pub fn new(dim: usize) -> Echelon {
        Echelon {
            dim,
            rows: Vec::new(),
            leads: Vec::new(),
            row_of: vec![NO_ROW; dim],
            combos: None,
            ngen: 0,
            pushed: 0,
        }
    }

    /// An echelon that records generator combinations for up to `ngen` pushes.
    pub fn tracked(dim: usize, ngen: usize) -> Echelon {
        Echelon { combos: Some(Vec::new()), ngen, ..Echelon::new(dim) }
    }

    /// Batch elimination. Columns are processed left to right; within a column the
    /// pivot is the row whose entry has the smallest bit length, ties going to the
    /// lowest row index.
    pub fn from_rows(dim: usize, rows: Vec<SparseVec>, track: bool) -> Echelon {
        let ngen = rows.len();
        let mut buckets: BTreeMap<usize, Vec<Pending>> = BTreeMap::new();
        for (orig, row) in rows.into_iter().enumerate() {
            assert_eq!(row.dim(), dim, "row dimension mismatch");
            if let Some((c, _)) = row.lead() {
                let combo = track.then(|| SparseVec::unit(ngen, orig));
                buckets.entry(c).or_default().push(Pending { orig, row, combo });
            }
        }
        let mut e = if track { Echelon::tracked(dim, ngen) } else { Echelon::new(dim) };
        e.pushed = ngen;
        while let Some((col, mut list)) = buckets.pop_first() {
            let best = list
                .iter()
                .enumerate()
                .min_by_key(|(_, p)| (p.row.lead().map(|(_, v)| v.bits()).unwrap_or(0), p.orig))
                .map(|(i, _)| i)
                .expect("non-empty bucket");
            let piv = list.swap_remove(best);
            let inv = piv.row.lead().expect("pivot row is nonzero").1.recip();
            let prow = piv.row.scale(&inv);
            let pcombo = piv.combo.map(|c| c.scale(&inv));
            for other in list {
                let f = -other.row.lead().expect("pending row is nonzero").1.clone();
                let row = other.row.add_scaled(&f, &prow);
                if let Some((c, _)) = row.lead() {
                    debug_assert!(c > col);
                    let combo = other.combo.map(|oc| oc.add_scaled(&f, pcombo.as_ref().expect("tracked")));
                    buckets.entry(c).or_default().push(Pending { orig: other.orig, row, combo });
                }
            }
            e.push_row(col, prow, pcombo);
        }
        e
    }

    fn push_row(&mut self, col: usize, row: SparseVec, combo: Option<SparseVec>) {
        debug_assert!(self.row_of[col] == NO_ROW);
        self.row_of[col] = self.rows.len();
        self.rows.push(row);
        self.leads.push(col);
        if let Some(cs) = self.combos.as_mut() {
            cs.push(combo.expect("tracked echelon needs combinations"));
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Leading column of each row, in row order.
    pub fn pivots(&self) -> &[usize] {
        &self.leads
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of[col] != NO_ROW
    }

    /// Adds a vector to the span. Returns true if it was independent of the rows
    /// already present.
    pub fn push(&mut self, v: SparseVec) -> bool {
        assert_eq!(v.dim(), self.dim, "vector dimension mismatch");
        let gen = self.pushed;
        self.pushed += 1;
        let mut combo = self.combos.as_ref().map(|_| {
            assert!(gen < self.ngen, "more pushes than declared generators");
            SparseVec::unit(self.ngen, gen)
        });
        let mut v = v;
        while let Some((c, x)) = v.lead() {
            let r = self.row_of[c];
            if r == NO_ROW {
                let inv = x.recip();
                let row = v.scale(&inv);
                let combo = combo.map(|cb| cb.scale(&inv));
                self.push_row(c, row, combo);
                return true;
            }
            let f = -x.clone();
            if let (Some(cb), Some(cs)) = (combo.as_mut(), self.combos.as_ref()) {
                *cb = cb.add_scaled(&f, &cs[r]);
            }
            v = v.add_scaled(&f, &self.rows[r]);
        }
        false
    }

    /// True if `v` lies in the span.
    pub fn contains(&self, v: &SparseVec) -> bool {
        assert_eq!(v.dim(), self.dim, "vector dimension mismatch");
        let mut v = v.clone();
        while let Some((c, x)) = v.lead() {
            let r = self.row_of[c];
            if r == NO_ROW {
                return false;
            }
            let f = -x.clone();
            v = v.add_scaled(&f, &self.rows[r]);
        }
        true
    }

    /// Fully reduces `v`: the result has no entry in any pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_inner(v, false).0
    }

    /// Reduces `v` and reports the generator combination removed, so that
    /// `v = remainder + Σ coeffs[i]·generator[i]`.
    pub fn reduce_tracked(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        assert!(self.combos.is_some(), "echelon was built without tracking");
        let (rem, c) = self.reduce_inner(v, true);
        (rem, c.expect("tracked"))
    }

    fn reduce_inner(&self, v: &SparseVec, track: bool) -> (SparseVec, Option<SparseVec>) {
        assert_eq!(v.dim(), self.dim, "vector dimension mismatch");
        let mut v = v.clone();
        let mut coeffs = track.then(|| SparseVec::zeros(self.ngen));
        let mut cursor = 0usize;
        loop {
            let next = v.iter().find(|(c, _)| *c >= cursor && self.row_of[*c] != NO_ROW).map(|(c, x)| (c, x.clone()));
            let Some((c, x)) = next else { break };
            let r = self.row_of[c];
            v = v.add_scaled(&-x.clone(), &self.rows[r]);
            if let (Some(cf), Some(cs)) = (coeffs.as_mut(), self.combos.as_ref()) {
                *cf = cf.add_scaled(&x, &cs[r]);
            }
            cursor = c + 1;
        }
        (v, coeffs)
    }

    /// Back-substitutes so that every pivot column is zero outside its own row,
    /// and orders rows by leading column.
    pub fn into_reduced(self) -> Echelon {
        let Echelon { dim, rows, leads, combos, ngen, pushed, .. } = self;
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by_key(|&i| leads[i]);
        let mut rows_sorted: Vec<SparseVec> = Vec::with_capacity(rows.len());
        let mut combos_sorted: Option<Vec<SparseVec>> = combos.as_ref().map(|_| Vec::with_capacity(rows.len()));
        let mut rows = rows.into_iter().map(Some).collect::<Vec<_>>();
        let mut combos = combos.map(|cs| cs.into_iter().map(Some).collect::<Vec<_>>());
        for &i in &order {
            rows_sorted.push(rows[i].take().expect("row used once"));
            if let (Some(dst), Some(src)) = (combos_sorted.as_mut(), combos.as_mut()) {
                dst.push(src[i].take().expect("combo used once"));
            }
        }
        let leads_sorted: Vec<usize> = order.iter().map(|&i| leads[i]).collect();
        let mut row_of = vec![NO_ROW; dim];
        for (i, &c) in leads_sorted.iter().enumerate() {
            row_of[c] = i;
        }
        for i in (0..rows_sorted.len()).rev() {
            let hits: Vec<(usize, Rat)> = rows_sorted[i]
                .iter()
                .skip(1)
                .filter(|(c, _)| row_of[*c] != NO_ROW)
                .map(|(c, x)| (row_of[c], x.clone()))
                .collect();
            for (r, x) in hits {
                let f = -x;
                let updated = rows_sorted[i].add_scaled(&f, &rows_sorted[r]);
                rows_sorted[i] = updated;
                if let Some(cs) = combos_sorted.as_mut() {
                    let updated = cs[i].add_scaled(&f, &cs[r]);
                    cs[i] = updated;
                }
            }
        }
        Echelon { dim, rows: rows_sorted, leads: leads_sorted, row_of, combos: combos_sorted, ngen, pushed }
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: RationalMatrix,
}

/// Reduced row-echelon form. The reduced matrix has the same shape as the input,
/// with zero rows at the bottom.
pub fn rref(m: &RationalMatrix) -> Rref {
    let e = Echelon::from_rows(m.cols(), m.row_vecs().to_vec(), false).into_reduced();
    let rank = e.rank();
    let pivots = e.pivots().to_vec();
    let mut rows = e.rows;
    rows.resize(m.rows(), SparseVec::zeros(m.cols()));
    Rref { rank, pivots, reduced: RationalMatrix::from_rows(m.cols(), rows) }
}

pub fn rank(m: &RationalMatrix) -> usize {
    Echelon::from_rows(m.cols(), m.row_vecs().to_vec(), false).rank()
}

/// Null space `{v : m·v = 0}`.
pub fn kernel_basis(m: &RationalMatrix) -> Subspace {
    Subspace::from_vectors(m.cols(), kernel_vectors(m))
}

/// Raw null-space basis read off the RREF: one vector per free column, with a one
/// in that column.
pub fn kernel_vectors(m: &RationalMatrix) -> Vec<SparseVec> {
    let n = m.cols();
    let e = Echelon::from_rows(n, m.row_vecs().to_vec(), false).into_reduced();
    let mut per_free: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); n];
    for (row, &lead) in e.rows().iter().zip(e.pivots()) {
        for (j, x) in row.iter().skip(1) {
            per_free[j].push((lead, -x.clone()));
        }
    }
    let mut out = Vec::new();
    for (j, mut entries) in per_free.into_iter().enumerate() {
        if e.is_pivot(j) {
            continue;
        }
        entries.push((j, Rat::one()));
        entries.sort_by_key(|p| p.0);
        out.push(SparseVec::from_sorted(n, entries));
    }
    out
}

/// Column space of `m` as a subspace of its row-index space.
pub fn column_space(m: &RationalMatrix) -> Subspace {
    Subspace::from_vectors(m.rows(), m.columns())
}

/// A linear subspace of ℚⁿ held as a reduced row-echelon basis. The basis is
/// canonical, so two subspaces are equal exactly when their bases are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| SparseVec::unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors(ambient: usize, vectors: Vec<SparseVec>) -> Subspace {
        let e = Echelon::from_rows(ambient, vectors, false).into_reduced();
        Subspace { ambient, pivots: e.leads, basis: e.rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis; for a reduced basis these are just
    /// the entries of `v` at the pivot columns.
    pub fn coordinates(&self, v: &SparseVec) -> Result<Vec<Rat>, LinalgError> {
        if v.dim() != self.ambient {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient, got: v.dim() });
        }
        let coords: Vec<Rat> = self.pivots.iter().map(|&p| v.get(p)).collect();
        if self.combine(&coords) == *v {
            Ok(coords)
        } else {
            Err(LinalgError::NotInSpan)
        }
    }

    /// `Σ c_i·basis_i`.
    pub fn combine(&self, coords: &[Rat]) -> SparseVec {
        assert_eq!(coords.len(), self.basis.len(), "coordinate count mismatch");
        let mut acc = SparseVec::zeros(self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            acc = acc.add_scaled(c, b);
        }
        acc
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_ok()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::from_vectors(self.ambient, v)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|b| b.neg()));
        let m = RationalMatrix::from_columns(self.ambient, &cols);
        let p = self.dim();
        let vecs = kernel_vectors(&m)
            .into_iter()
            .map(|k| {
                let coords: Vec<Rat> = (0..p).map(|i| k.get(i)).collect();
                self.combine(&coords)
            })
            .collect();
        Subspace::from_vectors(self.ambient, vecs)
    }

    /// Echelon view of the basis, usable for incremental extension.
    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient);
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            e.push_row(p, b.clone(), None);
        }
        e
    }

    /// Matrix whose columns are the basis vectors.
    pub fn to_column_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(self.ambient, &self.basis)
    }
}

/// Coordinates on a quotient `big/sub` with respect to a fixed set of complement
/// representatives.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    sub_dim: usize,
    complement: Vec<SparseVec>,
    solver: Echelon,
}

impl QuotientMap {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn sub_dim(&self) -> usize {
        self.sub_dim
    }

    /// Representatives of the quotient basis classes.
    pub fn complement(&self) -> &[SparseVec] {
        &self.complement
    }

    /// Class coordinates of a vector of the larger space.
    pub fn coords(&self, v: &SparseVec) -> Result<Vec<Rat>, LinalgError> {
        let (rem, c) = self.solver.reduce_tracked(v);
        if !rem.is_zero() {
            return Err(LinalgError::NotInSpan);
        }
        Ok((0..self.complement.len()).map(|j| c.get(self.sub_dim + j)).collect())
    }
}

/// Builds coordinates on `big/sub`. The complement representatives are the basis
/// vectors of `big` that are independent modulo `sub` and the earlier ones.
pub fn quotient_coordinates(sub: &Subspace, big: &Subspace) -> Result<QuotientMap, LinalgError> {
    quotient_from_spanning(sub, big.basis())
}

/// Like [`quotient_coordinates`], with the larger space given by spanning vectors,
/// which are preferred in order as complement representatives.
pub fn quotient_from_spanning(sub: &Subspace, big: &[SparseVec]) -> Result<QuotientMap, LinalgError> {
    let n = sub.ambient_dim();
    let mut probe = sub.echelon();
    let mut complement = Vec::new();
    for b in big {
        if b.dim() != n {
            return Err(LinalgError::DimensionMismatch { expected: n, got: b.dim() });
        }
        if probe.push(b.clone()) {
            complement.push(b.clone());
        }
    }
    let mut big_e = Echelon::new(n);
    for b in big {
        big_e.push(b.clone());
    }
    for (i, s) in sub.basis().iter().enumerate() {
        if !big_e.contains(s) {
            return Err(LinalgError::NotASubspace { index: i });
        }
    }
    let mut solver = Echelon::tracked(n, sub.dim() + complement.len());
    for s in sub.basis() {
        solver.push(s.clone());
    }
    for c in &complement {
        solver.push(c.clone());
    }
    Ok(QuotientMap { sub_dim: sub.dim(), complement, solver })
}

/// Solves `a·x = b`, returning one solution.
pub fn solve(a: &RationalMatrix, b: &SparseVec) -> Result<SparseVec, LinalgError> {
    SpanSolver::new(a.rows(), a.columns()).solve(b).ok_or(LinalgError::NotInSpan)
}

/// Expresses vectors as combinations of a fixed generator list.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    ngen: usize,
    ech: Echelon,
}

impl SpanSolver {
    pub fn new(dim: usize, generators: Vec<SparseVec>) -> SpanSolver {
        let ngen = generators.len();
        SpanSolver { ngen, ech: Echelon::from_rows(dim, generators, true) }
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn generators(&self) -> usize {
        self.ngen
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.ech.contains(v)
    }

    /// Coefficients `x` with `Σ x_i·g_i = v`, or `None` outside the span.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let (rem, c) = self.ech.reduce_tracked(v);
        rem.is_zero().then_some(c)
    }
}
