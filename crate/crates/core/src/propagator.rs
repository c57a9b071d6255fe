//! Retarded and advanced Green operators of `□ = δd + dδ` by slice recursion.

use std::collections::BTreeMap;
use std::sync::Arc;

use gaugeloc_linalg::{kernel_vectors, rank, Rat, RationalMatrix, SparseVec, SpanSolver, Subspace};
use rayon::prelude::*;

use crate::cochain::Cochain;
use crate::complex::{Cell, CubicalComplex};
use crate::error::{Error, Result};

/// Width of the time collar, in vertex steps, that sources must avoid.
pub const DEFAULT_MARGIN: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Retarded,
    Advanced,
}

#[derive(Clone, Debug)]
enum Block {
    Diagonal(Vec<Rat>),
    General(SpanSolver),
}

impl Block {
    fn build(m: &RationalMatrix) -> Option<Block> {
        let n = m.rows();
        let diag = (0..n).all(|i| m.row(i).iter().all(|(j, _)| j == i));
        if diag {
            let d: Vec<Rat> = (0..n).map(|i| m.row(i).get(i)).collect();
            return d.iter().all(|x| !x.is_zero()).then_some(Block::Diagonal(d));
        }
        let solver = SpanSolver::new(n, m.columns());
        (solver.rank() == n).then_some(Block::General(solver))
    }

    fn solve(&self, rhs: &[Rat]) -> Vec<Rat> {
        match self {
            Block::Diagonal(d) => rhs.iter().zip(d).map(|(r, x)| r / x).collect(),
            Block::General(s) => {
                s.solve(&SparseVec::from_dense(rhs)).expect("block is invertible").to_dense()
            }
        }
    }
}

/// One family of cells (those along time, or those at a time vertex), laid out by slice.
#[derive(Clone, Debug)]
struct Family {
    /// Global cell index for `(slice, spatial slot)`.
    cells: Vec<Vec<usize>>,
    /// Slices at each end lying inside the collar.
    margin: usize,
    forward: Vec<Block>,
    backward: Vec<Block>,
}

impl Family {
    fn last(&self) -> usize {
        self.cells.len() - 1
    }
}

/// `□` in degree `k` with its slice structure and coupling blocks.
#[derive(Clone, Debug)]
pub struct DAlembertOperator {
    complex: Arc<CubicalComplex>,
    degree: usize,
    matrix: RationalMatrix,
    families: Vec<Family>,
    /// For each cell, its family, slice and slot.
    place: Vec<(usize, usize, usize)>,
    margin: usize,
}

pub fn box_matrix(c: &CubicalComplex, k: usize) -> RationalMatrix {
    let n = c.dim(k);
    let mut b = RationalMatrix::zeros(n, n);
    if k < c.m() {
        b = b.add(&c.delta(k + 1).mul(c.d(k)));
    }
    if k > 0 {
        b = b.add(&c.d(k - 1).mul(c.delta(k)));
    }
    b
}

pub fn build_dalembert(c: Arc<CubicalComplex>, k: usize) -> Result<DAlembertOperator> {
    build_dalembert_with_margin(c, k, DEFAULT_MARGIN)
}

pub fn build_dalembert_with_margin(c: Arc<CubicalComplex>, k: usize, margin: usize) -> Result<DAlembertOperator> {
    if k > c.m() {
        return Err(Error::DegreeMismatch(format!("degree {k} exceeds dimension {}", c.m())));
    }
    if margin == 0 {
        return Err(Error::Invalid("time margin must be at least 1".into()));
    }
    let ta = c.time_index().ok_or_else(|| Error::Invalid("the d'Alembertian needs a time axis".into()))?;
    let matrix = box_matrix(&c, k);
    let nt = c.nt();

    // Group by family, then by spatial part; every spatial part appears in every slice.
    let mut slots: [BTreeMap<Cell, usize>; 2] = [BTreeMap::new(), BTreeMap::new()];
    let mut place = Vec::with_capacity(c.dim(k));
    for cell in c.cells(k) {
        let fam = usize::from(cell.is_edge(ta));
        let sp = c.spatial_part(cell);
        let n = slots[fam].len();
        let slot = *slots[fam].entry(sp).or_insert(n);
        place.push((fam, cell.pos[ta] as usize, slot));
    }
    let mut families = Vec::new();
    let mut fam_index = [usize::MAX; 2];
    for fam in 0..2 {
        if slots[fam].is_empty() {
            continue;
        }
        let len = if fam == 1 { nt } else { nt + 1 };
        fam_index[fam] = families.len();
        // A cell is in the collar when its whole time range is.
        let fm = if fam == 1 { margin.saturating_sub(1) } else { margin };
        families.push(Family {
            cells: vec![vec![usize::MAX; slots[fam].len()]; len],
            margin: fm,
            forward: vec![],
            backward: vec![],
        });
    }
    for (i, p) in place.iter_mut().enumerate() {
        p.0 = fam_index[p.0];
        families[p.0].cells[p.1][p.2] = i;
    }

    for i in 0..matrix.rows() {
        let (fi, ti, _) = place[i];
        for (j, _) in matrix.row(i).iter() {
            let (fj, tj, _) = place[j];
            if fi != fj {
                return Err(Error::Unsupported(format!(
                    "□ couples {} to {}, which lie in different time families",
                    c.show_index(k, i),
                    c.show_index(k, j)
                )));
            }
            if ti.abs_diff(tj) > 1 {
                return Err(Error::Unsupported(format!("□ couples slices {ti} and {tj}")));
            }
        }
    }
    for fam in families.iter_mut() {
        let last = fam.last();
        for t in 0..last {
            let blk = matrix.select_rows(&fam.cells[t]).select_cols(&fam.cells[t + 1]);
            fam.forward.push(
                Block::build(&blk)
                    .ok_or_else(|| Error::NonHyperbolic { slice: t, block: format!("forward {t}→{}", t + 1) })?,
            );
        }
        for t in 1..=last {
            let blk = matrix.select_rows(&fam.cells[t]).select_cols(&fam.cells[t - 1]);
            fam.backward.push(
                Block::build(&blk)
                    .ok_or_else(|| Error::NonHyperbolic { slice: t, block: format!("backward {t}→{}", t - 1) })?,
            );
        }
    }
    Ok(DAlembertOperator { complex: c, degree: k, matrix, families, place, margin })
}

impl DAlembertOperator {
    pub fn complex(&self) -> &Arc<CubicalComplex> {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    /// Slice of cell `i` within its family and the index of that family's last slice.
    pub fn slice(&self, i: usize) -> (usize, usize) {
        let (f, t, _) = self.place[i];
        (t, self.families[f].last())
    }

    pub fn apply(&self, w: &Cochain) -> Result<Cochain> {
        self.check(w)?;
        Cochain::new(&self.complex, self.degree, self.matrix.mul_vec(w.values()))
    }

    fn check(&self, w: &Cochain) -> Result<()> {
        if w.complex_id() != self.complex.id() {
            return Err(Error::ComplexMismatch);
        }
        if w.degree() != self.degree {
            return Err(Error::DegreeMismatch(format!("operator has degree {}, cochain {}", self.degree, w.degree())));
        }
        Ok(())
    }

    /// Forward (backward) substitution with zero data on the first (last) slice.
    /// Uses the equations of every slice except the last (first).
    pub fn solve_raw(&self, f: &SparseVec, dir: Direction) -> SparseVec {
        let n = self.complex.dim(self.degree);
        let mut u = vec![Rat::zero(); n];
        let fd = f.to_dense();
        for fam in &self.families {
            let last = fam.last();
            for step in 0..last {
                // Equations at slice `t` determine slice `next`.
                let (t, next) = match dir {
                    Direction::Retarded => (step, step + 1),
                    Direction::Advanced => (last - step, last - step - 1),
                };
                let rows = &fam.cells[t];
                let rhs: Vec<Rat> = rows
                    .iter()
                    .map(|&i| {
                        let mut r = fd[i].clone();
                        for (j, a) in self.matrix.row(i).iter() {
                            if self.place[j].1 != next && !u[j].is_zero() {
                                r -= a * &u[j];
                            }
                        }
                        r
                    })
                    .collect();
                let blk = match dir {
                    Direction::Retarded => &fam.forward[t],
                    Direction::Advanced => &fam.backward[t - 1],
                };
                for (&j, x) in fam.cells[next].iter().zip(blk.solve(&rhs)) {
                    u[j] = x;
                }
            }
        }
        SparseVec::from_dense(&u)
    }

    /// Causal propagator without margin or shadow checks.
    pub fn causal_raw(&self, f: &SparseVec) -> SparseVec {
        self.solve_raw(f, Direction::Retarded).sub(&self.solve_raw(f, Direction::Advanced))
    }

    fn check_margin(&self, f: &Cochain, ret: bool, adv: bool) -> Result<()> {
        for (i, _) in f.values().iter() {
            let (t, last) = self.slice(i);
            let m = self.family_margin(i);
            if (ret && t < m) || (adv && t + m > last) {
                return Err(Error::MarginViolation { cell: self.complex.show_index(self.degree, i) });
            }
        }
        Ok(())
    }

    fn check_shadow(&self, u: &SparseVec) -> Result<()> {
        if !self.complex.has_spatial_boundary() {
            return Ok(());
        }
        for (i, _) in u.iter() {
            if self.complex.touches_sb(self.degree, i) {
                return Err(Error::ShadowOverflow { cell: self.complex.show_index(self.degree, i) });
            }
        }
        Ok(())
    }

    pub fn retarded(&self, f: &Cochain) -> Result<Cochain> {
        self.green(f, Direction::Retarded)
    }

    pub fn advanced(&self, f: &Cochain) -> Result<Cochain> {
        self.green(f, Direction::Advanced)
    }

    fn green(&self, f: &Cochain, dir: Direction) -> Result<Cochain> {
        self.check(f)?;
        self.check_margin(f, dir == Direction::Retarded, dir == Direction::Advanced)?;
        let u = self.solve_raw(f.values(), dir);
        self.check_shadow(&u)?;
        Cochain::new(&self.complex, self.degree, u)
    }

    /// `G = G⁺ − G⁻`; the source must clear the margin at both ends.
    pub fn causal_propagator(&self, f: &Cochain) -> Result<Cochain> {
        self.check(f)?;
        self.check_margin(f, true, true)?;
        let ret = self.solve_raw(f.values(), Direction::Retarded);
        self.check_shadow(&ret)?;
        let adv = self.solve_raw(f.values(), Direction::Advanced);
        self.check_shadow(&adv)?;
        Cochain::new(&self.complex, self.degree, ret.sub(&adv))
    }

    /// `G` applied to many sources, with the same checks as a single application.
    pub fn causal_many(&self, sources: &[SparseVec]) -> Result<Vec<SparseVec>> {
        sources
            .par_iter()
            .map(|f| {
                let w = Cochain::new(&self.complex, self.degree, f.clone())?;
                self.causal_propagator(&w).map(Cochain::into_values)
            })
            .collect()
    }

    /// Collar slices at each end for the family of cell `i`.
    pub fn family_margin(&self, i: usize) -> usize {
        self.families[self.place[i].0].margin
    }

    /// Cells at least `extra` slices clear of the collar at both ends.
    pub fn window_cells(&self, extra: usize) -> Vec<usize> {
        (0..self.place.len()).filter(|&i| self.clear_of_collar(i, extra)).collect()
    }

    fn clear_of_collar(&self, i: usize, extra: usize) -> bool {
        let (t, last) = self.slice(i);
        let m = self.family_margin(i) + extra;
        t >= m && t + m <= last
    }

    /// Cells every source in `support` can influence under forward (backward)
    /// substitution: the dependency closure of the recursion.
    pub fn cone(&self, support: &[usize], dir: Direction) -> Vec<bool> {
        let n = self.place.len();
        let mut src = vec![false; n];
        for &i in support {
            src[i] = true;
        }
        let mut reach = vec![false; n];
        for fam in &self.families {
            let last = fam.last();
            for step in 0..last {
                let (t, next) = match dir {
                    Direction::Retarded => (step, step + 1),
                    Direction::Advanced => (last - step, last - step - 1),
                };
                let live: Vec<bool> = fam.cells[t]
                    .iter()
                    .map(|&i| src[i] || self.matrix.row(i).iter().any(|(j, _)| self.place[j].1 != next && reach[j]))
                    .collect();
                // The slice solve mixes the live equations through the block.
                let blk = match dir {
                    Direction::Retarded => &fam.forward[t],
                    Direction::Advanced => &fam.backward[t - 1],
                };
                match blk {
                    Block::Diagonal(_) => {
                        for (slot, &l) in live.iter().enumerate() {
                            if l {
                                reach[fam.cells[next][slot]] = true;
                            }
                        }
                    }
                    Block::General(_) => {
                        if live.iter().any(|&l| l) {
                            for &j in &fam.cells[next] {
                                reach[j] = true;
                            }
                        }
                    }
                }
            }
        }
        reach
    }
}

/// Dimensions behind the exactness of `0 → C_c → C_c → C_sc → C_sc → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequenceReport {
    /// Sources clear of the collar at both ends.
    pub sources: usize,
    /// Cochains one slice further from the collar, whose `□` is a valid source.
    pub inner: usize,
    /// `dim ker □` on the inner cochains.
    pub box_kernel: usize,
    pub box_image: usize,
    pub g_kernel: usize,
    /// `□(inner) ⊆ ker G`.
    pub image_in_kernel: bool,
    pub g_rank: usize,
    /// `dim ker □` on all cochains, using every equation except the first and last slice.
    pub solutions: usize,
    /// Every solution in a basis is reproduced as `G` of its cut-off source.
    pub cutoff_reproduces: bool,
}

impl ExactSequenceReport {
    pub fn exact(&self) -> bool {
        self.box_kernel == 0
            && self.g_kernel == self.box_image
            && self.image_in_kernel
            && self.g_rank == self.solutions
            && self.cutoff_reproduces
    }
}

pub fn verify_exact_sequence(op: &DAlembertOperator) -> Result<ExactSequenceReport> {
    let n = op.complex.dim(op.degree);
    let src = op.window_cells(0);
    let inner = op.window_cells(1);
    let b = &op.matrix;
    let box_kernel = inner.len() - rank(&b.select_cols(&inner));
    let image: Vec<SparseVec> = inner.iter().map(|&j| b.column(j)).collect();
    let box_image = Subspace::from_vectors(n, image.clone()).dim();
    let g_cols: Vec<SparseVec> = src.par_iter().map(|&i| op.causal_raw(&SparseVec::unit(n, i))).collect();
    let g_rank = rank(&RationalMatrix::from_columns(n, &g_cols));
    let g_kernel = src.len() - g_rank;
    let image_in_kernel = image.par_iter().all(|f| op.causal_raw(f).is_zero());
    let interior: Vec<usize> = (0..n)
        .filter(|&i| {
            let (t, last) = op.slice(i);
            t >= 1 && t < last
        })
        .collect();
    let sols = kernel_vectors(&b.select_rows(&interior));
    let solutions = sols.len();
    let cutoff_reproduces =
        sols.par_iter().all(|u| op.cutoff_source(u).is_some_and(|f| op.causal_raw(&f) == *u));
    Ok(ExactSequenceReport {
        sources: src.len(),
        box_kernel,
        inner: inner.len(),
        box_image,
        g_kernel,
        image_in_kernel,
        g_rank,
        solutions,
        cutoff_reproduces,
    })
}

impl DAlembertOperator {
    /// For a solution `u` of the interior equations, `□(χu)` with the last slice
    /// dropped, where `χ` keeps the slices after the collar plus one. `None` when
    /// the window is too short for that source to clear the collar.
    pub fn cutoff_source(&self, u: &SparseVec) -> Option<SparseVec> {
        let chi = u.filter(|i| self.slice(i).0 > self.family_margin(i));
        let f = self.matrix.mul_vec(&chi).filter(|i| {
            let (t, last) = self.slice(i);
            t < last
        });
        let ok = f.iter().all(|(i, _)| self.clear_of_collar(i, 0));
        ok.then_some(f)
    }
}
