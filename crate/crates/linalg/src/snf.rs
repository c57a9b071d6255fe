//! Smith normal form over the integers and integer lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::LinalgError;
use crate::rat::Rat;
use crate::sparse::{RationalMatrix, SparseVec};

/// Dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> IntMatrix {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix { rows: rows.len(), cols, data: rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// Converts a rational matrix with integer entries.
    pub fn from_rational(m: &RationalMatrix) -> Result<IntMatrix, LinalgError> {
        let mut out = IntMatrix::zeros(m.rows(), m.cols());
        for (i, j, v) in m.triplets() {
            out.data[i][j] = v.to_integer().ok_or(LinalgError::NotIntegral { row: i, col: j })?;
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    /// Product that skips zero entries on both sides.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in integer product");
        let sparse_rows: Vec<Vec<(usize, &BigInt)>> =
            other.data.iter().map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()).collect();
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &sparse_rows[k] {
                    out.data[i][j] += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in integer product");
        self.data.iter().map(|r| r.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// row[dst] -= q·row[src]
    fn row_axpy(&mut self, dst: usize, q: &BigInt, src: usize) {
        if q.is_zero() {
            return;
        }
        let (d, s) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src);
            (&mut lo[dst], &hi[0])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst);
            (&mut hi[0], &lo[src])
        };
        for (x, y) in d.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
    }

    /// col[dst] -= q·col[src]
    fn col_axpy(&mut self, dst: usize, q: &BigInt, src: usize) {
        if q.is_zero() {
            return;
        }
        for r in &mut self.data {
            if !r[src].is_zero() {
                let t = q * &r[src];
                r[dst] -= t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -std::mem::take(x);
        }
    }
}

/// `U·m·V = D` with `U`, `V` unimodular and `D` diagonal with `d_i | d_{i+1}`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries, all positive.
    pub factors: Vec<BigInt>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

/// Which transforms to accumulate.
#[derive(Clone, Copy, Debug)]
struct Track {
    u: bool,
    v: bool,
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let snf = snf_inner(m, Track { u: true, v: true });
    #[cfg(any(test, debug_assertions))]
    verify_snf(m, &snf);
    snf
}

/// Only the diagonal factors, without accumulating transforms.
pub fn smith_factors(m: &IntMatrix) -> Vec<BigInt> {
    snf_inner(m, Track { u: false, v: false }).factors
}

/// Factors and the right transform `V` (enough for integer kernels).
pub fn smith_right(m: &IntMatrix) -> (Vec<BigInt>, IntMatrix) {
    let s = snf_inner(m, Track { u: false, v: true });
    (s.factors, s.v)
}

/// Smith factors of a sparse integral matrix. Unit pivots are eliminated
/// sparsely first; whatever block remains goes through the dense algorithm.
pub fn sparse_smith_factors(m: &RationalMatrix) -> Result<Vec<BigInt>, LinalgError> {
    for (r, c, x) in m.triplets() {
        if !x.is_integer() {
            return Err(LinalgError::NotIntegral { row: r, col: c });
        }
    }
    let mut rows: Vec<Option<SparseVec>> = m.row_vecs().iter().map(|r| (!r.is_zero()).then(|| r.clone())).collect();
    let mut col_rows: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); m.cols()];
    for (i, r) in rows.iter().enumerate() {
        if let Some(r) = r {
            for (j, _) in r.iter() {
                col_rows[j].insert(i);
            }
        }
    }
    let mut ones = 0usize;
    loop {
        let mut progress = false;
        for i in 0..rows.len() {
            let Some(row) = rows[i].as_ref() else { continue };
            let Some((c, x)) = row.iter().find(|(_, x)| x.abs().is_one()).map(|(c, x)| (c, x.clone())) else {
                continue;
            };
            let prow = rows[i].take().expect("row present");
            for (j, _) in prow.iter() {
                col_rows[j].remove(&i);
            }
            let others: Vec<usize> = col_rows[c].iter().copied().collect();
            for o in others {
                let old = rows[o].take().expect("indexed row present");
                let f = -(&old.get(c) / &x);
                let new = old.add_scaled(&f, &prow);
                for (j, _) in old.iter() {
                    col_rows[j].remove(&o);
                }
                for (j, _) in new.iter() {
                    col_rows[j].insert(o);
                }
                rows[o] = (!new.is_zero()).then_some(new);
            }
            ones += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let rest: Vec<&SparseVec> = rows.iter().flatten().collect();
    let mut factors = vec![BigInt::one(); ones];
    if !rest.is_empty() {
        let cols: Vec<usize> = (0..m.cols()).filter(|&j| !col_rows[j].is_empty()).collect();
        let dense: Vec<Vec<BigInt>> =
            rest.iter().map(|r| cols.iter().map(|&j| r.get(j).to_integer().expect("integral")).collect()).collect();
        factors.extend(smith_factors(&IntMatrix::from_rows(dense)));
    }
    Ok(factors)
}

#[cfg(any(test, debug_assertions))]
fn verify_snf(m: &IntMatrix, s: &Snf) {
    let check = s.u.mul(m).mul(&s.v);
    assert_eq!(check, s.d, "Smith certificate U·m·V = D failed");
    for w in s.factors.windows(2) {
        assert!(w[1].is_multiple_of(&w[0]), "Smith divisibility chain broken");
    }
}

fn snf_inner(m: &IntMatrix, track: Track) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = if track.u { IntMatrix::identity(r) } else { IntMatrix::zeros(0, 0) };
    let mut v = if track.v { IntMatrix::identity(c) } else { IntMatrix::zeros(0, 0) };
    let mut factors = Vec::new();
    let n = r.min(c);
    for t in 0..n {
        // Smallest nonzero magnitude in the trailing block; stop early on a unit.
        let mut best: Option<(usize, usize)> = None;
        'search: for j in t..c {
            for i in t..r {
                let x = &a.data[i][j];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.magnitude() < a.data[bi][bj].magnitude(),
                };
                if better {
                    best = Some((i, j));
                    if x.magnitude().is_one() {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        move_pivot(&mut a, &mut u, &mut v, track, t, pi, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if a.data[i][t].is_zero() {
                    continue;
                }
                let q = a.data[i][t].div_floor(&a.data[t][t]);
                a.row_axpy(i, &q, t);
                if track.u {
                    u.row_axpy(i, &q, t);
                }
                dirty |= !a.data[i][t].is_zero();
            }
            for j in t + 1..c {
                if a.data[t][j].is_zero() {
                    continue;
                }
                let q = a.data[t][j].div_floor(&a.data[t][t]);
                a.col_axpy(j, &q, t);
                if track.v {
                    v.col_axpy(j, &q, t);
                }
                dirty |= !a.data[t][j].is_zero();
            }
            if dirty {
                let mut best = (t, t);
                for i in t..r {
                    let x = &a.data[i][t];
                    if !x.is_zero() && x.magnitude() < a.data[best.0][best.1].magnitude() {
                        best = (i, t);
                    }
                }
                for j in t..c {
                    let x = &a.data[t][j];
                    if !x.is_zero() && x.magnitude() < a.data[best.0][best.1].magnitude() {
                        best = (t, j);
                    }
                }
                move_pivot(&mut a, &mut u, &mut v, track, t, best.0, best.1);
                continue;
            }
            if a.data[t][t].magnitude().is_one() {
                break;
            }
            let p = a.data[t][t].clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.data[i][j].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    a.row_axpy(t, &minus_one, i);
                    if track.u {
                        u.row_axpy(t, &minus_one, i);
                    }
                }
                None => break,
            }
        }
        if a.data[t][t].is_negative() {
            a.negate_row(t);
            if track.u {
                u.negate_row(t);
            }
        }
        factors.push(a.data[t][t].clone());
    }
    Snf { u, d: a, v, factors }
}

fn move_pivot(a: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, track: Track, t: usize, i: usize, j: usize) {
    if i != t {
        a.swap_rows(i, t);
        if track.u {
            u.swap_rows(i, t);
        }
    }
    if j != t {
        a.swap_cols(j, t);
        if track.v {
            v.swap_cols(j, t);
        }
    }
}

/// Integer kernel basis `{x ∈ ℤⁿ : m·x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (factors, v) = smith_right(m);
    (factors.len()..m.cols()).map(|j| v.column(j)).collect()
}

/// A full-rank lattice `ℤ·b₁ ⊕ … ⊕ ℤ·b_r` inside ℚⁿ.
///
/// Basis vectors may be rational; internally they are scaled by a common
/// denominator to an integer matrix whose Smith form drives membership tests.
#[derive(Clone, Debug)]
pub struct IntegerLattice {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
    den: BigInt,
    snf: Snf,
}

/// Outcome of [`lattice_membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Integer coordinates in the lattice basis.
    Member(Vec<BigInt>),
    /// The (unique) rational coordinates, at least one non-integral.
    NonMember(Vec<Rat>),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

fn lcm_denominators<'a>(vals: impl Iterator<Item = &'a Rat>) -> BigInt {
    vals.fold(BigInt::one(), |acc, x| acc.lcm(&x.denom()))
}

impl IntegerLattice {
    /// Lattice generated by arbitrary rational vectors (possibly dependent).
    pub fn from_generators(ambient: usize, gens: &[Vec<Rat>]) -> IntegerLattice {
        assert!(gens.iter().all(|g| g.len() == ambient), "generator dimension mismatch");
        let den = lcm_denominators(gens.iter().flatten());
        let a = int_columns(ambient, gens, &den);
        let s = smith_normal_form(&a);
        let av = a.mul(&s.v);
        let basis: Vec<Vec<Rat>> = (0..s.rank())
            .map(|j| av.column(j).into_iter().map(|x| Rat::from_bigints(x, den.clone())).collect())
            .collect();
        IntegerLattice::from_basis(ambient, basis).expect("generator reduction yields a basis")
    }

    /// Lattice with the given independent basis.
    pub fn from_basis(ambient: usize, basis: Vec<Vec<Rat>>) -> Result<IntegerLattice, LinalgError> {
        for b in &basis {
            if b.len() != ambient {
                return Err(LinalgError::DimensionMismatch { expected: ambient, got: b.len() });
            }
        }
        let den = lcm_denominators(basis.iter().flatten());
        let a = int_columns(ambient, &basis, &den);
        let snf = smith_normal_form(&a);
        if snf.rank() != basis.len() {
            return Err(LinalgError::NotInSpan);
        }
        Ok(IntegerLattice { ambient, basis, den, snf })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    /// Smith factors of the (denominator-cleared) basis matrix.
    pub fn snf_certificate(&self) -> &[BigInt] {
        &self.snf.factors
    }

    /// `Σ x_i·b_i`.
    pub fn combine(&self, coords: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }

    /// Basis of the dual lattice `{y ∈ span : y·b ∈ ℤ for all b}` under the
    /// standard dot product, ordered so that `dualᵢ·bⱼ = δᵢⱼ`.
    pub fn dual_basis(&self) -> Vec<Vec<Rat>> {
        let r = self.rank();
        let gram = RationalMatrix::from_rows(
            r,
            (0..r)
                .map(|i| {
                    SparseVec::from_dense(
                        &(0..r)
                            .map(|j| self.basis[i].iter().zip(&self.basis[j]).map(|(a, b)| a * b).sum::<Rat>())
                            .collect::<Vec<_>>(),
                    )
                })
                .collect(),
        );
        // y_i = Σ_j (gram⁻¹)_{ij} b_j
        (0..r)
            .map(|i| {
                let e = SparseVec::unit(r, i);
                let c = crate::elim::solve(&gram, &e).expect("Gram matrix of a basis is invertible");
                self.combine(&c.to_dense())
            })
            .collect()
    }
}

fn int_columns(ambient: usize, cols: &[Vec<Rat>], den: &BigInt) -> IntMatrix {
    let mut a = IntMatrix::zeros(ambient, cols.len());
    for (j, g) in cols.iter().enumerate() {
        for (i, x) in g.iter().enumerate() {
            a.data[i][j] = (x * &Rat::from_bigint(den.clone())).to_integer().expect("denominator cleared");
        }
    }
    a
}

/// Decides `v ∈ L`. `NotInSpan` when `v` is outside the rational span of `L`.
pub fn lattice_membership(l: &IntegerLattice, v: &[Rat]) -> Result<Membership, LinalgError> {
    if v.len() != l.ambient {
        return Err(LinalgError::DimensionMismatch { expected: l.ambient, got: v.len() });
    }
    // Solve B·x = v with B = A/den: A·x = den·v. Clear the remaining denominators of v.
    let vden = lcm_denominators(v.iter());
    let w: Vec<BigInt> =
        v.iter().map(|x| (x * &Rat::from_bigint(&l.den * &vden)).to_integer().expect("denominators cleared")).collect();
    let uw = l.snf.u.mul_vec(&w);
    let r = l.rank();
    if uw.iter().skip(r).any(|x| !x.is_zero()) {
        return Err(LinalgError::NotInSpan);
    }
    let y: Vec<Rat> = (0..r).map(|i| Rat::from_bigints(uw[i].clone(), &l.snf.factors[i] * &vden)).collect();
    let x: Vec<Rat> =
        (0..r).map(|i| (0..r).map(|j| Rat::from_bigint(l.snf.v.get(i, j).clone()) * &y[j]).sum()).collect();
    if x.iter().all(|c| c.is_integer()) {
        Ok(Membership::Member(x.iter().map(|c| c.to_integer().expect("integral")).collect()))
    } else {
        Ok(Membership::NonMember(x))
    }
}
