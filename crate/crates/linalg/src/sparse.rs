//! Sparse vectors and row-major sparse matrices over [`Rat`].

use std::collections::BTreeMap;

use crate::error::LinalgError;
use crate::rat::Rat;

/// A sparse vector: sorted `(index, value)` pairs with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, Rat)>,
}

impl SparseVec {
    pub fn zeros(dim: usize) -> SparseVec {
        SparseVec { dim, entries: Vec::new() }
    }

    pub fn unit(dim: usize, i: usize) -> SparseVec {
        assert!(i < dim);
        SparseVec { dim, entries: vec![(i, Rat::one())] }
    }

    /// Builds from arbitrary pairs; duplicate indices are summed, zeros dropped.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Rat)>>(dim: usize, pairs: I) -> SparseVec {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (i, v) in pairs {
            assert!(i < dim, "index {i} out of range {dim}");
            if v.is_zero() {
                continue;
            }
            let slot = acc.entry(i).or_default();
            *slot += v;
        }
        SparseVec { dim, entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    /// Builds from pairs already sorted by strictly increasing index.
    pub fn from_sorted(dim: usize, entries: Vec<(usize, Rat)>) -> SparseVec {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(i, v)| *i < dim && !v.is_zero()));
        SparseVec { dim, entries }
    }

    pub fn from_dense(values: &[Rat]) -> SparseVec {
        SparseVec {
            dim: values.len(),
            entries: values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect(),
        }
    }

    pub fn from_ints(values: &[i64]) -> SparseVec {
        SparseVec::from_dense(&values.iter().map(|&v| Rat::int(v)).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Rat)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rat)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn lead(&self) -> Option<(usize, &Rat)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: usize) -> Rat {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn dot(&self, other: &SparseVec) -> Rat {
        assert_eq!(self.dim, other.dim, "dimension mismatch in dot");
        let (mut a, mut b) = (0, 0);
        let mut acc = Rat::zero();
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            match i.cmp(j) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc += x * y;
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }

    /// Weighted dot product `Σ w_i a_i b_i` with a dense weight vector.
    pub fn weighted_dot(&self, other: &SparseVec, w: &[Rat]) -> Rat {
        assert_eq!(self.dim, other.dim, "dimension mismatch in dot");
        let (mut a, mut b) = (0, 0);
        let mut acc = Rat::zero();
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            match i.cmp(j) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc += &(x * y) * &w[*i];
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zeros(self.dim);
        }
        SparseVec { dim: self.dim, entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: &Rat, other: &SparseVec) -> SparseVec {
        assert_eq!(self.dim, other.dim, "dimension mismatch in axpy");
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, c * &other.entries[b].1));
                b += 1;
            } else {
                let v = &self.entries[a].1 + &(c * &other.entries[b].1);
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { dim: self.dim, entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&Rat::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&Rat::int(-1), other)
    }

    pub fn neg(&self) -> SparseVec {
        self.scale(&Rat::int(-1))
    }

    /// Keeps only entries whose index satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> SparseVec {
        SparseVec { dim: self.dim, entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect() }
    }

    /// Re-indexes through `map` (old index → new index) into dimension `dim`.
    /// Entries mapped to `None` are dropped.
    pub fn reindex(&self, dim: usize, map: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(dim, self.entries.iter().filter_map(|(i, v)| map(*i).map(|j| (j, v.clone()))))
    }

    /// Concatenates `self` and `other` into one vector of dimension `dim_a + dim_b`.
    pub fn concat(&self, other: &SparseVec) -> SparseVec {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(i, v)| (i + self.dim, v.clone())));
        SparseVec { dim: self.dim + other.dim, entries }
    }

    /// Largest `|entry|`, zero for the zero vector.
    pub fn max_abs(&self) -> Rat {
        self.entries.iter().map(|(_, v)| v.abs()).max().unwrap_or_else(Rat::zero)
    }

    /// Divides by the leading entry so that the first nonzero becomes one.
    pub fn normalized(&self) -> SparseVec {
        match self.lead() {
            None => self.clone(),
            Some((_, l)) if l.is_one() => self.clone(),
            Some((_, l)) => self.scale(&l.recip()),
        }
    }
}

/// A sparse rational matrix stored as rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix { rows, cols, data: vec![SparseVec::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> RationalMatrix {
        RationalMatrix { rows: n, cols: n, data: (0..n).map(|i| SparseVec::unit(n, i)).collect() }
    }

    pub fn diagonal(values: &[Rat]) -> RationalMatrix {
        let n = values.len();
        RationalMatrix {
            rows: n,
            cols: n,
            data: values
                .iter()
                .enumerate()
                .map(
                    |(i, v)| {
                        if v.is_zero() {
                            SparseVec::zeros(n)
                        } else {
                            SparseVec::from_sorted(n, vec![(i, v.clone())])
                        }
                    },
                )
                .collect(),
        }
    }

    /// Builds from `(row, col, value)` triplets. Zero values are skipped; a repeated
    /// `(row, col)` key is an error.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<RationalMatrix, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, Rat)>,
    {
        let mut per_row: Vec<BTreeMap<usize, Rat>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(LinalgError::IndexOutOfRange { row: r, col: c, rows, cols });
            }
            if per_row[r].insert(c, v).is_some() {
                return Err(LinalgError::DuplicateEntry { row: r, col: c });
            }
        }
        let data = per_row
            .into_iter()
            .map(|m| SparseVec::from_sorted(cols, m.into_iter().filter(|(_, v)| !v.is_zero()).collect()))
            .collect();
        Ok(RationalMatrix { rows, cols, data })
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> RationalMatrix {
        assert!(rows.iter().all(|r| r.dim() == cols), "row dimension mismatch");
        RationalMatrix { rows: rows.len(), cols, data: rows }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> RationalMatrix {
        let mut acc: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.dim(), rows, "column dimension mismatch");
            for (i, v) in col.iter() {
                acc[i].push((j, v.clone()));
            }
        }
        let cols = columns.len();
        RationalMatrix { rows, cols, data: acc.into_iter().map(|e| SparseVec::from_sorted(cols, e)).collect() }
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> RationalMatrix {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        RationalMatrix::from_rows(cols, rows.iter().map(|r| SparseVec::from_ints(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.data[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, j, v)))
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut acc: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row.iter() {
                acc[j].push((i, v.clone()));
            }
        }
        let rows = self.rows;
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            data: acc.into_iter().map(|e| SparseVec::from_sorted(rows, e)).collect(),
        }
    }

    pub fn column(&self, j: usize) -> SparseVec {
        SparseVec::from_sorted(
            self.rows,
            self.data
                .iter()
                .enumerate()
                .filter_map(|(i, r)| {
                    let v = r.get(j);
                    if v.is_zero() {
                        None
                    } else {
                        Some((i, v))
                    }
                })
                .collect(),
        )
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(self.cols, v.dim(), "dimension mismatch in matrix-vector product");
        SparseVec::from_sorted(
            self.rows,
            self.data
                .iter()
                .enumerate()
                .filter_map(|(i, r)| {
                    let x = r.dot(v);
                    if x.is_zero() {
                        None
                    } else {
                        Some((i, x))
                    }
                })
                .collect(),
        )
    }

    /// Row vector times matrix: `vᵀ·M`.
    pub fn vec_mul(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(self.rows, v.dim(), "dimension mismatch in vector-matrix product");
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (i, c) in v.iter() {
            for (j, m) in self.data[i].iter() {
                *acc.entry(j).or_default() += c * m;
            }
        }
        SparseVec::from_sorted(self.cols, acc.into_iter().filter(|(_, x)| !x.is_zero()).collect())
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let data = self.data.iter().map(|r| other.vec_mul(r)).collect();
        RationalMatrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn add(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> RationalMatrix {
        RationalMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.scale(c)).collect() }
    }

    /// Left-multiplies by a diagonal matrix.
    pub fn scale_rows(&self, d: &[Rat]) -> RationalMatrix {
        assert_eq!(d.len(), self.rows);
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(d).map(|(r, c)| r.scale(c)).collect(),
        }
    }

    /// Right-multiplies by a diagonal matrix.
    pub fn scale_cols(&self, d: &[Rat]) -> RationalMatrix {
        assert_eq!(d.len(), self.cols);
        let data = self
            .data
            .iter()
            .map(|r| {
                SparseVec::from_sorted(
                    self.cols,
                    r.iter().map(|(j, v)| (j, v * &d[j])).filter(|(_, v)| !v.is_zero()).collect(),
                )
            })
            .collect();
        RationalMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> RationalMatrix {
        RationalMatrix { rows: idx.len(), cols: self.cols, data: idx.iter().map(|&i| self.data[i].clone()).collect() }
    }

    /// Restricts to the listed columns, renumbered in the given order.
    pub fn select_cols(&self, idx: &[usize]) -> RationalMatrix {
        let mut pos = vec![None; self.cols];
        for (k, &j) in idx.iter().enumerate() {
            pos[j] = Some(k);
        }
        let n = idx.len();
        RationalMatrix { rows: self.rows, cols: n, data: self.data.iter().map(|r| r.reindex(n, |j| pos[j])).collect() }
    }

    pub fn hstack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch in hstack");
        RationalMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.concat(b)).collect(),
        }
    }

    pub fn vstack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RationalMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        self.data.iter().map(|r| r.to_dense()).collect()
    }

    /// True when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.triplets().all(|(_, _, v)| v.is_integer())
    }
}
