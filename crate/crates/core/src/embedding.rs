//! Combinatorial embeddings between complexes, with extension by zero and restriction.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use gaugeloc_linalg::SparseVec;

use crate::cochain::Cochain;
use crate::complex::{CubicalComplex, MAX_AXES};
use crate::error::{Error, Result};
use crate::support::{Flavor, SupportSystem};

/// Where one source component lands: target component and per-axis spatial offsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentMap {
    pub target: usize,
    pub offsets: Vec<usize>,
}

impl ComponentMap {
    pub fn new(target: usize, offsets: Vec<usize>) -> ComponentMap {
        ComponentMap { target, offsets }
    }
}

#[derive(Clone, Debug)]
pub struct Embedding {
    source: Arc<CubicalComplex>,
    target: Arc<CubicalComplex>,
    map: Vec<Vec<usize>>,
    inverse: Vec<HashMap<usize, usize>>,
    frontier: Vec<Vec<bool>>,
    collar: Vec<Vec<bool>>,
    collar_margin: usize,
    time_offset: usize,
}

impl Embedding {
    /// Translation embedding: each source component is shifted by its offsets
    /// (wrapping on circle axes) and the time axis by `time_offset`.
    pub fn new(
        source: Arc<CubicalComplex>,
        target: Arc<CubicalComplex>,
        time_offset: usize,
        comps: &[ComponentMap],
        collar_margin: usize,
    ) -> Result<Embedding> {
        if source.is_spacetime() != target.is_spacetime() || source.naxes() != target.naxes() {
            return Err(Error::BadSpec("source and target have different shapes".into()));
        }
        if comps.len() != source.components().len() {
            return Err(Error::BadSpec(format!(
                "{} component maps for {} source components",
                comps.len(),
                source.components().len()
            )));
        }
        let ns = source.spatial_dim();
        for (ci, cm) in comps.iter().enumerate() {
            if cm.target >= target.components().len() {
                return Err(Error::BadSpec(format!("component {ci} maps to missing target component {}", cm.target)));
            }
            if cm.offsets.len() != ns {
                return Err(Error::BadSpec(format!("component {ci}: {} offsets for {ns} axes", cm.offsets.len())));
            }
        }
        if source.is_spacetime() && source.nt() + time_offset > target.nt() {
            return Err(Error::BadSpec("time window does not fit into the target".into()));
        }
        let mut map = Vec::with_capacity(source.m() + 1);
        for k in 0..=source.m() {
            let mut row = Vec::with_capacity(source.dim(k));
            for cell in source.cells(k) {
                let cm = &comps[cell.comp as usize];
                let mut off = [0usize; MAX_AXES];
                off[..ns].copy_from_slice(&cm.offsets);
                if source.is_spacetime() {
                    off[ns] = time_offset;
                }
                let img = target.translate(cell, cm.target, &off[..source.naxes()]).ok_or_else(|| {
                    Error::BadSpec(format!("source cell {} has no image in the target", source.show(cell)))
                })?;
                row.push(target.index_of(&img).expect("translate checks existence"));
            }
            map.push(row);
        }
        Embedding::from_map(source, target, map, time_offset, collar_margin)
    }

    pub fn identity(c: Arc<CubicalComplex>) -> Embedding {
        let map = (0..=c.m()).map(|k| (0..c.dim(k)).collect()).collect();
        Embedding::from_map(c.clone(), c, map, 0, 1).expect("identity is an embedding")
    }

    fn from_map(
        source: Arc<CubicalComplex>,
        target: Arc<CubicalComplex>,
        map: Vec<Vec<usize>>,
        time_offset: usize,
        collar_margin: usize,
    ) -> Result<Embedding> {
        if collar_margin == 0 {
            return Err(Error::BadSpec("collar margin must be at least 1".into()));
        }
        let mut inverse = Vec::with_capacity(map.len());
        for (k, row) in map.iter().enumerate() {
            let mut inv = HashMap::with_capacity(row.len());
            for (i, &j) in row.iter().enumerate() {
                if inv.insert(j, i).is_some() {
                    return Err(Error::BadSpec(format!(
                        "two source cells map to target cell {}",
                        target.show_index(k, j)
                    )));
                }
            }
            inverse.push(inv);
        }
        for k in 1..map.len() {
            for (i, cell) in source.cells(k).iter().enumerate() {
                let mut want: Vec<(usize, i64)> = source
                    .faces(cell)
                    .into_iter()
                    .map(|(f, s)| (map[k - 1][source.index_of(&f).expect("face")], s))
                    .collect();
                let mut got: Vec<(usize, i64)> = target
                    .faces(target.cell(k, map[k][i]))
                    .into_iter()
                    .map(|(f, s)| (target.index_of(&f).expect("face"), s))
                    .collect();
                want.sort();
                got.sort();
                if want != got {
                    return Err(Error::BadSpec(format!("map does not preserve the faces of {}", source.show(cell))));
                }
            }
        }
        let m = source.m();
        let mut frontier = Vec::with_capacity(m + 1);
        for k in 0..=m {
            if k == m {
                frontier.push(vec![false; source.dim(k)]);
                continue;
            }
            let cof = target.d(k).transpose();
            frontier.push(
                map[k].iter().map(|&j| cof.row(j).iter().any(|(r, _)| !inverse[k + 1].contains_key(&r))).collect(),
            );
        }
        let collar = if collar_margin == 1 {
            frontier.clone()
        } else {
            let mut verts: HashSet<(usize, [u16; MAX_AXES])> = HashSet::new();
            for (k, fr) in frontier.iter().enumerate() {
                for (i, &f) in fr.iter().enumerate() {
                    if f {
                        for v in source.closure(source.cell(k, i)) {
                            if v.edges == 0 {
                                verts.insert((v.comp as usize, v.pos));
                            }
                        }
                    }
                }
            }
            (0..=m)
                .map(|k| {
                    (0..source.dim(k))
                        .map(|i| {
                            frontier[k][i]
                                || verts.iter().any(|(comp, v)| {
                                    source.vertex_gap(source.cell(k, i), *comp, v) <= collar_margin - 2
                                })
                        })
                        .collect()
                })
                .collect()
        };
        Ok(Embedding { source, target, map, inverse, frontier, collar, collar_margin, time_offset })
    }

    pub fn source(&self) -> &Arc<CubicalComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CubicalComplex> {
        &self.target
    }

    pub fn collar_margin(&self) -> usize {
        self.collar_margin
    }

    pub fn time_offset(&self) -> usize {
        self.time_offset
    }

    /// Target index of each source cell of degree `k`.
    pub fn map(&self, k: usize) -> &[usize] {
        &self.map[k]
    }

    pub fn preimage(&self, k: usize, target_index: usize) -> Option<usize> {
        self.inverse[k].get(&target_index).copied()
    }

    /// Source cells whose image has a target coface outside the image.
    pub fn frontier(&self, k: usize) -> &[bool] {
        &self.frontier[k]
    }

    pub fn collar(&self, k: usize) -> &[bool] {
        &self.collar[k]
    }

    pub fn is_identity_shaped(&self) -> bool {
        self.source.id() == self.target.id() && self.map.iter().all(|row| row.iter().enumerate().all(|(i, &j)| i == j))
    }

    /// Extension by zero of `ω`, which must satisfy `s` and vanish on the collar.
    pub fn pushforward(&self, w: &Cochain, s: SupportSystem) -> Result<Cochain> {
        w.require_support(&self.source, s, Flavor::D)?;
        self.extend_by_zero(w)
    }

    /// Extension by zero with only the collar checked.
    pub fn extend_by_zero(&self, w: &Cochain) -> Result<Cochain> {
        if w.complex_id() != self.source.id() {
            return Err(Error::ComplexMismatch);
        }
        let k = w.degree();
        for (i, _) in w.values().iter() {
            if self.collar[k][i] {
                return Err(Error::SupportLeak { cell: self.source.show_index(k, i) });
            }
        }
        Cochain::new(&self.target, k, self.push_values(k, w.values()))
    }

    pub(crate) fn push_values(&self, k: usize, v: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(self.target.dim(k), v.iter().map(|(i, x)| (self.map[k][i], x.clone())))
    }

    /// Restriction to the image, reindexed to the source.
    pub fn pullback(&self, w: &Cochain) -> Result<Cochain> {
        if w.complex_id() != self.target.id() {
            return Err(Error::ComplexMismatch);
        }
        let k = w.degree();
        Cochain::new(&self.source, k, self.pull_values(k, w.values()))
    }

    pub(crate) fn pull_values(&self, k: usize, v: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(
            self.source.dim(k),
            v.iter().filter_map(|(j, x)| self.preimage(k, j).map(|i| (i, x.clone()))),
        )
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Embedding) -> Result<Embedding> {
        if self.target.id() != other.source.id() {
            return Err(Error::ComplexMismatch);
        }
        let map = self.map.iter().enumerate().map(|(k, row)| row.iter().map(|&j| other.map[k][j]).collect()).collect();
        Embedding::from_map(
            self.source.clone(),
            other.target.clone(),
            map,
            self.time_offset + other.time_offset,
            self.collar_margin.max(other.collar_margin),
        )
    }

    /// True when every axis spacing agrees between source and image.
    pub fn spacings_match(&self) -> bool {
        let nt_ok = match (self.source.time_axis(), self.target.time_axis()) {
            (Some(a), Some(b)) => a.spacing == b.spacing,
            (None, None) => true,
            _ => false,
        };
        nt_ok
            && (0..self.source.dim(0)).all(|i| {
                let j = self.map[0][i];
                self.source.weights(0)[i] == self.target.weights(0)[j]
            })
            && (0..self.source.dim(1)).all(|i| self.source.weights(1)[i] == self.target.weights(1)[self.map[1][i]])
    }
}
