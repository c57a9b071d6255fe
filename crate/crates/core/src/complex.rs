//! Cubical complexes: products of interval and circle axes with deleted blocks,
//! optionally times a Lorentzian time interval.
//!
//! Axis order inside a cell is spatial axes first and the time axis last.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use gaugeloc_linalg::{Rat, RationalMatrix};

use crate::error::{Error, Result};

pub const MAX_AXES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxisKind {
    Interval(usize),
    Circle(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AxisSpec {
    pub kind: AxisKind,
    pub spacing: Rat,
}

impl AxisSpec {
    pub fn interval(n: usize) -> AxisSpec {
        AxisSpec { kind: AxisKind::Interval(n), spacing: Rat::one() }
    }

    pub fn circle(n: usize) -> AxisSpec {
        AxisSpec { kind: AxisKind::Circle(n), spacing: Rat::one() }
    }

    pub fn with_spacing(mut self, h: Rat) -> AxisSpec {
        self.spacing = h;
        self
    }

    /// Number of edges.
    pub fn n_cells(&self) -> usize {
        match self.kind {
            AxisKind::Interval(n) | AxisKind::Circle(n) => n,
        }
    }

    pub fn n_vertices(&self) -> usize {
        match self.kind {
            AxisKind::Interval(n) => n + 1,
            AxisKind::Circle(n) => n,
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self.kind, AxisKind::Circle(_))
    }

    /// Upper vertex of edge `p`.
    pub fn upper(&self, p: usize) -> usize {
        match self.kind {
            AxisKind::Interval(_) => p + 1,
            AxisKind::Circle(n) => (p + 1) % n,
        }
    }

    /// Gap between two vertex-coordinate intervals along this axis.
    pub fn gap(&self, a: (usize, usize), b: (usize, usize)) -> usize {
        match self.kind {
            AxisKind::Interval(_) => {
                if b.0 > a.1 {
                    b.0 - a.1
                } else {
                    a.0.saturating_sub(b.1)
                }
            }
            AxisKind::Circle(n) => {
                // Intervals have length at most one; compare all endpoint pairs around the circle.
                let mut best = usize::MAX;
                for x in [a.0, a.1] {
                    for y in [b.0, b.1] {
                        let d = (x + n - y % n) % n;
                        best = best.min(d.min(n - d));
                    }
                }
                best
            }
        }
    }

    fn validate(&self, what: &str) -> Result<()> {
        match self.kind {
            AxisKind::Interval(0) => return Err(Error::BadSpec(format!("{what}: interval needs at least one cell"))),
            AxisKind::Circle(n) if n < 3 => {
                return Err(Error::BadSpec(format!("{what}: circle needs at least three cells, got {n}")))
            }
            _ => {}
        }
        if self.spacing.signum() <= 0 {
            return Err(Error::BadSpec(format!("{what}: spacing must be positive")));
        }
        Ok(())
    }
}

/// One connected piece of a spatial complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentSpec {
    pub axes: Vec<AxisSpec>,
    /// Deleted top cells, indexed by their per-axis edge positions.
    pub deleted: BTreeSet<Vec<usize>>,
}

impl ComponentSpec {
    pub fn new(axes: Vec<AxisSpec>) -> ComponentSpec {
        ComponentSpec { axes, deleted: BTreeSet::new() }
    }

    /// Deletes the box of top cells `lo[a] ≤ i_a < hi[a]`.
    pub fn delete_block(mut self, lo: &[usize], hi: &[usize]) -> ComponentSpec {
        assert_eq!(lo.len(), self.axes.len());
        assert_eq!(hi.len(), self.axes.len());
        let mut idx: Vec<usize> = lo.to_vec();
        if lo.iter().zip(hi).any(|(l, h)| l >= h) {
            return self;
        }
        loop {
            self.deleted.insert(idx.clone());
            let mut a = 0;
            while a < idx.len() {
                idx[a] += 1;
                if idx[a] < hi[a] {
                    break;
                }
                idx[a] = lo[a];
                a += 1;
            }
            if a == idx.len() {
                break;
            }
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpacetimeSpec {
    pub time: AxisSpec,
    pub components: Vec<ComponentSpec>,
}

impl SpacetimeSpec {
    pub fn new(time: AxisSpec, components: Vec<ComponentSpec>) -> SpacetimeSpec {
        SpacetimeSpec { time, components }
    }
}

/// A cell: per-axis position plus a bitmask of the axes along which it is an
/// edge. Positions of edges refer to their lower vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub comp: u16,
    pub pos: [u16; MAX_AXES],
    pub edges: u8,
}

impl Cell {
    pub fn degree(&self) -> usize {
        self.edges.count_ones() as usize
    }

    pub fn is_edge(&self, axis: usize) -> bool {
        self.edges & (1 << axis) != 0
    }
}

/// Cell printed as `#comp(p0,p1+,...)`, with `+` marking edge directions.
pub struct CellDisplay<'a> {
    cell: &'a Cell,
    naxes: usize,
}

impl fmt::Display for CellDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}(", self.cell.comp)?;
        for a in 0..self.naxes {
            if a > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}{}", self.cell.pos[a], if self.cell.is_edge(a) { "+" } else { "" })?;
        }
        write!(f, ")")
    }
}

/// A cubical complex, spatial or spacetime.
#[derive(Clone, Debug)]
pub struct CubicalComplex {
    time: Option<AxisSpec>,
    components: Vec<ComponentSpec>,
    axes: Vec<Vec<AxisSpec>>,
    naxes: usize,
    cells: Vec<Vec<Cell>>,
    index: Vec<HashMap<Cell, usize>>,
    tb: Vec<Vec<bool>>,
    sb: Vec<Vec<bool>>,
    sb_vertices: Vec<HashSet<[u16; MAX_AXES]>>,
    d: Vec<RationalMatrix>,
    delta: Vec<RationalMatrix>,
    weights: Vec<Vec<Rat>>,
    id: u64,
}

/// Builds a spacetime complex `time × space`.
pub fn build_complex(spec: &SpacetimeSpec) -> Result<CubicalComplex> {
    if !matches!(spec.time.kind, AxisKind::Interval(_)) {
        return Err(Error::BadSpec("the time axis must be an interval".into()));
    }
    spec.time.validate("time axis")?;
    CubicalComplex::build(Some(spec.time.clone()), spec.components.clone())
}

/// Builds a purely spatial complex.
pub fn build_spatial(components: &[ComponentSpec]) -> Result<CubicalComplex> {
    CubicalComplex::build(None, components.to_vec())
}

impl CubicalComplex {
    fn build(time: Option<AxisSpec>, components: Vec<ComponentSpec>) -> Result<CubicalComplex> {
        if components.is_empty() {
            return Err(Error::BadSpec("no spatial components".into()));
        }
        let ns = components[0].axes.len();
        if ns == 0 {
            return Err(Error::BadSpec("spatial components need at least one axis".into()));
        }
        let naxes = ns + usize::from(time.is_some());
        if naxes > MAX_AXES {
            return Err(Error::BadSpec(format!("at most {MAX_AXES} axes supported")));
        }
        for (ci, comp) in components.iter().enumerate() {
            if comp.axes.len() != ns {
                return Err(Error::BadSpec(format!("component {ci} has {} axes, expected {ns}", comp.axes.len())));
            }
            for (a, ax) in comp.axes.iter().enumerate() {
                ax.validate(&format!("component {ci} axis {a}"))?;
                if ax.n_vertices() > u16::MAX as usize {
                    return Err(Error::BadSpec(format!("component {ci} axis {a} too long")));
                }
            }
            for t in &comp.deleted {
                if t.len() != ns || t.iter().zip(&comp.axes).any(|(i, ax)| *i >= ax.n_cells()) {
                    return Err(Error::BadSpec(format!("component {ci}: deleted cell {t:?} out of range")));
                }
            }
            check_connected(ci, comp)?;
        }
        let axes: Vec<Vec<AxisSpec>> = components
            .iter()
            .map(|c| {
                let mut a = c.axes.clone();
                if let Some(t) = &time {
                    a.push(t.clone());
                }
                a
            })
            .collect();
        let m = naxes;

        let mut by_degree: Vec<Vec<Cell>> = vec![Vec::new(); m + 1];
        let mut sb_cells: HashSet<Cell> = HashSet::new();
        let mut sb_vertices = Vec::new();
        for (ci, comp) in components.iter().enumerate() {
            let (surv, hole) = spatial_cells(ci as u16, comp);
            let mut verts = HashSet::new();
            let spatial_sb: HashSet<Cell> =
                surv.iter()
                    .filter(|c| {
                        hole.contains(*c) || comp.axes.iter().enumerate().any(|(a, ax)| {
                            !c.is_edge(a)
                                && matches!(ax.kind, AxisKind::Interval(n) if c.pos[a] == 0 || c.pos[a] as usize == n)
                        })
                    })
                    .copied()
                    .collect();
            for c in &spatial_sb {
                if c.edges == 0 {
                    verts.insert(c.pos);
                }
            }
            sb_vertices.push(verts);
            match &time {
                None => {
                    for c in &surv {
                        by_degree[c.degree()].push(*c);
                    }
                    sb_cells.extend(spatial_sb.iter().copied());
                }
                Some(t) => {
                    let ta = ns;
                    for c in &surv {
                        let in_sb = spatial_sb.contains(c);
                        for tp in 0..t.n_vertices() {
                            let mut v = *c;
                            v.pos[ta] = tp as u16;
                            by_degree[v.degree()].push(v);
                            if in_sb {
                                sb_cells.insert(v);
                            }
                        }
                        for tp in 0..t.n_cells() {
                            let mut e = *c;
                            e.pos[ta] = tp as u16;
                            e.edges |= 1 << ta;
                            by_degree[e.degree()].push(e);
                            if in_sb {
                                sb_cells.insert(e);
                            }
                        }
                    }
                }
            }
        }
        for cells in &mut by_degree {
            cells.sort();
        }
        let index: Vec<HashMap<Cell, usize>> =
            by_degree.iter().map(|cs| cs.iter().enumerate().map(|(i, c)| (*c, i)).collect()).collect();
        let tb: Vec<Vec<bool>> = by_degree
            .iter()
            .map(|cs| {
                cs.iter()
                    .map(|c| match &time {
                        Some(t) => !c.is_edge(ns) && (c.pos[ns] == 0 || c.pos[ns] as usize == t.n_cells()),
                        None => false,
                    })
                    .collect()
            })
            .collect();
        let sb: Vec<Vec<bool>> = by_degree.iter().map(|cs| cs.iter().map(|c| sb_cells.contains(c)).collect()).collect();

        let mut d = Vec::with_capacity(m);
        for k in 0..m {
            let mut trip = Vec::new();
            for (row, c) in by_degree[k + 1].iter().enumerate() {
                for (face, sign) in boundary(c, &axes[c.comp as usize], naxes) {
                    let col = index[k][&face];
                    trip.push((row, col, Rat::int(sign)));
                }
            }
            d.push(
                RationalMatrix::from_triplets(by_degree[k + 1].len(), by_degree[k].len(), trip)
                    .expect("distinct faces"),
            );
        }
        let weights: Vec<Vec<Rat>> = by_degree
            .iter()
            .map(|cs| {
                cs.iter()
                    .map(|c| {
                        let ax = &axes[c.comp as usize];
                        let mut w = Rat::one();
                        for (a, axis) in ax.iter().enumerate() {
                            if c.is_edge(a) {
                                w = &w / &axis.spacing;
                            } else {
                                w = &w * &axis.spacing;
                            }
                        }
                        if time.is_some() && c.is_edge(ns) {
                            w = -w;
                        }
                        w
                    })
                    .collect()
            })
            .collect();
        // δ_k = G_{k-1}⁻¹ · d_{k-1}ᵀ · G_k
        let mut delta = vec![RationalMatrix::zeros(0, by_degree[0].len())];
        for k in 1..=m {
            let inv: Vec<Rat> = weights[k - 1].iter().map(|w| w.recip()).collect();
            delta.push(d[k - 1].transpose().scale_rows(&inv).scale_cols(&weights[k]));
        }
        let mut h = DefaultHasher::new();
        time.hash(&mut h);
        components.hash(&mut h);
        Ok(CubicalComplex {
            time,
            components,
            axes,
            naxes,
            cells: by_degree,
            index,
            tb,
            sb,
            sb_vertices,
            d,
            delta,
            weights,
            id: h.finish(),
        })
    }

    /// Fingerprint of the defining specification.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn is_spacetime(&self) -> bool {
        self.time.is_some()
    }

    /// Total dimension.
    pub fn m(&self) -> usize {
        self.naxes
    }

    pub fn naxes(&self) -> usize {
        self.naxes
    }

    /// Number of spatial axes.
    pub fn spatial_dim(&self) -> usize {
        self.components[0].axes.len()
    }

    pub fn time_axis(&self) -> Option<&AxisSpec> {
        self.time.as_ref()
    }

    /// Index of the time axis inside cells.
    pub fn time_index(&self) -> Option<usize> {
        self.time.as_ref().map(|_| self.spatial_dim())
    }

    /// Number of time edges.
    pub fn nt(&self) -> usize {
        self.time.as_ref().map(|t| t.n_cells()).unwrap_or(0)
    }

    pub fn components(&self) -> &[ComponentSpec] {
        &self.components
    }

    /// Axes of a component, time last.
    pub fn axes(&self, comp: usize) -> &[AxisSpec] {
        &self.axes[comp]
    }

    /// The spatial factor as a complex of its own.
    pub fn spatial_factor(&self) -> CubicalComplex {
        CubicalComplex::build(None, self.components.clone()).expect("spatial factor of a valid complex")
    }

    pub fn dim(&self, k: usize) -> usize {
        self.cells.get(k).map(|c| c.len()).unwrap_or(0)
    }

    pub fn cells(&self, k: usize) -> &[Cell] {
        &self.cells[k]
    }

    pub fn cell(&self, k: usize, i: usize) -> &Cell {
        &self.cells[k][i]
    }

    pub fn index_of(&self, c: &Cell) -> Option<usize> {
        self.index.get(c.degree()).and_then(|m| m.get(c).copied())
    }

    pub fn show(&self, c: &Cell) -> String {
        CellDisplay { cell: c, naxes: self.naxes }.to_string()
    }

    pub fn show_index(&self, k: usize, i: usize) -> String {
        self.show(&self.cells[k][i])
    }

    /// Coboundary `d: C^k → C^{k+1}` on all cells.
    pub fn d(&self, k: usize) -> &RationalMatrix {
        &self.d[k]
    }

    /// Codifferential `δ: C^k → C^{k-1}`, the exact metric adjoint of `d`.
    pub fn delta(&self, k: usize) -> &RationalMatrix {
        &self.delta[k]
    }

    /// Diagonal of the metric pairing in degree `k`: sign times axis weights.
    pub fn weights(&self, k: usize) -> &[Rat] {
        &self.weights[k]
    }

    /// Cell lies on the time boundary (a time vertex at either end).
    pub fn in_tb(&self, k: usize, i: usize) -> bool {
        self.tb[k][i]
    }

    /// Cell lies on the spatial boundary stratum (outer boundary or hole frontier).
    pub fn in_sb(&self, k: usize, i: usize) -> bool {
        self.sb[k][i]
    }

    pub fn has_spatial_boundary(&self) -> bool {
        self.sb_vertices.iter().any(|v| !v.is_empty())
    }

    /// Time position and whether the cell extends along time.
    pub fn time_slot(&self, k: usize, i: usize) -> Option<(usize, bool)> {
        self.time_index().map(|ta| {
            let c = &self.cells[k][i];
            (c.pos[ta] as usize, c.is_edge(ta))
        })
    }

    /// Time range `[lo, hi]` in vertex coordinates.
    pub fn time_range(&self, k: usize, i: usize) -> Option<(usize, usize)> {
        self.time_slot(k, i).map(|(p, e)| (p, p + usize::from(e)))
    }

    /// The spatial part of a cell (time coordinate cleared).
    pub fn spatial_part(&self, c: &Cell) -> Cell {
        let mut s = *c;
        if let Some(ta) = self.time_index() {
            s.pos[ta] = 0;
            s.edges &= !(1 << ta);
        }
        s
    }

    /// Chebyshev gap (in vertex coordinates) between the spatial closure of a cell
    /// and the spatial boundary stratum. `usize::MAX` when there is no boundary.
    pub fn spatial_gap(&self, k: usize, i: usize) -> usize {
        let c = &self.cells[k][i];
        let comp = c.comp as usize;
        let verts = &self.sb_vertices[comp];
        if verts.is_empty() {
            return usize::MAX;
        }
        let ns = self.spatial_dim();
        let ax = &self.axes[comp];
        let ranges: Vec<(usize, usize)> = (0..ns)
            .map(|a| {
                let p = c.pos[a] as usize;
                if c.is_edge(a) {
                    (p, p + 1)
                } else {
                    (p, p)
                }
            })
            .collect();
        let mut best = usize::MAX;
        for q in verts {
            let mut g = 0;
            for a in 0..ns {
                let qa = q[a] as usize;
                g = g.max(ax[a].gap(ranges[a], (qa, qa)));
                if g >= best {
                    break;
                }
            }
            best = best.min(g);
            if best == 0 {
                break;
            }
        }
        best
    }

    /// Chebyshev gap over all axes between the closure of a cell and a vertex of
    /// the same component; `usize::MAX` across components.
    pub fn vertex_gap(&self, c: &Cell, comp: usize, v: &[u16; MAX_AXES]) -> usize {
        if c.comp as usize != comp {
            return usize::MAX;
        }
        let ax = &self.axes[comp];
        let mut g = 0;
        for a in 0..self.naxes {
            let p = c.pos[a] as usize;
            let r = if c.is_edge(a) { (p, p + 1) } else { (p, p) };
            g = g.max(ax[a].gap(r, (v[a] as usize, v[a] as usize)));
        }
        g
    }

    /// True when the closure of the cell meets the spatial boundary stratum.
    pub fn touches_sb(&self, k: usize, i: usize) -> bool {
        self.spatial_gap(k, i) == 0
    }

    /// Faces of a cell with their incidence signs.
    pub fn faces(&self, c: &Cell) -> Vec<(Cell, i64)> {
        boundary(c, &self.axes[c.comp as usize], self.naxes)
    }

    /// All cells in the closure of `c` (including `c`).
    pub fn closure(&self, c: &Cell) -> Vec<Cell> {
        let ax = &self.axes[c.comp as usize];
        let mut out = vec![*c];
        for a in 0..self.naxes {
            if !c.is_edge(a) {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * 3);
            for x in &out {
                next.push(*x);
                let mut lo = *x;
                lo.edges &= !(1 << a);
                let mut hi = lo;
                hi.pos[a] = ax[a].upper(x.pos[a] as usize) as u16;
                next.push(lo);
                next.push(hi);
            }
            out = next;
        }
        out
    }

    /// Translates a cell along each axis, wrapping on circles. `None` when the
    /// result leaves an interval axis.
    pub fn translate(&self, c: &Cell, comp: usize, offsets: &[usize]) -> Option<Cell> {
        let ax = &self.axes[comp];
        let mut out = *c;
        out.comp = comp as u16;
        for a in 0..self.naxes {
            let p = c.pos[a] as usize + offsets[a];
            let lim = if c.is_edge(a) { ax[a].n_cells() } else { ax[a].n_vertices() };
            let p = if ax[a].is_circle() { p % ax[a].n_cells() } else { p };
            if p >= lim {
                return None;
            }
            out.pos[a] = p as u16;
        }
        self.index_of(&out).map(|_| out)
    }

    /// Euler characteristic `Σ (−1)^k · #cells`.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().enumerate().map(|(k, c)| if k % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) }).sum()
    }
}

fn boundary(c: &Cell, ax: &[AxisSpec], naxes: usize) -> Vec<(Cell, i64)> {
    let mut out = Vec::with_capacity(2 * c.degree());
    let mut r = 0;
    for a in 0..naxes {
        if !c.is_edge(a) {
            continue;
        }
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let mut lo = *c;
        lo.edges &= !(1 << a);
        let mut hi = lo;
        hi.pos[a] = ax[a].upper(c.pos[a] as usize) as u16;
        out.push((hi, sign));
        out.push((lo, -sign));
        r += 1;
    }
    out
}

/// Surviving spatial cells of a component, and the faces of deleted top cells
/// among them.
fn spatial_cells(comp: u16, spec: &ComponentSpec) -> (BTreeSet<Cell>, HashSet<Cell>) {
    let ns = spec.axes.len();
    let all_edges: u8 = ((1u16 << ns) - 1) as u8;
    let mut surv = BTreeSet::new();
    let mut deleted_faces = HashSet::new();
    for_each_index(&spec.axes.iter().map(|a| a.n_cells()).collect::<Vec<_>>(), |idx| {
        let mut top = Cell { comp, pos: [0; MAX_AXES], edges: all_edges };
        for (a, &i) in idx.iter().enumerate() {
            top.pos[a] = i as u16;
        }
        let faces = closure_of(&top, &spec.axes);
        if spec.deleted.contains(idx) {
            deleted_faces.extend(faces);
        } else {
            surv.extend(faces);
        }
    });
    let hole: HashSet<Cell> = deleted_faces.into_iter().filter(|c| surv.contains(c)).collect();
    (surv, hole)
}

fn closure_of(c: &Cell, ax: &[AxisSpec]) -> Vec<Cell> {
    let mut out = vec![*c];
    for a in 0..ax.len() {
        if !c.is_edge(a) {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * 3);
        for x in &out {
            next.push(*x);
            let mut lo = *x;
            lo.edges &= !(1 << a);
            let mut hi = lo;
            hi.pos[a] = ax[a].upper(x.pos[a] as usize) as u16;
            next.push(lo);
            next.push(hi);
        }
        out = next;
    }
    out
}

fn for_each_index(sizes: &[usize], mut f: impl FnMut(&Vec<usize>)) {
    if sizes.contains(&0) {
        return;
    }
    let mut idx = vec![0usize; sizes.len()];
    loop {
        f(&idx);
        let mut a = 0;
        while a < sizes.len() {
            idx[a] += 1;
            if idx[a] < sizes[a] {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
        if a == sizes.len() {
            return;
        }
    }
}

fn check_connected(ci: usize, spec: &ComponentSpec) -> Result<()> {
    let sizes: Vec<usize> = spec.axes.iter().map(|a| a.n_cells()).collect();
    let mut alive: HashSet<Vec<usize>> = HashSet::new();
    for_each_index(&sizes, |idx| {
        if !spec.deleted.contains(idx) {
            alive.insert(idx.clone());
        }
    });
    let Some(start) = alive.iter().min().cloned() else {
        return Err(Error::BadSpec(format!("component {ci}: every top cell is deleted")));
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for (a, ax) in spec.axes.iter().enumerate() {
            let n = ax.n_cells();
            let mut nbrs = Vec::new();
            if ax.is_circle() {
                nbrs.push((cur[a] + 1) % n);
                nbrs.push((cur[a] + n - 1) % n);
            } else {
                if cur[a] + 1 < n {
                    nbrs.push(cur[a] + 1);
                }
                if cur[a] > 0 {
                    nbrs.push(cur[a] - 1);
                }
            }
            for p in nbrs {
                let mut nb = cur.clone();
                nb[a] = p;
                if alive.contains(&nb) && seen.insert(nb.clone()) {
                    queue.push_back(nb);
                }
            }
        }
    }
    if seen.len() != alive.len() {
        return Err(Error::BadSpec(format!(
            "component {ci}: deleted cells disconnect the component; model the pieces as separate components"
        )));
    }
    Ok(())
}
