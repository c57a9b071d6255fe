use gaugeloc::linalg::{rank, RationalMatrix};
use gaugeloc::toolkit::{
    homotopy_p, homotopy_q, projection, section, spacelike_iso, time_compact_iso, time_extension, time_integration,
    TimeProfile,
};
use gaugeloc::{
    allowed_indices, cohomology, duality_pairing_matrix, Cochain, CubicalComplex, DualPair, Flag, Flavor,
    SupportSystem,
};
use serde_json::{json, Map, Value};

use super::Tally;
use crate::report::Findings;
use crate::run::Context;
use crate::run::Outcome;

const FLAVORS: [Flavor; 2] = [Flavor::D, Flavor::Delta];

/// `dim H^k` from ranks of the raw differentials restricted to the allowed cells.
fn brute_dim(c: &CubicalComplex, k: usize, s: SupportSystem, flavor: Flavor) -> usize {
    let keep = |j: usize| allowed_indices(c, j, s, flavor);
    let cols = keep(k);
    let (out, inc) = match flavor {
        Flavor::D => (
            if k < c.m() { rank(&c.d(k).select_rows(&keep(k + 1)).select_cols(&cols)) } else { 0 },
            if k > 0 { rank(&c.d(k - 1).select_rows(&cols).select_cols(&keep(k - 1))) } else { 0 },
        ),
        Flavor::Delta => (
            if k > 0 { rank(&c.delta(k).select_rows(&keep(k - 1)).select_cols(&cols)) } else { 0 },
            if k < c.m() { rank(&c.delta(k + 1).select_rows(&cols).select_cols(&keep(k + 1))) } else { 0 },
        ),
    };
    cols.len() - out - inc
}

pub fn cohomology_table(ctx: &Context, name: &str) -> Outcome<Findings> {
    let c = ctx.scenario.complex(name);
    let m = c.m();
    let mut f = Findings::default();
    let mut brute = Tally::new("dimensions agree with brute-force ranks");
    let mut hodge = Tally::new("hodge star swaps flavors: dim H^k_d = dim H^(m-k)_delta");
    let mut reps = Tally::new("representatives are independent cocycles with the support");
    let mut table = Map::new();
    let mut dims = std::collections::HashMap::new();
    for flavor in FLAVORS {
        let mut per_support = Map::new();
        for s in SupportSystem::ALL {
            let mut row = Vec::new();
            for k in 0..=m {
                let h = cohomology(c, k, s, flavor)?;
                let b = brute_dim(c, k, s, flavor);
                brute.record(h.dim() == b, || format!("{} {s} k={k}: {} vs {b}", flavor.name(), h.dim()));
                if ctx.options.verify_extra {
                    for (j, r) in h.representatives().iter().enumerate() {
                        let mut e = vec![gaugeloc::linalg::Rat::zero(); h.dim()];
                        e[j] = gaugeloc::linalg::Rat::one();
                        let ok = r.satisfies(c, s, flavor) && h.is_cocycle(r)? && h.coordinates(r)? == e;
                        reps.record(ok, || format!("{} {s} k={k} representative {j}", flavor.name()));
                    }
                }
                dims.insert((flavor, s, k), h.dim());
                row.push(Value::from(h.dim()));
            }
            per_support.insert(s.name().to_string(), Value::Array(row));
        }
        table.insert(flavor.name().to_string(), Value::Object(per_support));
    }
    for s in SupportSystem::ALL {
        for k in 0..=m {
            let (a, b) = (dims[&(Flavor::D, s, k)], dims[&(Flavor::Delta, s, m - k)]);
            hodge.record(a == b, || format!("{s} k={k}: {a} vs {b}"));
        }
    }
    brute.finish(&mut f);
    hodge.finish(&mut f);
    if ctx.options.verify_extra {
        reps.finish(&mut f);
    }
    f.set("complex", name);
    f.set("dimension", m);
    f.set("cells", (0..=m).map(|k| c.dim(k)).collect::<Vec<_>>());
    f.set("dims", Value::Object(table));
    Ok(f)
}

pub fn duality_check(ctx: &Context, name: &str) -> Outcome<Findings> {
    let c = ctx.scenario.complex(name);
    let mut f = Findings::default();
    let mut square = Tally::new("pairing matrices square and of full rank");
    let mut rows = Vec::new();
    for (pair, label) in [(DualPair::CompactFree, "c-free"), (DualPair::SpacelikeTimelike, "sc-tc")] {
        for (metric, pairing) in [(false, "wedge"), (true, "metric")] {
            for k in 0..=c.m() {
                let p = duality_pairing_matrix(c, k, pair, metric)?;
                let r = rank(&p);
                square.record(p.rows() == p.cols() && r == p.rows(), || {
                    format!("{label} {pairing} k={k}: {}x{} rank {r}", p.rows(), p.cols())
                });
                rows.push(json!({"pair": label, "pairing": pairing, "degree": k, "rows": p.rows(), "cols": p.cols(), "rank": r}));
            }
        }
    }
    square.finish(&mut f);
    f.set("complex", name);
    f.set("matrices", rows);
    Ok(f)
}

/// Checks the homotopy formulas on every basis cochain, which makes them matrix identities.
pub fn homotopy_check(ctx: &Context, name: &str) -> Outcome<Findings> {
    let c = ctx.scenario.complex(name);
    let m = c.m();
    let sigma = c.spatial_factor();
    let p = TimeProfile::central(c)?;
    let mut f = Findings::default();

    let mut q = Tally::new("dQ + Qd = e∘i - id on time-compact cochains");
    let mut q_cols = 0;
    for k in 1..=m {
        for i in allowed_indices(c, k, SupportSystem::TC, Flavor::D) {
            let w = Cochain::indicator(c, k, i);
            let lhs = time_extension(c, &sigma, &time_integration(c, &sigma, &w)?, &p)?.sub(&w)?;
            let mut rhs = homotopy_q(c, &w, &p)?.d(c)?;
            if k < m {
                rhs = rhs.add(&homotopy_q(c, &w.d(c)?, &p)?)?;
            }
            q.record(lhs == rhs, || format!("k={k} cell {}", c.show_index(k, i)));
            q_cols += 1;
        }
    }
    q.finish(&mut f);

    let mut pp = Tally::new("dP + Pd = π*s* - id");
    let times = {
        let mut t = vec![0, c.nt() / 2];
        t.dedup();
        t
    };
    let mut p_cols = 0;
    for &t0 in &times {
        for k in 0..=m {
            for i in 0..c.dim(k) {
                let w = Cochain::indicator(c, k, i);
                let lhs = if k <= sigma.m() {
                    projection(c, &sigma, &section(c, &sigma, &w, t0)?)?
                } else {
                    Cochain::zero(c, k)
                }
                .sub(&w)?;
                let mut rhs = if k < m { homotopy_p(c, &w.d(c)?, t0)? } else { Cochain::zero(c, k) };
                if k > 0 {
                    rhs = rhs.add(&homotopy_p(c, &w, t0)?.d(c)?)?;
                }
                pp.record(lhs == rhs, || format!("t0={t0} k={k} cell {}", c.show_index(k, i)));
                p_cols += 1;
            }
        }
    }
    pp.finish(&mut f);

    let identity = |a: &RationalMatrix, b: &RationalMatrix| {
        a.mul(b) == RationalMatrix::identity(a.rows()) && b.mul(a) == RationalMatrix::identity(b.rows())
    };
    let mut tc = Tally::new("time-compact cohomology maps are mutually inverse");
    let mut sl = Tally::new("spacelike cohomology maps are mutually inverse");
    let mut isos = Vec::new();
    for space in [Flag::Free, Flag::Compact] {
        let sp = if space == Flag::Free { "free" } else { "compact" };
        for k in 1..=m {
            let (a, b) = time_compact_iso(c, k, space, &p)?;
            tc.record(identity(&a, &b), || format!("space {sp} k={k}"));
            isos.push(json!({"map": "time-compact", "space": sp, "degree": k, "dim": a.rows()}));
        }
        let mut ts = vec![0, 1, c.nt()];
        ts.dedup();
        for t0 in ts {
            for k in 0..=m {
                let (a, b) = spacelike_iso(c, k, space, t0)?;
                sl.record(identity(&a, &b), || format!("space {sp} t0={t0} k={k}"));
                isos.push(json!({"map": "spacelike", "space": sp, "degree": k, "t0": t0, "dim": a.rows()}));
            }
        }
    }
    tc.finish(&mut f);
    sl.finish(&mut f);
    f.set("complex", name);
    f.set("q_columns", q_cols);
    f.set("p_columns", p_cols);
    f.set("p_base_times", times);
    f.set("isomorphisms", isos);
    Ok(f)
}
