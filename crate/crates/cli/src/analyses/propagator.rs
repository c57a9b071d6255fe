use gaugeloc::propagator::{build_dalembert, verify_exact_sequence};
use gaugeloc::{metric_pairing, Cell, Cochain, CubicalComplex};
use rand_chacha::ChaCha8Rng;

use super::{random_cochain, Tally};
use crate::report::Findings;
use crate::run::{Context, Outcome};

/// Sup-distance between the vertex ranges of two cells, wrapping around circles.
fn spatial_distance(c: &CubicalComplex, a: &Cell, b: &Cell) -> usize {
    let ax = c.axes(a.comp as usize);
    (0..c.spatial_dim())
        .map(|x| {
            let range = |cell: &Cell| {
                let p = cell.pos[x] as usize;
                (p, p + usize::from(cell.is_edge(x)))
            };
            let (a0, a1) = range(a);
            let (b0, b1) = range(b);
            let straight = b0.saturating_sub(a1).max(a0.saturating_sub(b1));
            if ax[x].is_circle() {
                let n = ax[x].n_cells();
                straight.min((a0 + n).saturating_sub(b1).min((b0 + n).saturating_sub(a1)))
            } else {
                straight
            }
        })
        .max()
        .unwrap_or(0)
}

pub fn propagator_check(
    ctx: &Context,
    name: &str,
    k: usize,
    sources: usize,
    rng: &mut ChaCha8Rng,
) -> Outcome<Findings> {
    let c = ctx.scenario.complex(name).clone();
    let o = build_dalembert(c.clone(), k)?;
    let up = if k < c.m() { Some(build_dalembert(c.clone(), k + 1)?) } else { None };
    let down = if k > 0 { Some(build_dalembert(c.clone(), k - 1)?) } else { None };
    let cells = o.window_cells(0);
    let inner = o.window_cells(1);
    if cells.is_empty() {
        return crate::run::other(format!("{name} has no source cells clear of the collar in degree {k}"));
    }
    let sources = if ctx.options.verify_extra { sources * 4 } else { sources };

    let mut split = Tally::new("G = G+ - G-");
    let mut ret_inv = Tally::new("□G+f = f");
    let mut adv_inv = Tally::new("□G-f = f");
    let mut sol = Tally::new("□Gf = 0 on interior slices");
    let mut ret_cone = Tally::new("G+f supported in the future cone of f");
    let mut adv_cone = Tally::new("G-f supported in the past cone of f");
    let mut anti = Tally::new("(f, Gg) = -(g, Gf)");
    let mut kills = Tally::new("G□h = 0");
    let mut inverts = Tally::new("G+□h = h and G-□h = h");
    let mut d_int = Tally::new("dG = Gd");
    let mut delta_int = Tally::new("δG = Gδ");
    for n in 0..sources {
        let f = random_cochain(&c, k, &cells, rng);
        let g = random_cochain(&c, k, &cells, rng);
        let ret = o.retarded(&f)?;
        let adv = o.advanced(&f)?;
        let gf = o.causal_propagator(&f)?;
        split.record(gf == ret.sub(&adv)?, || format!("source {n}"));
        let (bf, ba, bg) = (o.apply(&ret)?, o.apply(&adv)?, o.apply(&gf)?);
        let (mut r_ok, mut a_ok, mut s_ok) = (true, true, true);
        for i in 0..c.dim(k) {
            let (t, last) = o.slice(i);
            r_ok &= t >= last || bf.get(i) == f.get(i);
            a_ok &= t == 0 || ba.get(i) == f.get(i);
            s_ok &= t == 0 || t >= last || bg.get(i).is_zero();
        }
        ret_inv.record(r_ok, || format!("source {n}"));
        adv_inv.record(a_ok, || format!("source {n}"));
        sol.record(s_ok, || format!("source {n}"));
        let in_cone = |u: &Cochain, future: bool| {
            u.values().iter().all(|(i, _)| {
                let (t, _) = o.slice(i);
                f.values().iter().any(|(j, _)| {
                    let (s, _) = o.slice(j);
                    let near = spatial_distance(&c, c.cell(k, i), c.cell(k, j));
                    if future {
                        s < t && near <= t - s
                    } else {
                        s > t && near <= s - t
                    }
                })
            })
        };
        ret_cone.record(in_cone(&ret, true), || format!("source {n}"));
        adv_cone.record(in_cone(&adv, false), || format!("source {n}"));
        let gg = o.causal_propagator(&g)?;
        anti.record(metric_pairing(&c, &f, &gg)? == -metric_pairing(&c, &g, &gf)?, || format!("source {n}"));

        if inner.is_empty() {
            continue;
        }
        let h = random_cochain(&c, k, &inner, rng);
        let bh = o.apply(&h)?;
        kills.record(o.causal_propagator(&bh)?.is_zero(), || format!("source {n}"));
        inverts.record(o.retarded(&bh)? == h && o.advanced(&bh)? == h, || format!("source {n}"));
        let gh = o.causal_propagator(&h)?;
        if let Some(up) = &up {
            d_int.record(up.causal_propagator(&h.d(&c)?)? == gh.d(&c)?, || format!("source {n}"));
        }
        if let Some(down) = &down {
            // δ of a window cochain is the true δ only where its stencil stays inside the window.
            let lhs = down.causal_propagator(&h.delta(&c)?)?;
            let rhs = gh.delta(&c)?;
            let ok = (0..c.dim(k - 1)).all(|i| match c.time_range(k - 1, i) {
                Some((lo, hi)) if lo >= 1 && hi < c.nt() => lhs.get(i) == rhs.get(i),
                _ => true,
            });
            delta_int.record(ok, || format!("source {n}"));
        }
    }
    let mut out = Findings::default();
    for t in [split, ret_inv, adv_inv, sol, ret_cone, adv_cone, anti] {
        t.finish(&mut out);
    }
    if !inner.is_empty() {
        kills.finish(&mut out);
        inverts.finish(&mut out);
        if up.is_some() {
            d_int.finish(&mut out);
        }
        if down.is_some() {
            delta_int.finish(&mut out);
        }
    }
    let r = verify_exact_sequence(&o)?;
    out.check_with(
        "0 → C_c → C_c → C_sc → C_sc → 0 exact",
        r.exact(),
        format!(
            "box kernel {}, G kernel {} vs box image {}, G rank {} vs solutions {}",
            r.box_kernel, r.g_kernel, r.box_image, r.g_rank, r.solutions
        ),
    );
    out.set("complex", name);
    out.set("degree", k);
    out.set("sources", sources);
    out.set(
        "exact_sequence",
        serde_json::json!({
            "sources": r.sources,
            "inner": r.inner,
            "box_kernel": r.box_kernel,
            "box_image": r.box_image,
            "g_kernel": r.g_kernel,
            "g_rank": r.g_rank,
            "solutions": r.solutions,
            "image_in_kernel": r.image_in_kernel,
            "cutoff_reproduces": r.cutoff_reproduces,
        }),
    );
    Ok(out)
}
