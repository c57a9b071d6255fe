use gaugeloc::linalg::Rat;
use gaugeloc::yangmills::{
    psv0_locality, separate_connections, ym_locality_audit, AffineCharacter, Connection, Separation,
};
use gaugeloc::{metric_pairing, Cochain};
use gaugeloc_ccr::Cyclo;
use serde_json::{json, Map, Value};

use super::maxwell::recheck_witness;
use super::Tally;
use crate::report::{frac, fracs, phase, Findings};
use crate::run::{Context, Outcome};

pub fn affine_audit(ctx: &Context, name: &str, locality: &[String]) -> Outcome<Findings> {
    let sc = ctx.scenario;
    let a = ctx.affine(name)?;
    let c = a.complex().clone();
    let mut f = Findings::default();
    f.set("complex", name);
    f.set("dim", a.dim());
    f.set("radical_dim", a.radical().len());
    f.set("closed_duals_dim", a.closed_duals().dim());
    f.set("psv0_dim", a.psv0_dim());

    // Flat connections with holonomy π around each integer cycle; connections are in units of π.
    let lattice = gaugeloc::yangmills::gauge_lattice(c.clone())?;
    let mut invisible = Tally::new("every Inv observable agrees on the holonomy-π flat connection and on 0");
    for (j, n) in lattice.integer_generators().iter().enumerate() {
        let ab = Connection::new(c.clone(), n.clone())?;
        let zero = Connection::zero(c.clone());
        for (which, v) in a.representatives().iter().map(|r| ("class", r)).chain(a.linear().basis().iter().map(|v| ("inv", v))) {
            let phi = Cochain::new(&c, 1, v.clone())?;
            let (x, y) = (metric_pairing(&c, &phi, zero.value())?, metric_pairing(&c, &phi, ab.value())?);
            invisible.record(x == y, || format!("generator {j}, {which} observable differs by {}", frac(&(&y - &x))));
        }
    }
    f.set("flat_connections", lattice.integer_generators().len());
    if !lattice.integer_generators().is_empty() {
        invisible.finish(&mut f);
    }

    let mut loc = Map::new();
    for e in locality {
        let target = sc.target_of(e);
        let t = ctx.affine(target)?;
        let r = psv0_locality(sc.embedding(e), &a, &t)?;
        f.check_with(
            format!("PSV0 map along {e} is injective"),
            r.injective(),
            format!("{} → {} of rank {}", r.source_dim, r.target_dim, r.rank),
        );
        loc.insert(
            e.clone(),
            json!({"target": target, "source_dim": r.source_dim, "target_dim": r.target_dim, "rank": r.rank, "injective": r.injective()}),
        );
    }
    if !locality.is_empty() {
        f.set("locality", Value::Object(loc));
    }
    Ok(f)
}

/// The real number `e^{iπθ}` when it is rational.
fn unit_value(theta: &Rat) -> Value {
    match Cyclo::exp_i_pi(theta).as_rational() {
        Some(r) => Value::String(frac(&r)),
        None => Value::Null,
    }
}

pub fn character_audit(ctx: &Context, name: &str, h0: &Rat) -> Outcome<Findings> {
    let ch = ctx.characters(name, h0)?;
    let c = ch.maxwell().complex().clone();
    let mut f = Findings::default();
    f.set("complex", name);
    f.set("h0", frac(h0));
    f.set("obs_dim", ch.maxwell().dim());
    f.set("lattice_rank", ch.lattice().rank());
    f.set("exprad_dim", ch.exprad().len());
    f.set("center_rank", ch.center_rank());
    f.set("center", ch.center().iter().map(|z| fracs(&z.to_dense())).collect::<Vec<_>>());
    f.set("exprad", ch.exprad().iter().map(|z| fracs(&z.to_dense())).collect::<Vec<_>>());

    let mut central = Tally::new("center and radical generators are central characters");
    for (j, z) in ch.center().iter().chain(ch.exprad()).enumerate() {
        let x = z.to_dense();
        central.record(ch.is_character(&x)? && ch.in_center(&x)?, || format!("generator {j}"));
    }
    let mut half = Tally::new("half of a center generator is not central");
    for (j, z) in ch.center().iter().enumerate() {
        let x: Vec<Rat> = z.to_dense().iter().map(|v| v / &Rat::int(2)).collect();
        half.record(!ch.in_center(&x)?, || format!("generator {j}"));
    }
    if ch.center_rank() + ch.exprad().len() > 0 {
        central.finish(&mut f);
    }
    if ch.center_rank() > 0 {
        half.finish(&mut f);
    }

    let g = ch.lattice();
    let zero = Connection::zero(c.clone());
    let mut seps = Vec::new();
    let mut ratio = Tally::new("a character separates holonomy π from 0 with value ratio -1");
    let mut gauge = Tally::new("holonomy 2π is gauge equivalent to 0");
    for (j, n) in g.integer_generators().iter().enumerate() {
        let ab = Connection::new(c.clone(), n.clone())?;
        match separate_connections(g, &zero, &ab)? {
            Separation::Separated { character, values } => {
                let r = character.ratio(&zero, &ab)?;
                let real = unit_value(&r);
                ratio.record(real == Value::String("-1/1".into()), || format!("generator {j}: ratio {}", phase(&r)));
                seps.push(json!({
                    "generator": j,
                    "values": [phase(&values.0), phase(&values.1)],
                    "ratio_phase": phase(&r),
                    "ratio": real,
                }));
            }
            Separation::GaugeEquivalent { .. } => {
                ratio.record(false, || format!("generator {j}: reported gauge equivalent"));
                seps.push(json!({"generator": j, "gauge_equivalent": true}));
            }
        }
        let twice = Connection::new(c.clone(), n.scale(&Rat::int(2)))?;
        let eq = matches!(separate_connections(g, &zero, &twice)?, Separation::GaugeEquivalent { .. });
        gauge.record(eq, || format!("generator {j}"));
    }
    if !g.integer_generators().is_empty() {
        ratio.finish(&mut f);
        gauge.finish(&mut f);
    }
    f.set("separation", seps);
    Ok(f)
}

pub fn no_go(ctx: &Context, fname: &str, hname: &str, h0: &Rat) -> Outcome<Findings> {
    let sc = ctx.scenario;
    let (src, n, o) = (sc.source_of(fname), sc.target_of(fname), sc.target_of(hname));
    let (sg, ng, og) = (ctx.characters(src, h0)?, ctx.characters(n, h0)?, ctx.characters(o, h0)?);
    let (fe, he) = (sc.embedding(fname), sc.embedding(hname));
    let audit = ym_locality_audit(fe, he, &sg, &ng, &og)?;
    let mut f = Findings::default();
    f.set("layer", "yang-mills");
    f.set("source", src);
    f.set("f_target", n);
    f.set("h_target", o);
    f.set("h0", frac(h0));
    f.set("kernel_f_dim", audit.kernel_f);
    f.set("kernel_h_dim", audit.kernel_h);
    f.set("cohomology_kernel_f_dim", audit.cohomology_kernel_f);
    f.set("cohomology_kernel_h_dim", audit.cohomology_kernel_h);
    f.check(
        "character kernels match the compact-support cohomology kernels",
        audit.kernel_f == audit.cohomology_kernel_f && audit.kernel_h == audit.cohomology_kernel_h,
    );
    let Some(w) = audit.witness else {
        f.check("a witness exists", false);
        f.set("found", false);
        return Ok(f);
    };
    f.check("a witness exists", true);
    let element = Cochain::new(sg.maxwell().complex(), 1, w.element_cochain.clone())?;
    let partner = Cochain::new(ng.maxwell().complex(), 1, w.partner_cochain.clone())?;
    let (dies, pairing) = recheck_witness(fe, he, ng.maxwell(), og.maxwell(), &element, &partner)?;
    f.check(format!("witness is annihilated along {hname}"), dies);
    let recomputed = &pairing / h0;
    f.check_with(
        "partner pairing recomputed on cochains",
        recomputed == w.value,
        format!("reported {}, recomputed {}", phase(&w.value), phase(&recomputed)),
    );
    f.check("partner is a character of the target", AffineCharacter::new(ng.lattice(), Rat::zero(), partner).is_ok());
    f.check("pairing lies outside 2πℤ", w.outside_center());
    let odd = w.value.is_integer() && !(&w.value / &Rat::int(2)).is_integer();
    f.set("found", true);
    f.set("value", phase(&w.value));
    f.set("odd_multiple_of_pi", odd);
    f.set("element", fracs(&w.element));
    f.set("partner_support", w.partner_cochain.nnz());
    Ok(f)
}
