use std::sync::Arc;

use gaugeloc::linalg::{Rat, SpanSolver, SparseVec, Subspace};
use gaugeloc::maxwell::locality_kernel;
use gaugeloc::yangmills::{ym_locality_audit, CharacterObservableGroup};
use gaugeloc_ccr::{
    center_test, character_map, locality_witness, reference_state, weyl_phase, CenterDecision, Cyclo, Element,
    GeneratorKind, PresymplecticGroup, WeylElement,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use super::{small_rat, Tally};
use crate::report::{fracs, phase, Findings};
use crate::run::{Context, Outcome};

fn random_element(g: &PresymplecticGroup, rng: &mut ChaCha8Rng) -> Element {
    let density = (3.0 / g.rank().max(1) as f64).min(1.0);
    g.kinds()
        .iter()
        .map(|k| {
            if !rng.gen_bool(density) {
                return Rat::zero();
            }
            match k {
                GeneratorKind::Integer => Rat::int(rng.gen_range(-3i64..=3)),
                GeneratorKind::Divisible => small_rat(rng),
            }
        })
        .collect()
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> Cyclo {
    let order = [1i64, 2, 3, 4, 6, 8][rng.gen_range(0..6)];
    let theta = Rat::new(rng.gen_range(0..2 * order), order);
    Cyclo::exp_i_pi(&theta).scale(&small_rat(rng))
}

fn random_weyl(g: &Arc<PresymplecticGroup>, rng: &mut ChaCha8Rng) -> Outcome<WeylElement> {
    let n = rng.gen_range(1..=3usize);
    let terms: Vec<(Element, Cyclo)> = (0..n).map(|_| (random_element(g, rng), random_coefficient(rng))).collect();
    Ok(WeylElement::from_terms(g, terms)?)
}

/// `x ∈ ℤ·center + ℚ·exprad`, the preimage of the center of the character group.
fn expcnt_member(ch: &CharacterObservableGroup, x: &[Rat]) -> Outcome<bool> {
    if ch.in_center(x)? {
        return Ok(true);
    }
    let n = ch.maxwell().dim();
    let v = SparseVec::from_dense(x);
    let rad = Subspace::from_vectors(n, ch.exprad().to_vec());
    if rad.contains(&v) {
        return Ok(true);
    }
    let mut gens: Vec<SparseVec> = ch.center().to_vec();
    gens.extend(rad.basis().iter().cloned());
    Ok(match SpanSolver::new(n, gens).solve(&v) {
        Some(c) => c.iter().filter(|(j, _)| *j < ch.center().len()).all(|(_, v)| v.is_integer()),
        None => false,
    })
}

pub fn quantize(
    ctx: &Context,
    name: &str,
    h0: &Rat,
    samples: usize,
    kernels: &[String],
    rng: &mut ChaCha8Rng,
) -> Outcome<Findings> {
    let sc = ctx.scenario;
    let cg = ctx.group(name, h0)?;
    let g = cg.group().clone();
    let samples = if ctx.options.verify_extra { samples * 4 } else { samples };
    let mut f = Findings::default();
    f.set("complex", name);
    f.set("h0", frac_str(h0));
    f.set("rank", g.rank());
    f.set("integer_generators", g.kinds().iter().filter(|k| **k == GeneratorKind::Integer).count());
    f.set("samples", samples);

    let one = WeylElement::unit(&g);
    let mut assoc = Tally::new("(ab)c = a(bc)");
    let mut distrib = Tally::new("a(b + c) = ab + ac");
    let mut unit = Tally::new("1a = a1 = a");
    let mut inv = Tally::new("(ab)* = b*a* and a** = a");
    let mut anti = Tally::new("(λa)* = conj(λ) a*");
    let mut relation = Tally::new("W_h W_k = exp(-iρ(h, k)) W_k W_h");
    let mut faithful = Tally::new("ω(a*a) = Σ|c_h|^2");
    let mut submult = Tally::new("‖ab‖₁ ≤ ‖a‖₁‖b‖₁");
    for n in 0..samples {
        let (a, b, c) = (random_weyl(&g, rng)?, random_weyl(&g, rng)?, random_weyl(&g, rng)?);
        let case = || format!("triple {n}");
        let ab = a.product(&b)?;
        assoc.record(ab.product(&c)? == a.product(&b.product(&c)?)?, case);
        distrib.record(a.product(&b.add(&c)?)? == ab.add(&a.product(&c)?)?, case);
        unit.record(one.product(&a)? == a && a.product(&one)? == a, case);
        inv.record(ab.star() == b.star().product(&a.star())? && a.star().star() == a, case);
        let lambda = random_coefficient(rng);
        anti.record(a.scale(&lambda).star() == a.star().scale(&lambda.conj()), case);
        let (h, k) = (random_element(&g, rng), random_element(&g, rng));
        let (wh, wk) = (WeylElement::weyl(&g, &h)?, WeylElement::weyl(&g, &k)?);
        let twist = Cyclo::exp_i_pi(&-g.pairing(&h, &k));
        relation.record(
            wh.product(&wk)? == wk.product(&wh)?.scale(&twist)
                && wh.product(&wk)?.coefficient(&add(&h, &k)) == weyl_phase(&g, &h, &k),
            case,
        );
        let norm_sq = a.terms().values().fold(Cyclo::zero(), |acc, x| &acc + &x.norm_sq());
        faithful.record(reference_state(&a.star().product(&a)?) == norm_sq, case);
        submult.record(ab.l1_norm().le(&a.l1_norm().mul(&b.l1_norm())), case);
    }
    for t in [assoc, distrib, unit, inv, anti, relation, faithful, submult] {
        t.finish(&mut f);
    }

    // Quantum locality witnesses: 1 - W_h dies under Δ(L) exactly when L(h) = 0.
    let mut kmap = Map::new();
    for e in kernels {
        let target = sc.target_of(e);
        let tg = ctx.group(target, h0)?;
        let l = character_map(sc.embedding(e), &cg, &tg)?;
        let lk = locality_kernel(sc.embedding(e), cg.characters().maxwell(), tg.characters().maxwell())?;
        let mut dies = Tally::new(format!("Δ(L)(1 - W_h) = 0 for h in the kernel along {e}").as_str());
        for v in &lk.kernel {
            let h = cg.from_obs(&v.to_dense())?;
            dies.record(l.apply(&locality_witness(&g, &h)?)?.is_zero(), || format!("kernel vector {:?}", fracs(&h)));
        }
        let mut lives = Tally::new(format!("Δ(L)(1 - W_h) ≠ 0 for generators h with L(h) ≠ 0 along {e}").as_str());
        for i in 0..g.rank() {
            let h = g.generator(i);
            if l.apply_element(&h).iter().any(|x| !x.is_zero()) {
                lives.record(!l.apply(&locality_witness(&g, &h)?)?.is_zero(), || format!("generator {i}"));
            }
        }
        if !lk.kernel.is_empty() {
            dies.finish(&mut f);
        }
        lives.finish(&mut f);
        kmap.insert(e.clone(), json!({"target": target, "kernel_dim": lk.kernel.len()}));
    }
    if !kernels.is_empty() {
        f.set("kernels", Value::Object(kmap));
    }

    // Center tests on the expcnt generators and on candidate non-members.
    let ch = cg.characters();
    let mut members = Tally::new("expcnt generators pass center_test");
    for (j, z) in ch.center().iter().chain(ch.exprad()).enumerate() {
        let h = cg.from_obs(&z.to_dense())?;
        members.record(center_test(&g, &h)?.is_central(), || format!("generator {j}"));
    }
    let mut candidates: Vec<Element> = (0..g.rank()).map(|i| g.generator(i)).collect();
    for z in ch.center() {
        let x: Vec<Rat> = z.to_dense().iter().map(|v| v * &Rat::int(3)).collect();
        candidates.push(cg.from_obs(&x)?);
        let half: Vec<Rat> = z.to_dense().iter().map(|v| v / &Rat::int(2)).collect();
        if let Ok(h) = cg.from_obs(&half) {
            candidates.push(h);
        }
    }
    let mut agree = Tally::new("center_test agrees with expcnt membership");
    let mut refused = Tally::new("non-members fail with a non-commuting partner");
    let mut partners = Vec::new();
    for (j, h) in candidates.iter().enumerate() {
        let member = expcnt_member(ch, &cg.to_obs(h))?;
        match center_test(&g, h)? {
            CenterDecision::Central => agree.record(member, || format!("candidate {j} central but not a member")),
            CenterDecision::NotCentral { partner, pairing, commutator, .. } => {
                agree.record(!member, || format!("candidate {j} is a member but was refused"));
                let direct = WeylElement::weyl(&g, h)?.commutator(&WeylElement::weyl(&g, &partner)?)?;
                let ok = !(&pairing / &Rat::int(2)).is_integer()
                    && g.pairing(h, &partner) == pairing
                    && !commutator.is_zero()
                    && direct == commutator;
                refused.record(ok, || format!("candidate {j}"));
                if partners.len() < 8 {
                    partners.push(json!({"element": fracs(h), "partner": fracs(&partner), "pairing": phase(&pairing)}));
                }
            }
        }
    }
    if !ch.center().is_empty() || !ch.exprad().is_empty() {
        members.finish(&mut f);
    }
    agree.finish(&mut f);
    if !partners.is_empty() {
        refused.finish(&mut f);
    }
    f.set("center_candidates", candidates.len());
    f.set("non_member_partners", partners);
    Ok(f)
}

fn add(h: &[Rat], k: &[Rat]) -> Element {
    h.iter().zip(k).map(|(a, b)| a + b).collect()
}

fn frac_str(x: &Rat) -> String {
    crate::report::frac(x)
}

pub fn no_go(ctx: &Context, fname: &str, hname: &str, h0: &Rat) -> Outcome<Findings> {
    let sc = ctx.scenario;
    let (src, n, o) = (sc.source_of(fname), sc.target_of(fname), sc.target_of(hname));
    let (gs, gn, go) = (ctx.group(src, h0)?, ctx.group(n, h0)?, ctx.group(o, h0)?);
    let (fe, he) = (sc.embedding(fname), sc.embedding(hname));
    let lf = character_map(fe, &gs, &gn)?;
    let lh = character_map(he, &gs, &go)?;
    let audit = ym_locality_audit(fe, he, gs.characters(), gn.characters(), go.characters())?;
    let mut f = Findings::default();
    f.set("layer", "ccr");
    f.set("source", src);
    f.set("f_target", n);
    f.set("h_target", o);
    let Some(w) = audit.witness else {
        f.check("a witness exists", false);
        f.set("found", false);
        return Ok(f);
    };
    f.check("a witness exists", true);
    let x = gs.from_obs(&w.element)?;
    let q = locality_witness(gs.group(), &x)?;
    f.check(format!("Δ({hname})(1 - W_x) = 0"), lh.apply(&q)?.is_zero());
    let image = lf.apply(&q)?;
    f.check(format!("Δ({fname})(1 - W_x) ≠ 0"), !image.is_zero() && lf.separates_terms(&q));
    let fx = lf.apply_element(&x);
    let partner = gn.from_obs(&gn.characters().maxwell().coordinates(&w.partner_cochain)?)?;
    let pairing = gn.group().pairing(&fx, &partner);
    let comm = WeylElement::weyl(gn.group(), &fx)?.commutator(&WeylElement::weyl(gn.group(), &partner)?)?;
    f.check_with(
        "the image of W_x does not commute with the partner symbol",
        pairing == w.value && !comm.is_zero(),
        format!("pairing {} vs witness {}", phase(&pairing), phase(&w.value)),
    );
    f.check(format!("the image of W_x is not central along {fname}"), !center_test(gn.group(), &fx)?.is_central());
    f.check(format!("the image of W_x is central along {hname}"), center_test(go.group(), &lh.apply_element(&x))?.is_central());
    f.set("found", true);
    f.set("element", fracs(&x));
    f.set("partner", fracs(&partner));
    f.set("pairing", phase(&pairing));
    f.set("commutator_terms", comm.len());
    Ok(f)
}
