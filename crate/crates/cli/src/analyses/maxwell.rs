use gaugeloc::linalg::Rat;
use gaugeloc::maxwell::{
    causality_check, isotony_quotient, locality_kernel, no_go_witness, radical_check, timeslice_check,
    IsotonyReport, MaxwellObservables,
};
use gaugeloc::yangmills::ym_isotony_quotient;
use gaugeloc::{metric_pairing, Cochain, Embedding};
use serde_json::{json, Map, Value};

use crate::report::{frac, fracs, Findings};
use crate::run::{Context, Outcome};
use crate::scenario::Layer;

pub fn maxwell_audit(
    ctx: &Context,
    name: &str,
    k: usize,
    locality: &[String],
    time_slice: Option<&str>,
    causality: Option<&(String, String)>,
) -> Outcome<Findings> {
    let sc = ctx.scenario;
    let obs = ctx.maxwell(name, k)?;
    let mut f = Findings::default();
    f.set("complex", name);
    f.set("degree", k);
    f.set("inv_dim", obs.inv().dim());
    f.set("van_dim", obs.van().dim());
    f.set("obs_dim", obs.dim());
    f.set("radical_dim", obs.radical().len());
    f.set("gram_nullity", obs.gram_nullity());
    f.set("radical", obs.radical().iter().map(|r| fracs(&r.to_dense())).collect::<Vec<_>>());

    let rc = radical_check(&obs)?;
    f.check_with(
        "radical equals the span of electric-flux classes",
        rc.agrees(),
        format!(
            "radical {}, cohomology kernel {}, flux span {}, flux in radical {}, deep representatives {}",
            rc.radical_dim, rc.cohomology_kernel_dim, rc.flux_span_dim, rc.flux_in_radical, rc.deep_representatives
        ),
    );
    f.set(
        "radical_check",
        json!({
            "radical_dim": rc.radical_dim,
            "cohomology_kernel_dim": rc.cohomology_kernel_dim,
            "flux_span_dim": rc.flux_span_dim,
            "flux_in_radical": rc.flux_in_radical,
            "deep_representatives": rc.deep_representatives,
        }),
    );

    let mut loc = Map::new();
    for e in locality {
        let target = sc.target_of(e);
        let tgt = ctx.maxwell(target, k)?;
        let lk = locality_kernel(sc.embedding(e), &obs, &tgt)?;
        f.check_with(
            format!("kernel along {e} matches the compact-support cohomology kernel and lies in the radical"),
            lk.agrees(),
            format!("kernel {}, cohomology kernel {}, in radical {}", lk.dim(), lk.cohomology_kernel_dim, lk.kernel_in_radical),
        );
        loc.insert(
            e.clone(),
            json!({
                "target": target,
                "kernel_dim": lk.dim(),
                "cohomology_kernel_dim": lk.cohomology_kernel_dim,
                "kernel_in_radical": lk.kernel_in_radical,
                "kernel": lk.kernel.iter().map(|v| fracs(&v.to_dense())).collect::<Vec<_>>(),
            }),
        );
    }
    if !locality.is_empty() {
        f.set("locality", Value::Object(loc));
    }

    if let Some(e) = time_slice {
        let small = ctx.maxwell(sc.source_of(e), k)?;
        let r = timeslice_check(sc.embedding(e), &small, &obs)?;
        f.check_with(
            format!("sub-window {e} induces a bijection"),
            r.bijective(),
            format!("{} → {} of rank {}", r.source_dim, r.target_dim, r.rank),
        );
        f.set(
            "time_slice",
            json!({"embedding": e, "source_dim": r.source_dim, "target_dim": r.target_dim, "rank": r.rank, "bijective": r.bijective()}),
        );
    }

    if let Some((a, b)) = causality {
        let (o1, o2) = (ctx.maxwell(sc.source_of(a), k)?, ctx.maxwell(sc.source_of(b), k)?);
        let r = causality_check(sc.embedding(a), sc.embedding(b), &o1, &o2)?;
        f.check(format!("τ block between {a} and {b} vanishes"), r.is_zero());
        f.set(
            "causality",
            json!({"regions": [a, b], "rows": r.block.rows(), "cols": r.block.cols(), "zero": r.is_zero()}),
        );
    }
    Ok(f)
}

fn isotony_results(f: &mut Findings, r: &IsotonyReport) {
    f.check("quotients by the kernel to the target inject along the chain", r.injective());
    f.set("dims", r.dims.clone());
    f.set("kernel_dims", r.kernel_dims.clone());
    f.set("quotient_dims", r.quotient_dims.clone());
    f.set("step_ranks", r.step_ranks.clone());
    f.set("injective", r.injective());
}

pub fn isotony(ctx: &Context, chain: &[String], layer: Layer, k: usize, h0: &Rat) -> Outcome<Findings> {
    let sc = ctx.scenario;
    let mut regions = vec![sc.source_of(&chain[0]).to_string()];
    regions.extend(chain.iter().map(|e| sc.target_of(e).to_string()));
    let embeddings: Vec<Embedding> = chain.iter().map(|e| sc.embedding(e).clone()).collect();
    let mut f = Findings::default();
    f.set("layer", layer.name());
    f.set("regions", regions.clone());
    let r = match layer {
        Layer::YangMills => {
            let groups = regions.iter().map(|c| ctx.characters(c, h0)).collect::<Outcome<Vec<_>>>()?;
            ym_isotony_quotient(&embeddings, &groups.iter().map(|g| g.as_ref()).collect::<Vec<_>>())?
        }
        _ => {
            let obs = regions.iter().map(|c| ctx.maxwell(c, k)).collect::<Outcome<Vec<_>>>()?;
            isotony_quotient(&embeddings, &obs.iter().map(|o| o.as_ref()).collect::<Vec<_>>())?
        }
    };
    isotony_results(&mut f, &r);
    Ok(f)
}

/// The witness recomputed directly on cochains: zero along `h`, the reported pairing along `f`.
pub(crate) fn recheck_witness(
    fe: &Embedding,
    he: &Embedding,
    n_obs: &MaxwellObservables,
    o_obs: &MaxwellObservables,
    element: &Cochain,
    partner: &Cochain,
) -> Outcome<(bool, Rat)> {
    let along_h = he.extend_by_zero(element)?;
    let dies = o_obs.coordinates(along_h.values())?.iter().all(Rat::is_zero);
    let along_f = fe.extend_by_zero(element)?;
    let g = n_obs.operator().causal_propagator(partner)?;
    Ok((dies, metric_pairing(n_obs.complex(), &along_f, &g)?))
}

pub fn no_go(ctx: &Context, fname: &str, hname: &str, k: usize) -> Outcome<Findings> {
    let sc = ctx.scenario;
    let (src, n, o) = (sc.source_of(fname), sc.target_of(fname), sc.target_of(hname));
    let (so, no, oo) = (ctx.maxwell(src, k)?, ctx.maxwell(n, k)?, ctx.maxwell(o, k)?);
    let (fe, he) = (sc.embedding(fname), sc.embedding(hname));
    let mut f = Findings::default();
    f.set("layer", "maxwell");
    f.set("source", src);
    f.set("f_target", n);
    f.set("h_target", o);
    f.set("kernel_f_dim", locality_kernel(fe, &so, &no)?.dim());
    f.set("kernel_h_dim", locality_kernel(he, &so, &oo)?.dim());
    match no_go_witness(fe, he, &so, &no, &oo)? {
        None => {
            f.check("a witness exists", false);
            f.set("found", false);
        }
        Some(w) => {
            let element = Cochain::new(so.complex(), k, w.element_cochain.clone())?;
            let partner = Cochain::new(no.complex(), k, w.partner_cochain.clone())?;
            let (dies, pairing) = recheck_witness(fe, he, &no, &oo, &element, &partner)?;
            f.check("a witness exists", true);
            f.check(format!("witness is annihilated along {hname}"), dies);
            f.check_with(
                format!("image along {fname} pairs nonzero with the partner, recomputed on cochains"),
                !w.value.is_zero() && pairing == w.value,
                format!("reported {}, recomputed {}", frac(&w.value), frac(&pairing)),
            );
            f.check("witness lies in the source radical", so.in_radical(&w.element));
            f.set("found", true);
            f.set("value", frac(&w.value));
            f.set("element", fracs(&w.element));
            f.set("image", fracs(&w.image));
            f.set("partner_index", w.partner);
            f.set("partner_support", w.partner_cochain.nnz());
        }
    }
    Ok(f)
}
