//! End-to-end acceptance: runs every preset through the binary and checks the
//! reported numbers against oracles recomputed here.

use std::collections::BTreeMap;
use std::process::Command;

use gaugeloc::linalg::{rank, Rat};
use gaugeloc::{presets, CubicalComplex, Flag, SupportSystem};
use gaugeloc_cli::report::{parse_frac, parse_phase, verify_round_trip};
use serde_json::Value;

const PRESETS: [&str; 8] = [
    "maxwell-annulus",
    "maxwell-no-go-m2",
    "maxwell-causality",
    "ym-aharonov-bohm",
    "ym-character-no-go",
    "cohomology-toolkit",
    "ccr-smoke",
    "propagator",
];

const TABLES: [&str; 7] = ["CYL2", "PLANE3", "ANN3", "TOR3", "TWOCYL", "TWOSTRIP", "MINK2"];

fn run(preset: &str, threads: Option<usize>) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gaugeloc"));
    cmd.args(["run", &format!("preset:{preset}"), "--json", "-"]);
    cmd.env_remove("GAUGELOC_THREADS");
    if let Some(n) = threads {
        cmd.env("GAUGELOC_THREADS", n.to_string());
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

struct Reports(BTreeMap<String, Value>);

impl Reports {
    fn analysis(&self, preset: &str, name: &str) -> Result<&Value, String> {
        self.0[preset]["analyses"]
            .as_array()
            .and_then(|a| a.iter().find(|x| x["name"] == name))
            .ok_or_else(|| format!("{preset}: no analysis {name}"))
    }
}

fn get<'a>(a: &'a Value, path: &str) -> &'a Value {
    path.split('.').fold(&a["results"], |v, key| match key.parse::<usize>() {
        Ok(i) if v.is_array() => &v[i],
        _ => &v[key],
    })
}

/// Every check of the analysis passed, and its status says so.
fn passed(a: &Value, errs: &mut Vec<String>) {
    let failing: Vec<_> = a["checks"]
        .as_array()
        .into_iter()
        .flatten()
        .filter(|c| c["pass"] != true)
        .map(|c| c["name"].as_str().unwrap_or("?").to_string())
        .collect();
    if a["status"] != "pass" || !failing.is_empty() {
        errs.push(format!("{}: status {}, failing {:?} {}", a["name"], a["status"], failing, a["error"]));
    }
}

fn has_check(a: &Value, needle: &str, errs: &mut Vec<String>) {
    let found = a["checks"].as_array().into_iter().flatten().any(|c| {
        c["name"].as_str().is_some_and(|n| n.contains(needle)) && c["pass"] == true
    });
    if !found {
        errs.push(format!("{}: no passing check mentioning {needle:?}", a["name"]));
    }
}

fn expect_eq(a: &Value, path: &str, want: Value, errs: &mut Vec<String>) {
    let got = get(a, path);
    if *got != want {
        errs.push(format!("{}: {path} = {got}, want {want}", a["name"]));
    }
}

fn count(a: &Value, path: &str) -> usize {
    get(a, path).as_u64().map_or(usize::MAX, |v| v as usize)
}

// Cohomology oracle: cell strata recomputed from coordinates, ranks of raw d.

fn spatial_betti(name: &str) -> (Vec<usize>, Vec<usize>) {
    match name {
        "CYL2" => (vec![1, 1], vec![1, 1]),
        "PLANE3" => (vec![1, 0, 0], vec![0, 0, 1]),
        "ANN3" => (vec![1, 1, 0], vec![0, 1, 1]),
        "TOR3" => (vec![1, 2, 1], vec![1, 2, 1]),
        "TWOCYL" => (vec![2, 2], vec![2, 2]),
        "TWOSTRIP" => (vec![2, 0], vec![0, 2]),
        "MINK2" => (vec![1, 0], vec![0, 1]),
        _ => unreachable!(),
    }
}

/// Product formula: H(Σ × I) with compact time support shifts degrees by one.
fn kunneth(name: &str, k: usize, s: SupportSystem) -> usize {
    let (free, compact) = spatial_betti(name);
    let space = if s.space == Flag::Compact { compact } else { free };
    let time = if s.time == Flag::Compact { [0, 1] } else { [1, 0] };
    (0..=1).filter(|&a| a <= k && k - a < space.len()).map(|a| time[a] * space[k - a]).sum()
}

/// Whether cell `i` of degree `k` lies on the time boundary and on the spatial boundary.
fn strata(c: &CubicalComplex, k: usize, i: usize) -> (bool, bool) {
    let cell = c.cell(k, i);
    let ta = c.time_index().unwrap();
    let on_tb = !cell.is_edge(ta) && (cell.pos[ta] == 0 || cell.pos[ta] as usize == c.nt());
    let comp = &c.components()[cell.comp as usize];
    let mut on_sb = comp.axes.iter().enumerate().any(|(x, ax)| {
        !ax.is_circle() && !cell.is_edge(x) && (cell.pos[x] == 0 || cell.pos[x] as usize == ax.n_cells())
    });
    for del in &comp.deleted {
        let inside = (0..comp.axes.len()).all(|x| {
            let p = cell.pos[x] as usize;
            p == del[x] || (!cell.is_edge(x) && p == del[x] + 1)
        });
        on_sb |= inside;
    }
    (on_tb, on_sb)
}

/// `dim H^k` over cells surviving the support; `delta` flips which flag kills a stratum.
///
/// δ is d-transpose conjugated by positive diagonal weights, so its restricted
/// ranks are those of the transposed d blocks.
fn brute_dim(c: &CubicalComplex, k: usize, s: SupportSystem, delta: bool) -> usize {
    let kill = |f: Flag| (f == Flag::Compact) != delta;
    let keep = |j: usize| {
        (0..c.dim(j))
            .filter(|&i| {
                let (t, x) = strata(c, j, i);
                !((kill(s.time) && t) || (kill(s.space) && x))
            })
            .collect::<Vec<_>>()
    };
    let cols = keep(k);
    let up = if k < c.m() { rank(&c.d(k).select_rows(&keep(k + 1)).select_cols(&cols)) } else { 0 };
    let down = if k > 0 { rank(&c.d(k - 1).select_rows(&cols).select_cols(&keep(k - 1))) } else { 0 };
    cols.len() - up - down
}

fn criterion_1(r: &Reports) -> Vec<String> {
    let mut errs = Vec::new();
    for name in TABLES {
        let a = match r.analysis("cohomology-toolkit", &format!("table-{name}")) {
            Ok(a) => a,
            Err(e) => return vec![e],
        };
        passed(a, &mut errs);
        let c = presets::complex(name).unwrap();
        let m = c.m();
        for s in SupportSystem::ALL {
            for (flavor, delta) in [("d", false), ("delta", true)] {
                for k in 0..=m {
                    let got = count(a, &format!("dims.{flavor}.{}.{k}", s.name()));
                    let brute = brute_dim(&c, k, s, delta);
                    let predicted = kunneth(name, if delta { m - k } else { k }, s);
                    if got != brute || got != predicted {
                        errs.push(format!("{name} {flavor} {s} k={k}: report {got}, brute {brute}, product {predicted}"));
                    }
                }
            }
        }
    }
    errs
}

fn criterion_2(r: &Reports) -> Vec<String> {
    let mut errs = Vec::new();
    for name in ["CYL2", "ANN3"] {
        let a = match r.analysis("cohomology-toolkit", &format!("homotopy-{name}")) {
            Ok(a) => a,
            Err(e) => return vec![e],
        };
        passed(a, &mut errs);
        for needle in ["dQ + Qd", "dP + Pd", "time-compact cohomology maps", "spacelike cohomology maps"] {
            has_check(a, needle, &mut errs);
        }
        // The identities must have been tested on whole bases.
        let c = presets::complex(name).unwrap();
        let tc_cells: usize = (1..=c.m()).map(|k| (0..c.dim(k)).filter(|&i| !strata(&c, k, i).0).count()).sum();
        let all_cells: usize = (0..=c.m()).map(|k| c.dim(k)).sum();
        let times = get(a, "p_base_times").as_array().map_or(0, Vec::len);
        if count(a, "q_columns") != tc_cells {
            errs.push(format!("{name}: Q tested on {} columns, expected {tc_cells}", count(a, "q_columns")));
        }
        if times == 0 || count(a, "p_columns") != times * all_cells {
            errs.push(format!("{name}: P tested on {} columns over {times} base times", count(a, "p_columns")));
        }
    }
    errs
}

fn criterion_3(r: &Reports) -> Vec<String> {
    let mut errs = Vec::new();
    for name in TABLES {
        let a = match r.analysis("cohomology-toolkit", &format!("duality-{name}")) {
            Ok(a) => a,
            Err(e) => return vec![e],
        };
        passed(a, &mut errs);
        let mats = get(a, "matrices").as_array().cloned().unwrap_or_default();
        let m = presets::complex(name).unwrap().m();
        if mats.len() != 4 * (m + 1) {
            errs.push(format!("{name}: {} pairing matrices, expected {}", mats.len(), 4 * (m + 1)));
        }
        for x in mats {
            if x["rows"] != x["cols"] || x["rank"] != x["rows"] {
                errs.push(format!("{name}: pairing not square of full rank: {x}"));
            }
        }
    }
    errs
}

fn criterion_4(r: &Reports) -> Vec<String> {
    let mut errs = Vec::new();
    let needles = ["□G+f = f", "□G-f = f", "future cone", "past cone", "(f, Gg) = -(g, Gf)", "exact"];
    // Identities on □h need sources one collar deep; degrees too short in time have none.
    let inner_needles = ["G□h = 0", "G+□h = h", "dG = Gd"];
    let mut inner_tested = BTreeMap::new();
    for name in ["cylinder-k0", "cylinder-k1", "circles-k0", "circles-k1"] {
        let a = match r.analysis("propagator", name) {
            Ok(a) => a,
            Err(e) => return vec![e],
        };
        passed(a, &mut errs);
        for n in needles {
            has_check(a, n, &mut errs);
        }
        if count(a, "exact_sequence.inner") > 0 {
            for n in inner_needles {
                has_check(a, n, &mut errs);
            }
            if name.ends_with("k1") {
                has_check(a, "δG = Gδ", &mut errs);
            }
            *inner_tested.entry(get(a, "complex").to_string()).or_insert(0) += 1;
        }
        if count(a, "sources") < 50 {
            errs.push(format!("{name}: only {} sources", count(a, "sources")));
        }
        let es = &a["results"]["exact_sequence"];
        let u = |k: &str| es[k].as_u64().unwrap_or(u64::MAX);
        if u("box_kernel") != 0 || u("g_kernel") != u("box_image") || u("g_rank") != u("solutions") {
            errs.push(format!("{name}: rank bookkeeping {es}"));
        }
        if u("sources") != u("box_image") + u("g_rank") {
            errs.push(format!("{name}: rank-nullity fails for G: {es}"));
        }
    }
    for c in ["\"CYL2\"", "\"TWOCYL\""] {
        if inner_tested.get(c).is_none_or(|n| *n == 0) {
            errs.push(format!("{c}: no degree exercised the □h identities"));
        }
    }
    if let Ok(a) = r.analysis("propagator", "cylinder-k0") {
        for (k, v) in [("sources", 40), ("inner", 24), ("box_image", 24), ("solutions", 16)] {
            expect_eq(a, &format!("exact_sequence.{k}"), v.into(), &mut errs);
        }
    }
    errs
}

/// Preset, analysis and the integer results it must report.
type Expected<'a> = (&'a str, &'a str, &'a [(&'a str, i64)]);

fn criterion_5(r: &Reports) -> Vec<String> {
    let mut errs = Vec::new();
    let steps: [Expected; 5] = [
        (
            "maxwell-annulus",
            "annulus",
            &[
                ("degree", 1),
                ("radical_dim", 1),
                ("radical_check.cohomology_kernel_dim", 1),
                ("locality.annulus-in-plane.kernel_dim", 1),
            ],
        ),
        ("maxwell-causality", "time-slice", &[("radical_dim", 0)]),
        ("maxwell-no-go-m2", "strips", &[("locality.into-line.kernel_dim", 1), ("locality.into-circles.kernel_dim", 0)]),
        ("maxwell-annulus", "plane", &[("radical_dim", 0)]),
        ("maxwell-no-go-m2", "circles", &[("radical_dim", 0)]),
    ];
    for (preset, name, wants) in steps {
        let a = match r.analysis(preset, name) {
            Ok(a) => a,
            Err(e) => return vec![e],
        };
        passed(a, &mut errs);
        for (path, v) in wants {
            expect_eq(a, path, (*v).into(), &mut errs);
        }
    }
    if let Ok(a) = r.analysis("maxwell-annulus", "annulus") {
        has_check(a, "radical equals the span of electric-flux classes", &mut errs);
        expect_eq(a, "radical_check.flux_span_dim", 1.into(), &mut errs);
        expect_eq(a, "locality.annulus-in-plane.kernel_in_radical", true.into(), &mut errs);
        expect_eq(a, "locality.annulus-in-plane.target", "PLANE3".into(), &mut errs);
        if count(a, "gram_nullity") == usize::MAX {
            errs.push("annulus: no gram nullity reported".into());
        }
    }
    errs
}

fn criterion_6(r: &Reports) -> Vec<String> {
    let mut errs = Vec::new();
    let a = match r.analysis("maxwell-no-go-m2", "no-go") {
        Ok(a) => a,
        Err(e) => return vec![e],
    };
    passed(a, &mut errs);
    expect_eq(a, "found", true.into(), &mut errs);
    expect_eq(a, "f_target", "TWOCYL".into(), &mut errs);
    expect_eq(a, "h_target", "MINK2".into(), &mut errs);
    has_check(a, "annihilated along into-line", &mut errs);
    has_check(a, "recomputed on cochains", &mut errs);
    match get(a, "value").as_str().and_then(parse_frac) {
        Some(v) if !v.is_zero() => {}
        other => errs.push(format!("value {other:?} is not a nonzero fraction")),
    }
    if count(a, "partner_support") == 0 || get(a, "partner_index").is_null() {
        errs.push("no explicit partner reported".into());
    }
    let element = get(a, "element").as_array().cloned().unwrap_or_default();
    if element.is_empty() || element.iter().all(|x| x.as_str().and_then(parse_frac).is_some_and(|v| v.is_zero())) {
        errs.push(format!("witness element {element:?} is empty or zero"));
    }
    errs
}

fn criterion_7(r: &Reports) -> Vec<String> {
    let mut errs = Vec::new();
    match r.analysis("maxwell-causality", "time-slice") {
        Ok(a) => {
            passed(a, &mut errs);
            expect_eq(a, "complex", "CYL2".into(), &mut errs);
            expect_eq(a, "time_slice.bijective", true.into(), &mut errs);
            if count(a, "time_slice.source_dim") != count(a, "obs_dim") {
                errs.push("sub-window dimension differs from the cylinder".into());
            }
        }
        Err(e) => errs.push(e),
    }
    match r.analysis("maxwell-causality", "causality") {
        Ok(a) => {
            passed(a, &mut errs);
            expect_eq(a, "complex", "MINK2".into(), &mut errs);
            expect_eq(a, "causality.zero", true.into(), &mut errs);
            if count(a, "causality.rows") == 0 || count(a, "causality.cols") == 0 {
                errs.push(format!("empty τ block {}", a["results"]["causality"]));
            }
        }
        Err(e) => errs.push(e),
    }
    errs
}

fn criterion_8(r: &Reports) -> Vec<String> {
    let mut errs = Vec::new();
    let steps = [
        ("affine-cylinder", vec![("radical_dim", Value::from(1)), ("flat_connections", 1.into())]),
        (
            "psv0-strips",
            vec![("locality.into-circles.injective", true.into()), ("locality.into-line.injective", true.into())],
        ),
        ("psv0-annulus", vec![("locality.annulus-in-plane.injective", true.into())]),
    ];
    for (name, wants) in steps {
        let a = match r.analysis("ym-aharonov-bohm", name) {
            Ok(a) => a,
            Err(e) => return vec![e],
        };
        passed(a, &mut errs);
        for (path, v) in wants {
            expect_eq(a, path, v, &mut errs);
        }
    }
    if let Ok(a) = r.analysis("ym-aharonov-bohm", "affine-cylinder") {
        has_check(a, "holonomy-π flat connection", &mut errs);
    }
    errs
}

fn criterion_9(r: &Reports) -> Vec<String> {
    let mut errs = Vec::new();
    match r.analysis("ym-aharonov-bohm", "characters-cylinder") {
        Ok(a) => {
            passed(a, &mut errs);
            expect_eq(a, "exprad_dim", 0.into(), &mut errs);
            expect_eq(a, "center_rank", 1.into(), &mut errs);
            has_check(a, "value ratio -1", &mut errs);
            let sep = get(a, "separation.0");
            let ratio = sep["ratio"].as_str().and_then(parse_frac);
            if ratio != Some(Rat::int(-1)) {
                errs.push(format!("ratio {} is not -1", sep["ratio"]));
            }
            // e^{iπθ} = -1 exactly when θ is an odd integer.
            match sep["ratio_phase"].as_str().and_then(parse_phase) {
                Some(t) if t.is_integer() && !(&t / &Rat::int(2)).is_integer() => {}
                _ => errs.push(format!("ratio phase {} is not an odd multiple of π", sep["ratio_phase"])),
            }
        }
        Err(e) => errs.push(e),
    }
    match r.analysis("ym-character-no-go", "characters") {
        Ok(a) => {
            passed(a, &mut errs);
            expect_eq(a, "found", true.into(), &mut errs);
            expect_eq(a, "f_target", "TWOCYL".into(), &mut errs);
            expect_eq(a, "h_target", "MINK2".into(), &mut errs);
            has_check(a, "outside 2πℤ", &mut errs);
            match get(a, "value").as_str().and_then(parse_phase) {
                Some(t) if t.is_integer() && !(&t / &Rat::int(2)).is_integer() => {}
                _ => errs.push(format!("pairing {} is not an odd multiple of π", get(a, "value"))),
            }
        }
        Err(e) => errs.push(e),
    }
    errs
}

fn criterion_10(r: &Reports) -> Vec<String> {
    let mut errs = Vec::new();
    let laws = [
        "(ab)c = a(bc)",
        "(ab)* = b*a*",
        "W_h W_k",
        "ω(a*a) = Σ|c_h|^2",
        "‖ab‖₁ ≤ ‖a‖₁‖b‖₁",
        "center_test agrees",
    ];
    for name in ["cylinder", "strips", "circles"] {
        let a = match r.analysis("ccr-smoke", name) {
            Ok(a) => a,
            Err(e) => return vec![e],
        };
        passed(a, &mut errs);
        for law in laws {
            has_check(a, law, &mut errs);
        }
        if count(a, "samples") < 100 {
            errs.push(format!("{name}: only {} random triples", count(a, "samples")));
        }
    }
    if let Ok(a) = r.analysis("ccr-smoke", "strips") {
        has_check(a, "= 0 for h in the kernel along into-line", &mut errs);
        has_check(a, "≠ 0 for generators h with L(h) ≠ 0 along into-circles", &mut errs);
        has_check(a, "≠ 0 for generators h with L(h) ≠ 0 along into-line", &mut errs);
    }
    if let Ok(a) = r.analysis("ccr-smoke", "cylinder") {
        has_check(a, "expcnt generators pass center_test", &mut errs);
        has_check(a, "non-members fail with a non-commuting partner", &mut errs);
        if get(a, "non_member_partners").as_array().is_none_or(Vec::is_empty) {
            errs.push("no concrete non-commuting partner reported".into());
        }
    }
    if let Ok(a) = r.analysis("ym-character-no-go", "quantized") {
        passed(a, &mut errs);
    }
    errs
}

fn criterion_11(first: &BTreeMap<String, Vec<u8>>) -> Vec<String> {
    let mut errs = Vec::new();
    for p in PRESETS {
        for threads in [None, Some(1), Some(4)] {
            let (code, bytes) = run(p, threads);
            if code != 0 || bytes != first[p] {
                errs.push(format!("{p} with threads {threads:?}: exit {code}, identical {}", bytes == first[p]));
            }
        }
    }
    errs
}

#[test]
fn acceptance() {
    let mut raw = BTreeMap::new();
    let mut reports = BTreeMap::new();
    let mut setup = Vec::new();
    for p in PRESETS {
        let (code, bytes) = run(p, Some(1));
        if code != 0 {
            setup.push(format!("{p} exited {code}"));
        }
        let v: Value = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
        if let Err(e) = verify_round_trip(&v) {
            setup.push(format!("{p}: {e}"));
        }
        raw.insert(p.to_string(), bytes);
        reports.insert(p.to_string(), v);
    }
    let r = Reports(reports);
    let results = [
        ("cohomology tables match the product formula and brute-force ranks", criterion_1(&r)),
        ("homotopy identities and inverse cohomology maps", criterion_2(&r)),
        ("duality pairings square and nondegenerate", criterion_3(&r)),
        ("Green operators, cones and exact sequence", criterion_4(&r)),
        ("Maxwell radical and locality kernels", criterion_5(&r)),
        ("Maxwell no-go witness with explicit partner", criterion_6(&r)),
        ("time-slice bijection and causal independence", criterion_7(&r)),
        ("affine layer radical, flat invisibility, PSV0 injectivity", criterion_8(&r)),
        ("character separation, center and odd-π no-go", criterion_9(&r)),
        ("Weyl algebra laws, witnesses and center tests", criterion_10(&r)),
        ("byte-identical reruns under varied thread counts", criterion_11(&raw)),
    ];
    println!("setup: {}", if setup.is_empty() { "pass".to_string() } else { format!("FAIL {setup:?}") });
    let mut failed = !setup.is_empty();
    for (i, (title, errs)) in results.iter().enumerate() {
        let mark = if errs.is_empty() { "pass" } else { "FAIL" };
        println!("criterion {:>2} {mark}  {title}", i + 1);
        for e in errs {
            println!("    {e}");
        }
        failed |= !errs.is_empty();
    }
    assert!(!failed, "acceptance criteria failed");
}
