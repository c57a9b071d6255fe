//! Scenario files: named complexes, named embeddings and a list of analyses.
//!
//! Parsing goes through `toml`; validation resolves names, checks parameters against
//! the analysis kind and builds every complex and embedding up front.

use std::collections::BTreeMap;
use std::sync::Arc;

use gaugeloc::linalg::Rat;
use gaugeloc::{build_complex, presets, AxisSpec, ComponentMap, ComponentSpec, CubicalComplex, Embedding, SpacetimeSpec};
use serde::Deserialize;
use thiserror::Error;

pub const SCENARIO_SCHEMA: &str = "gaugeloc-scenario/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validation error: {0}")]
    Validation(String),
}

fn invalid(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Validation(msg.into())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    schema: Option<String>,
    name: Option<String>,
    description: Option<String>,
    #[serde(default)]
    complexes: BTreeMap<String, RawComplex>,
    #[serde(default)]
    embeddings: BTreeMap<String, RawEmbedding>,
    #[serde(default)]
    analyses: Vec<toml::Table>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    preset: Option<String>,
    time: Option<RawAxis>,
    components: Option<Vec<RawComponent>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxis {
    kind: String,
    cells: usize,
    spacing: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    axes: Vec<RawAxis>,
    #[serde(default)]
    holes: Vec<RawHole>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHole {
    lo: Vec<usize>,
    hi: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEmbedding {
    kind: String,
    source: String,
    target: String,
    #[serde(default)]
    time_offset: usize,
    #[serde(default = "default_collar")]
    collar: usize,
    #[serde(default)]
    components: Vec<RawComponentMap>,
}

fn default_collar() -> usize {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponentMap {
    target: usize,
    offsets: Vec<usize>,
}

/// Which theory an isotony or no-go analysis runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layer {
    Maxwell,
    YangMills,
    Ccr,
}

impl Layer {
    pub fn name(self) -> &'static str {
        match self {
            Layer::Maxwell => "maxwell",
            Layer::YangMills => "yang-mills",
            Layer::Ccr => "ccr",
        }
    }
}

#[derive(Clone, Debug)]
pub enum AnalysisKind {
    CohomologyTable { complex: String },
    DualityCheck { complex: String },
    HomotopyCheck { complex: String },
    PropagatorCheck { complex: String, degree: usize, sources: usize },
    MaxwellAudit {
        complex: String,
        degree: usize,
        locality: Vec<String>,
        time_slice: Option<String>,
        causality: Option<(String, String)>,
    },
    YmAffineAudit { complex: String, locality: Vec<String> },
    YmCharacterAudit { complex: String, h0: Rat },
    CcrQuantize { complex: String, h0: Rat, samples: usize, kernels: Vec<String> },
    Isotony { chain: Vec<String>, layer: Layer, degree: usize, h0: Rat },
    NoGo { f: String, h: String, layer: Layer, degree: usize, h0: Rat },
}

impl AnalysisKind {
    pub fn name(&self) -> &'static str {
        match self {
            AnalysisKind::CohomologyTable { .. } => "cohomology-table",
            AnalysisKind::DualityCheck { .. } => "duality-check",
            AnalysisKind::HomotopyCheck { .. } => "homotopy-check",
            AnalysisKind::PropagatorCheck { .. } => "propagator-check",
            AnalysisKind::MaxwellAudit { .. } => "maxwell-audit",
            AnalysisKind::YmAffineAudit { .. } => "ym-affine-audit",
            AnalysisKind::YmCharacterAudit { .. } => "ym-character-audit",
            AnalysisKind::CcrQuantize { .. } => "ccr-quantize",
            AnalysisKind::Isotony { .. } => "isotony",
            AnalysisKind::NoGo { .. } => "no-go",
        }
    }
}

pub const ANALYSIS_KINDS: [&str; 10] = [
    "cohomology-table",
    "duality-check",
    "homotopy-check",
    "propagator-check",
    "maxwell-audit",
    "ym-affine-audit",
    "ym-character-audit",
    "ccr-quantize",
    "isotony",
    "no-go",
];

#[derive(Clone, Debug)]
pub struct Analysis {
    pub name: String,
    pub kind: AnalysisKind,
    /// Dotted result paths and the values they must hold.
    pub expect: Vec<(String, serde_json::Value)>,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub complexes: BTreeMap<String, Arc<CubicalComplex>>,
    pub embeddings: BTreeMap<String, Embedding>,
    pub analyses: Vec<Analysis>,
}

impl Scenario {
    pub fn complex(&self, name: &str) -> &Arc<CubicalComplex> {
        &self.complexes[name]
    }

    pub fn embedding(&self, name: &str) -> &Embedding {
        &self.embeddings[name]
    }

    /// Name of the complex an embedding starts from.
    pub fn source_of(&self, embedding: &str) -> &str {
        self.complex_name(self.embeddings[embedding].source())
    }

    pub fn target_of(&self, embedding: &str) -> &str {
        self.complex_name(self.embeddings[embedding].target())
    }

    fn complex_name(&self, c: &Arc<CubicalComplex>) -> &str {
        self.complexes.iter().find(|(_, x)| Arc::ptr_eq(x, c)).map(|(n, _)| n.as_str()).expect("registered complex")
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_column(text, s.start));
        ScenarioError::Parse { line, column, message: e.message().trim().to_string() }
    })?;
    validate(raw)
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn check_name(what: &str, name: &str) -> Result<(), ScenarioError> {
    let ok = !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_');
    if ok {
        Ok(())
    } else {
        Err(invalid(format!("{what} name {name:?} may only use letters, digits, '-' and '_'")))
    }
}

fn validate(raw: RawScenario) -> Result<Scenario, ScenarioError> {
    if let Some(s) = &raw.schema {
        if s != SCENARIO_SCHEMA {
            return Err(invalid(format!("unsupported scenario schema {s:?}, expected {SCENARIO_SCHEMA:?}")));
        }
    }
    let mut complexes = BTreeMap::new();
    for (name, rc) in &raw.complexes {
        check_name("complex", name)?;
        let spec = complex_spec(name, rc)?;
        let c = build_complex(&spec).map_err(|e| invalid(format!("complex {name}: {e}")))?;
        complexes.insert(name.clone(), Arc::new(c));
    }
    let mut embeddings = BTreeMap::new();
    for (name, re) in &raw.embeddings {
        check_name("embedding", name)?;
        let e = embedding(name, re, &complexes)?;
        embeddings.insert(name.clone(), e);
    }
    let mut scenario = Scenario {
        name: raw.name.unwrap_or_else(|| "scenario".into()),
        description: raw.description.unwrap_or_default(),
        complexes,
        embeddings,
        analyses: Vec::new(),
    };
    for (i, table) in raw.analyses.into_iter().enumerate() {
        let a = analysis(i, table, &scenario)?;
        scenario.analyses.push(a);
    }
    let mut seen = std::collections::BTreeSet::new();
    for a in &scenario.analyses {
        if !seen.insert(a.name.clone()) {
            return Err(invalid(format!("duplicate analysis name {:?}", a.name)));
        }
    }
    Ok(scenario)
}

fn axis(what: &str, a: &RawAxis) -> Result<AxisSpec, ScenarioError> {
    let spec = match a.kind.as_str() {
        "interval" => AxisSpec::interval(a.cells),
        "circle" => AxisSpec::circle(a.cells),
        other => return Err(invalid(format!("{what}: unknown axis kind {other:?} (interval or circle)"))),
    };
    match &a.spacing {
        None => Ok(spec),
        Some(s) => {
            let h: Rat = s.parse().map_err(|_| invalid(format!("{what}: spacing {s:?} is not a fraction")))?;
            Ok(spec.with_spacing(h))
        }
    }
}

fn complex_spec(name: &str, rc: &RawComplex) -> Result<SpacetimeSpec, ScenarioError> {
    match (&rc.preset, &rc.time, &rc.components) {
        (Some(p), None, None) => presets::spec(p).ok_or_else(|| {
            invalid(format!("complex {name}: unknown preset {p:?}; known: {}", presets::COMPLEXES.join(", ")))
        }),
        (None, Some(t), Some(comps)) => {
            let time = axis(&format!("complex {name} time"), t)?;
            let mut out = Vec::new();
            for (j, rcomp) in comps.iter().enumerate() {
                let what = format!("complex {name} component {j}");
                let axes = rcomp.axes.iter().map(|a| axis(&what, a)).collect::<Result<Vec<_>, _>>()?;
                let mut comp = ComponentSpec::new(axes);
                for hole in &rcomp.holes {
                    let n = comp.axes.len();
                    if hole.lo.len() != n || hole.hi.len() != n {
                        return Err(invalid(format!("{what}: hole corners need {n} coordinates")));
                    }
                    if hole.lo.iter().zip(&hole.hi).any(|(l, h)| l >= h) {
                        return Err(invalid(format!("{what}: hole needs lo < hi on every axis")));
                    }
                    comp = comp.delete_block(&hole.lo, &hole.hi);
                }
                out.push(comp);
            }
            Ok(SpacetimeSpec::new(time, out))
        }
        _ => Err(invalid(format!("complex {name}: give either `preset` or both `time` and `components`"))),
    }
}

fn embedding(
    name: &str,
    re: &RawEmbedding,
    complexes: &BTreeMap<String, Arc<CubicalComplex>>,
) -> Result<Embedding, ScenarioError> {
    let get = |n: &str| {
        complexes.get(n).cloned().ok_or_else(|| invalid(format!("embedding {name}: unknown complex {n:?}")))
    };
    let (s, t) = (get(&re.source)?, get(&re.target)?);
    let wrap = |r: gaugeloc::Result<Embedding>| r.map_err(|e| invalid(format!("embedding {name}: {e}")));
    let fixed = |what: &str| {
        if re.components.is_empty() && re.time_offset == 0 {
            Ok(())
        } else {
            Err(invalid(format!("embedding {name}: kind {what} takes no components or time_offset")))
        }
    };
    match re.kind.as_str() {
        "strips-into-line" => {
            fixed("strips-into-line")?;
            wrap(presets::strips_into_line(s, t))
        }
        "strips-into-circles" => {
            fixed("strips-into-circles")?;
            wrap(presets::strips_into_circles(s, t))
        }
        "annulus-into-plane" => {
            fixed("annulus-into-plane")?;
            wrap(presets::annulus_into_plane(s, t))
        }
        "identity" => {
            fixed("identity")?;
            if !Arc::ptr_eq(&s, &t) {
                return Err(invalid(format!("embedding {name}: identity needs source = target")));
            }
            Ok(Embedding::identity(s))
        }
        "sub-window" => {
            if !re.components.is_empty() {
                return Err(invalid(format!("embedding {name}: sub-window takes no components")));
            }
            wrap(presets::sub_window(s, t, re.time_offset))
        }
        "custom" => {
            if re.components.is_empty() {
                return Err(invalid(format!("embedding {name}: custom embeddings list one map per source component")));
            }
            let maps: Vec<ComponentMap> =
                re.components.iter().map(|m| ComponentMap::new(m.target, m.offsets.clone())).collect();
            wrap(Embedding::new(s, t, re.time_offset, &maps, re.collar))
        }
        other => Err(invalid(format!(
            "embedding {name}: unknown kind {other:?} (strips-into-line, strips-into-circles, annulus-into-plane, identity, sub-window, custom)"
        ))),
    }
}

/// Parameters of one analysis table, consumed key by key.
struct Params {
    what: String,
    table: toml::Table,
}

impl Params {
    fn take(&mut self, key: &str) -> Option<toml::Value> {
        self.table.remove(key)
    }

    fn string(&mut self, key: &str) -> Result<Option<String>, ScenarioError> {
        match self.take(key) {
            None => Ok(None),
            Some(toml::Value::String(s)) => Ok(Some(s)),
            Some(_) => Err(invalid(format!("{}: `{key}` must be a string", self.what))),
        }
    }

    fn required(&mut self, key: &str) -> Result<String, ScenarioError> {
        self.string(key)?.ok_or_else(|| invalid(format!("{}: missing `{key}`", self.what)))
    }

    fn count(&mut self, key: &str, default: usize) -> Result<usize, ScenarioError> {
        match self.take(key) {
            None => Ok(default),
            Some(toml::Value::Integer(n)) if n >= 0 => Ok(n as usize),
            Some(_) => Err(invalid(format!("{}: `{key}` must be a nonnegative integer", self.what))),
        }
    }

    fn list(&mut self, key: &str) -> Result<Vec<String>, ScenarioError> {
        match self.take(key) {
            None => Ok(Vec::new()),
            Some(toml::Value::Array(xs)) => xs
                .into_iter()
                .map(|x| match x {
                    toml::Value::String(s) => Ok(s),
                    _ => Err(invalid(format!("{}: `{key}` must list names", self.what))),
                })
                .collect(),
            Some(_) => Err(invalid(format!("{}: `{key}` must be a list of names", self.what))),
        }
    }

    fn fraction(&mut self, key: &str, default: Rat) -> Result<Rat, ScenarioError> {
        match self.take(key) {
            None => Ok(default),
            Some(toml::Value::Integer(n)) => Ok(Rat::int(n)),
            Some(toml::Value::String(s)) => {
                s.parse().map_err(|_| invalid(format!("{}: `{key}` = {s:?} is not a fraction", self.what)))
            }
            Some(_) => Err(invalid(format!("{}: `{key}` must be an integer or a \"p/q\" string", self.what))),
        }
    }

    fn layer(&mut self) -> Result<Layer, ScenarioError> {
        match self.string("layer")?.as_deref() {
            None | Some("maxwell") => Ok(Layer::Maxwell),
            Some("yang-mills") | Some("ym") => Ok(Layer::YangMills),
            Some("ccr") => Ok(Layer::Ccr),
            Some(other) => Err(invalid(format!("{}: unknown layer {other:?} (maxwell, yang-mills, ccr)", self.what))),
        }
    }

    fn finish(self) -> Result<(), ScenarioError> {
        match self.table.keys().next() {
            None => Ok(()),
            Some(k) => Err(invalid(format!("{}: unknown parameter `{k}`", self.what))),
        }
    }
}

fn analysis(index: usize, mut table: toml::Table, sc: &Scenario) -> Result<Analysis, ScenarioError> {
    let kind = match table.remove("kind") {
        Some(toml::Value::String(s)) => s,
        Some(_) => return Err(invalid(format!("analyses[{index}]: `kind` must be a string"))),
        None => return Err(invalid(format!("analyses[{index}]: missing `kind`"))),
    };
    let mut p = Params { what: format!("analyses[{index}] ({kind})"), table };
    let name = p.string("name")?;
    let expect = match p.take("expect") {
        None => Vec::new(),
        Some(toml::Value::Table(t)) => {
            t.into_iter().map(|(k, v)| Ok((k, expected_value(&p.what, v)?))).collect::<Result<Vec<_>, _>>()?
        }
        Some(_) => return Err(invalid(format!("{}: `expect` must be a table", p.what))),
    };
    let complex = |p: &mut Params| -> Result<String, ScenarioError> {
        let c = p.required("complex")?;
        if sc.complexes.contains_key(&c) {
            Ok(c)
        } else {
            Err(invalid(format!("{}: unknown complex {c:?}", p.what)))
        }
    };
    let emb = |p: &Params, e: &str| -> Result<(), ScenarioError> {
        if sc.embeddings.contains_key(e) {
            Ok(())
        } else {
            Err(invalid(format!("{}: unknown embedding {e:?}", p.what)))
        }
    };
    let from = |p: &Params, e: &str, c: &str| -> Result<(), ScenarioError> {
        emb(p, e)?;
        if sc.source_of(e) == c {
            Ok(())
        } else {
            Err(invalid(format!("{}: embedding {e} starts from {}, not {c}", p.what, sc.source_of(e))))
        }
    };
    let into = |p: &Params, e: &str, c: &str| -> Result<(), ScenarioError> {
        emb(p, e)?;
        if sc.target_of(e) == c {
            Ok(())
        } else {
            Err(invalid(format!("{}: embedding {e} lands in {}, not {c}", p.what, sc.target_of(e))))
        }
    };
    let degree_in = |p: &Params, c: &str, k: usize| -> Result<(), ScenarioError> {
        let m = sc.complexes[c].m();
        if k <= m {
            Ok(())
        } else {
            Err(invalid(format!("{}: degree {k} exceeds the dimension {m} of {c}", p.what)))
        }
    };
    let positive = |p: &Params, x: &Rat| -> Result<(), ScenarioError> {
        if x.signum() > 0 {
            Ok(())
        } else {
            Err(invalid(format!("{}: h0 must be positive", p.what)))
        }
    };
    let kind = match kind.as_str() {
        "cohomology-table" => AnalysisKind::CohomologyTable { complex: complex(&mut p)? },
        "duality-check" => AnalysisKind::DualityCheck { complex: complex(&mut p)? },
        "homotopy-check" => AnalysisKind::HomotopyCheck { complex: complex(&mut p)? },
        "propagator-check" => {
            let complex = complex(&mut p)?;
            let degree = p.count("degree", 0)?;
            degree_in(&p, &complex, degree)?;
            let sources = p.count("sources", 50)?;
            if sources == 0 {
                return Err(invalid(format!("{}: `sources` must be positive", p.what)));
            }
            AnalysisKind::PropagatorCheck { complex, degree, sources }
        }
        "maxwell-audit" => {
            let complex = complex(&mut p)?;
            let degree = p.count("degree", 1)?;
            degree_in(&p, &complex, degree)?;
            let locality = p.list("locality")?;
            for e in &locality {
                from(&p, e, &complex)?;
            }
            let time_slice = p.string("time_slice")?;
            if let Some(e) = &time_slice {
                into(&p, e, &complex)?;
            }
            let causality = match p.list("causality")?.as_slice() {
                [] => None,
                [a, b] => {
                    into(&p, a, &complex)?;
                    into(&p, b, &complex)?;
                    Some((a.clone(), b.clone()))
                }
                _ => return Err(invalid(format!("{}: `causality` names exactly two embeddings", p.what))),
            };
            AnalysisKind::MaxwellAudit { complex, degree, locality, time_slice, causality }
        }
        "ym-affine-audit" => {
            let complex = complex(&mut p)?;
            let locality = p.list("locality")?;
            for e in &locality {
                from(&p, e, &complex)?;
            }
            AnalysisKind::YmAffineAudit { complex, locality }
        }
        "ym-character-audit" => {
            let complex = complex(&mut p)?;
            let h0 = p.fraction("h0", Rat::one())?;
            positive(&p, &h0)?;
            AnalysisKind::YmCharacterAudit { complex, h0 }
        }
        "ccr-quantize" => {
            let complex = complex(&mut p)?;
            let h0 = p.fraction("h0", Rat::one())?;
            positive(&p, &h0)?;
            let samples = p.count("samples", 100)?;
            let kernels = p.list("kernels")?;
            for e in &kernels {
                from(&p, e, &complex)?;
            }
            AnalysisKind::CcrQuantize { complex, h0, samples, kernels }
        }
        "isotony" => {
            let chain = p.list("chain")?;
            if chain.is_empty() {
                return Err(invalid(format!("{}: `chain` needs at least one embedding", p.what)));
            }
            for e in &chain {
                emb(&p, e)?;
            }
            for w in chain.windows(2) {
                if sc.target_of(&w[0]) != sc.source_of(&w[1]) {
                    return Err(invalid(format!("{}: {} does not land where {} starts", p.what, w[0], w[1])));
                }
            }
            let layer = p.layer()?;
            if layer == Layer::Ccr {
                return Err(invalid(format!("{}: isotony runs in the maxwell or yang-mills layer", p.what)));
            }
            let degree = p.count("degree", 1)?;
            if layer == Layer::YangMills && degree != 1 {
                return Err(invalid(format!("{}: yang-mills isotony is in degree 1", p.what)));
            }
            for e in &chain {
                degree_in(&p, sc.source_of(e), degree)?;
            }
            let h0 = p.fraction("h0", Rat::one())?;
            positive(&p, &h0)?;
            AnalysisKind::Isotony { chain, layer, degree, h0 }
        }
        "no-go" => {
            let f = p.required("f")?;
            let h = p.required("h")?;
            emb(&p, &f)?;
            emb(&p, &h)?;
            if sc.source_of(&f) != sc.source_of(&h) {
                return Err(invalid(format!("{}: f and h must start from the same complex", p.what)));
            }
            let layer = p.layer()?;
            let degree = p.count("degree", 1)?;
            if layer != Layer::Maxwell && degree != 1 {
                return Err(invalid(format!("{}: the {} layer is in degree 1", p.what, layer.name())));
            }
            degree_in(&p, sc.source_of(&f), degree)?;
            let h0 = p.fraction("h0", Rat::one())?;
            positive(&p, &h0)?;
            AnalysisKind::NoGo { f, h, layer, degree, h0 }
        }
        other => {
            return Err(invalid(format!(
                "analyses[{index}]: unknown kind {other:?}; known: {}",
                ANALYSIS_KINDS.join(", ")
            )))
        }
    };
    p.finish()?;
    let name = match name {
        Some(n) => {
            check_name("analysis", &n)?;
            n
        }
        None => format!("{}-{}", kind.name(), index + 1),
    };
    Ok(Analysis { name, kind, expect })
}

fn expected_value(what: &str, v: toml::Value) -> Result<serde_json::Value, ScenarioError> {
    Ok(match v {
        toml::Value::Integer(n) => serde_json::Value::from(n),
        toml::Value::Boolean(b) => serde_json::Value::from(b),
        toml::Value::String(s) => serde_json::Value::from(s),
        toml::Value::Array(xs) => {
            serde_json::Value::Array(xs.into_iter().map(|x| expected_value(what, x)).collect::<Result<_, _>>()?)
        }
        _ => return Err(invalid(format!("{what}: expectations are integers, booleans, strings or lists"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_scenario("name = \"x\"\n[complexes.a]\npreset = \n").unwrap_err();
        match err {
            ScenarioError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_names_fail_validation() {
        let text = "[[analyses]]\nkind = \"maxwell-audit\"\ncomplex = \"nowhere\"\n";
        assert!(matches!(parse_scenario(text), Err(ScenarioError::Validation(_))));
        let text = "[complexes.c]\npreset = \"CYL2\"\n[[analyses]]\nkind = \"maxwell-audit\"\ncomplex = \"c\"\nbogus = 1\n";
        assert!(matches!(parse_scenario(text), Err(ScenarioError::Validation(m)) if m.contains("bogus")));
    }

    #[test]
    fn custom_complexes_and_embeddings() {
        let text = r#"
[complexes.strip]
time = { kind = "interval", cells = 3 }
components = [{ axes = [{ kind = "interval", cells = 8 }] }]
[complexes.line]
preset = "MINK2"
[embeddings.left]
kind = "custom"
source = "strip"
target = "line"
components = [{ target = 0, offsets = [2] }]
"#;
        let sc = parse_scenario(text).unwrap();
        assert_eq!(sc.source_of("left"), "strip");
        assert_eq!(sc.target_of("left"), "line");
        assert!(sc.analyses.is_empty());
    }
}
