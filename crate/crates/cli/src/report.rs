//! Reports: per-analysis checks and results, rendered as JSON or aligned text.
//!
//! Exact rationals are strings `"p/q"` (always with a denominator) and phases are
//! `"p/q·π"`. Object keys are sorted, so identical inputs give identical bytes.

use std::fmt::Write as _;

use gaugeloc::linalg::Rat;
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const REPORT_SCHEMA: &str = "gaugeloc-report/1";
const PI: &str = "·π";

pub fn frac(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn phase(x: &Rat) -> String {
    format!("{}{PI}", frac(x))
}

pub fn fracs(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(frac(x))).collect())
}

fn parse_pq(s: &str) -> Option<Rat> {
    let (p, q) = s.split_once('/')?;
    let digits = |t: &str| !t.is_empty() && t.chars().all(|c| c.is_ascii_digit());
    let p_digits = p.strip_prefix('-').unwrap_or(p);
    if !digits(p_digits) || !digits(q) || q.starts_with('0') {
        return None;
    }
    s.parse().ok()
}

/// Reads a `"p/q"` string back.
pub fn parse_frac(s: &str) -> Option<Rat> {
    parse_pq(s)
}

/// Reads a `"p/q·π"` string back, returning the multiple of `π`.
pub fn parse_phase(s: &str) -> Option<Rat> {
    parse_pq(s.strip_suffix(PI)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Checks and results gathered while an analysis runs.
#[derive(Clone, Debug, Default)]
pub struct Findings {
    pub checks: Vec<Check>,
    pub results: Map<String, Value>,
}

impl Findings {
    pub fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(Check { name: name.into(), pass, detail: None });
    }

    pub fn check_with(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        let detail = detail.into();
        self.checks.push(Check { name: name.into(), pass, detail: (!pass && !detail.is_empty()).then_some(detail) });
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.to_string(), v.into());
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub index: usize,
    pub name: String,
    pub kind: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Environment {
    pub tool: String,
    pub version: String,
    pub scenario: String,
    pub scenario_name: String,
    pub seed: u64,
    pub verify_extra: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: String,
    pub environment: Environment,
    pub analyses: Vec<AnalysisReport>,
}

impl Report {
    pub fn status(&self) -> Status {
        if self.analyses.iter().all(|a| a.status == Status::Pass) {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn count(&self, s: Status) -> usize {
        self.analyses.iter().filter(|a| a.status == s).count()
    }

    pub fn to_value(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        let summary = json!({
            "analyses": self.analyses.len(),
            "passed": self.count(Status::Pass),
            "failed": self.count(Status::Fail),
            "errors": self.count(Status::Error),
            "status": self.status().name(),
        });
        v.as_object_mut().expect("object").insert("summary".into(), summary);
        v
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let env = &self.environment;
        let _ = writeln!(out, "{} {}  schema {}", env.tool, env.version, self.schema);
        let _ = writeln!(out, "scenario {} ({})  seed {}  verify-extra {}", env.scenario_name, env.scenario, env.seed, env.verify_extra);
        let _ = writeln!(
            out,
            "{} analyses: {} pass, {} fail, {} error",
            self.analyses.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Error)
        );
        for a in &self.analyses {
            let _ = writeln!(out, "\n[{}] {} ({})", a.status.name(), a.name, a.kind);
            if let Some(e) = &a.error {
                let _ = writeln!(out, "  error: {e}");
            }
            let mut rows: Vec<(String, String)> = a
                .checks
                .iter()
                .map(|c| {
                    let mark = if c.pass { "ok" } else { "FAIL" };
                    let v = match &c.detail {
                        Some(d) => format!("{mark}  {d}"),
                        None => mark.to_string(),
                    };
                    (format!("check {}", c.name), v)
                })
                .collect();
            flatten("", &a.results, &mut rows);
            let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            for (k, v) in rows {
                let pad = width - k.chars().count();
                let _ = writeln!(out, "  {k}{}  {v}", " ".repeat(pad));
            }
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Null => Some("null".into()),
        _ => None,
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(&key(k), x, rows);
            }
        }
        Value::Array(xs) => {
            if let Some(parts) = xs.iter().map(scalar).collect::<Option<Vec<_>>>() {
                rows.push((prefix.to_string(), format!("[{}]", parts.join(", "))));
            } else {
                for (i, x) in xs.iter().enumerate() {
                    flatten(&key(&i.to_string()), x, rows);
                }
            }
        }
        other => rows.push((prefix.to_string(), scalar(other).expect("scalar"))),
    }
}

/// Looks up a dotted path; array entries are addressed by index.
pub fn lookup<'a>(v: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(v, |cur, part| match cur {
        Value::Object(m) => m.get(part),
        Value::Array(xs) => xs.get(part.parse::<usize>().ok()?),
        _ => None,
    })
}

/// Equality of an expected value with a reported one; fraction strings compare as numbers.
pub fn matches_expected(found: &Value, want: &Value) -> bool {
    match (found, want) {
        (Value::String(a), Value::String(b)) => match (parse_frac(a), b.parse::<Rat>().ok()) {
            (Some(x), Some(y)) => x == y,
            _ => match (parse_phase(a), b.strip_suffix(PI).and_then(|t| t.parse::<Rat>().ok())) {
                (Some(x), Some(y)) => x == y,
                _ => a == b,
            },
        },
        (Value::String(a), Value::Number(n)) => {
            parse_frac(a).is_some_and(|x| n.as_i64().is_some_and(|m| x == Rat::int(m)))
        }
        (Value::Array(a), Value::Array(b)) => a.len() == b.len() && a.iter().zip(b).all(|(x, y)| matches_expected(x, y)),
        _ => found == want,
    }
}

/// Every exact string in the report re-parses to a value that renders identically.
/// Returns the number of exact fields seen.
pub fn verify_round_trip(v: &Value) -> Result<usize, String> {
    fn walk(v: &Value, path: &str, n: &mut usize) -> Result<(), String> {
        match v {
            Value::String(s) => {
                if let Some(x) = parse_phase(s) {
                    if phase(&x) != *s {
                        return Err(format!("{path}: {s:?} is not in lowest terms"));
                    }
                    *n += 1;
                } else if let Some(x) = parse_frac(s) {
                    if frac(&x) != *s {
                        return Err(format!("{path}: {s:?} is not in lowest terms"));
                    }
                    *n += 1;
                }
                Ok(())
            }
            Value::Number(x) if !x.is_i64() && !x.is_u64() => Err(format!("{path}: floating-point number {x}")),
            Value::Array(xs) => xs.iter().enumerate().try_for_each(|(i, x)| walk(x, &format!("{path}.{i}"), n)),
            Value::Object(m) => m.iter().try_for_each(|(k, x)| walk(x, &format!("{path}.{k}"), n)),
            _ => Ok(()),
        }
    }
    let mut n = 0;
    walk(v, "", &mut n)?;
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_strings_round_trip() {
        for x in [Rat::new(-3, 4), Rat::int(2), Rat::zero(), Rat::new(7, 9)] {
            assert_eq!(parse_frac(&frac(&x)), Some(x.clone()));
            assert_eq!(parse_phase(&phase(&x)), Some(x.clone()));
        }
        assert_eq!(frac(&Rat::int(-1)), "-1/1");
        assert_eq!(phase(&Rat::one()), "1/1·π");
        assert_eq!(parse_frac("2/4").map(|x| frac(&x)), Some("1/2".into()));
        assert!(verify_round_trip(&json!({"a": "2/4"})).is_err());
        assert!(verify_round_trip(&json!({"a": 0.5})).is_err());
        assert_eq!(verify_round_trip(&json!({"a": ["1/2", "3/1·π"], "b": "text"})), Ok(2));
        assert!(parse_frac("1/0").is_none() && parse_frac("x/2").is_none() && parse_frac("3").is_none());
    }

    #[test]
    fn expectations_and_paths() {
        let v = json!({"a": {"b": [1, {"c": "1/2"}]}});
        assert_eq!(lookup(&v, "a.b.0"), Some(&json!(1)));
        assert!(matches_expected(lookup(&v, "a.b.1.c").unwrap(), &json!("1/2")));
        assert!(matches_expected(&json!("-1/1"), &json!(-1)));
        assert!(matches_expected(&json!("3/1·π"), &json!("3·π")));
        assert!(lookup(&v, "a.z").is_none());
    }
}
