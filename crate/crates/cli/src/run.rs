//! Scenario execution.

use std::cell::RefCell;
use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use gaugeloc::linalg::Rat;
use gaugeloc::maxwell::{observables, MaxwellObservables};
use gaugeloc::yangmills::{affine_obs_space, character_obs_space, AffineObservableSpace, CharacterObservableGroup};
use gaugeloc_ccr::{character_group, CharacterGroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use thiserror::Error;

use crate::analyses;
use crate::report::{lookup, matches_expected, AnalysisReport, Environment, Findings, Report, Status, REPORT_SCHEMA};
use crate::scenario::Scenario;

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Seeds the randomized property sweeps, nothing else.
    pub seed: u64,
    /// Enables slower cross-checks and larger sweeps.
    pub verify_extra: bool,
}

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Model(#[from] gaugeloc::Error),
    #[error(transparent)]
    Ccr(#[from] gaugeloc_ccr::CcrError),
    #[error("{0}")]
    Other(String),
}

pub type Outcome<T> = Result<T, AnalysisError>;

pub fn other<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(AnalysisError::Other(msg.into()))
}

/// Shared state for one run: the scenario, options and lazily built observable spaces.
pub struct Context<'a> {
    pub scenario: &'a Scenario,
    pub options: RunOptions,
    maxwell: RefCell<HashMap<(String, usize), Arc<MaxwellObservables>>>,
    affine: RefCell<HashMap<String, Arc<AffineObservableSpace>>>,
    characters: RefCell<HashMap<(String, Rat), Arc<CharacterObservableGroup>>>,
    groups: RefCell<HashMap<(String, Rat), Arc<CharacterGroup>>>,
}

fn memo<K: std::hash::Hash + Eq + Clone, V>(
    cache: &RefCell<HashMap<K, Arc<V>>>,
    key: K,
    build: impl FnOnce() -> Outcome<V>,
) -> Outcome<Arc<V>> {
    if let Some(v) = cache.borrow().get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(build()?);
    cache.borrow_mut().insert(key, v.clone());
    Ok(v)
}

impl<'a> Context<'a> {
    pub fn new(scenario: &'a Scenario, options: RunOptions) -> Context<'a> {
        Context {
            scenario,
            options,
            maxwell: RefCell::default(),
            affine: RefCell::default(),
            characters: RefCell::default(),
            groups: RefCell::default(),
        }
    }

    pub fn maxwell(&self, complex: &str, k: usize) -> Outcome<Arc<MaxwellObservables>> {
        memo(&self.maxwell, (complex.to_string(), k), || Ok(observables(self.scenario.complex(complex).clone(), k)?))
    }

    pub fn affine(&self, complex: &str) -> Outcome<Arc<AffineObservableSpace>> {
        memo(&self.affine, complex.to_string(), || Ok(affine_obs_space(self.scenario.complex(complex).clone())?))
    }

    pub fn characters(&self, complex: &str, h0: &Rat) -> Outcome<Arc<CharacterObservableGroup>> {
        memo(&self.characters, (complex.to_string(), h0.clone()), || {
            Ok(character_obs_space((*self.maxwell(complex, 1)?).clone(), h0.clone())?)
        })
    }

    pub fn group(&self, complex: &str, h0: &Rat) -> Outcome<Arc<CharacterGroup>> {
        memo(&self.groups, (complex.to_string(), h0.clone()), || Ok(character_group(&*self.characters(complex, h0)?)?))
    }

    /// Independent random stream for the analysis at `index`.
    pub fn rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.options.seed);
        rng.set_stream(index as u64);
        rng
    }
}

pub fn run_scenario(scenario: &Scenario, label: &str, options: RunOptions) -> Report {
    let ctx = Context::new(scenario, options);
    let analyses = scenario
        .analyses
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let outcome = catch_unwind(AssertUnwindSafe(|| analyses::run(&ctx, i, &a.kind)));
            let (mut findings, error) = match outcome {
                Ok(Ok(f)) => (f, None),
                Ok(Err(e)) => (Findings::default(), Some(e.to_string())),
                Err(p) => {
                    let msg = p
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_else(|| "analysis panicked".into());
                    (Findings::default(), Some(format!("internal error: {msg}")))
                }
            };
            let results = Value::Object(std::mem::take(&mut findings.results));
            if error.is_none() {
                for (path, want) in &a.expect {
                    match lookup(&results, path) {
                        Some(found) => findings.check_with(
                            format!("expect {path} = {want}"),
                            matches_expected(found, want),
                            format!("found {found}"),
                        ),
                        None => findings.check_with(format!("expect {path} = {want}"), false, "no such result"),
                    }
                }
            }
            let status = match (&error, findings.checks.iter().all(|c| c.pass)) {
                (Some(_), _) => Status::Error,
                (None, true) => Status::Pass,
                (None, false) => Status::Fail,
            };
            AnalysisReport {
                index: i,
                name: a.name.clone(),
                kind: a.kind.name().to_string(),
                status,
                checks: findings.checks,
                results,
                error,
            }
        })
        .collect();
    Report {
        schema: REPORT_SCHEMA.to_string(),
        environment: Environment {
            tool: "gaugeloc".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            scenario: label.to_string(),
            scenario_name: scenario.name.clone(),
            seed: options.seed,
            verify_extra: options.verify_extra,
        },
        analyses,
    }
}

/// Caps the global thread pool at `GAUGELOC_THREADS` when set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("GAUGELOC_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| format!("GAUGELOC_THREADS={v:?} is not a positive integer"))?;
    if n == 0 {
        return Err("GAUGELOC_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}
