//! Scenario runner for gaugeloc: parses scenario files, runs the analyses and
//! renders reports.
//!
//! A scenario names complexes, embeddings between them and a list of analyses.
//! Reports are deterministic: the same scenario, seed and version give the same
//! bytes regardless of thread count.

pub mod analyses;
pub mod presets;
pub mod report;
pub mod run;
pub mod scenario;

pub use report::{Report, Status, REPORT_SCHEMA};
pub use run::{configure_threads, run_scenario, RunOptions};
pub use scenario::{parse_scenario, Scenario, ScenarioError, SCENARIO_SCHEMA};

/// Reads `preset:NAME` or a file path and returns the scenario text.
pub fn load_scenario_text(arg: &str) -> Result<String, ScenarioError> {
    match arg.strip_prefix("preset:") {
        Some(name) => presets::find(name).map(|p| p.text.to_string()).ok_or_else(|| {
            let names: Vec<&str> = presets::PRESETS.iter().map(|p| p.name).collect();
            ScenarioError::Validation(format!("unknown preset {name:?}; known: {}", names.join(", ")))
        }),
        None => std::fs::read_to_string(arg)
            .map_err(|e| ScenarioError::Validation(format!("cannot read {arg}: {e}"))),
    }
}

pub fn load_scenario(arg: &str) -> Result<Scenario, ScenarioError> {
    parse_scenario(&load_scenario_text(arg)?)
}
