//! Batch harness: JSON configuration, suite execution and report output for
//! the `dsdeform-core` kernels.

pub mod config;
pub mod report;

use std::collections::BTreeMap;
use std::time::Instant;

use dsdeform_core::car_fock::OneParticleModel;
use dsdeform_core::{rng, suites};

use config::{ConfigError, RunConfig};
use report::{Check, RunReport, Seeds, SuiteResult};

/// Exit status for a run whose checks all passed.
pub const EXIT_PASS: u8 = 0;
/// Exit status when at least one check failed.
pub const EXIT_CHECK_FAILURE: u8 = 1;
/// Exit status for invalid configuration or input.
pub const EXIT_CONFIG_ERROR: u8 = 2;

/// Runs the configured suites in order. `progress` receives each finished suite.
pub fn run(config: &RunConfig, mut progress: impl FnMut(&SuiteResult, f64)) -> Result<RunReport, ConfigError> {
    let model = config.validate()?;
    let mut results = Vec::new();
    let mut timings = BTreeMap::new();
    let mut seeds = BTreeMap::new();
    for name in &config.suites {
        let start = Instant::now();
        let result = run_suite(config, &model, name)?;
        let secs = start.elapsed().as_secs_f64();
        progress(&result, secs);
        seeds.insert(name.clone(), result.seed);
        timings.insert(name.clone(), secs);
        results.push(result);
    }
    Ok(RunReport {
        artifact: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        seeds: Seeds { run: config.seed, suites: seeds },
        pass: results.iter().all(|s| s.pass),
        suites: results,
        timings,
    })
}

fn run_suite(config: &RunConfig, model: &OneParticleModel, name: &str) -> Result<SuiteResult, ConfigError> {
    let seed = rng::derive_seed(config.seed, name);
    let params = suites::SuiteParams { model, kappas: &config.deformation.kappa, seed };
    let reports = suites::run(name, &params)?;
    let tol = config.tolerances.get(name).copied();
    let checks: Vec<Check> = reports.iter().map(|r| Check::from_report(r, tol)).collect();
    Ok(SuiteResult { name: name.to_string(), seed, pass: checks.iter().all(|c| c.pass), checks })
}
