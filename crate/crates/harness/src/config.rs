use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use dsdeform_core::car_fock::OneParticleModel;
use dsdeform_core::deformation::KAPPA_GRID;
use dsdeform_core::suites;
use serde::{Deserialize, Serialize};

/// Largest total mode count; the Fock dimension is `2^modes`.
pub const MAX_MODES: usize = 10;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("config does not match the schema: {0}")]
    Schema(#[from] serde_json::Error),
    #[error("unknown suite '{0}' (known: {known})", known = suites::SUITES.join(", "))]
    UnknownSuite(String),
    #[error("d+ + d- = {0} exceeds the guard of {MAX_MODES} modes (Fock dimension 2^{0})")]
    TooManyModes(usize),
    #[error("{field}: declared {declared} but {given} frequencies given")]
    ModeCount { field: &'static str, declared: usize, given: usize },
    #[error("kappa must be finite, got {0}")]
    NonFiniteKappa(f64),
    #[error("tolerance override for '{0}' must be a nonnegative number")]
    BadTolerance(String),
    #[error("invalid model: {0}")]
    Model(#[from] dsdeform_core::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelConfig {
    pub d_plus: usize,
    pub d_minus: usize,
    pub boost_freqs_plus: Vec<f64>,
    pub boost_freqs_minus: Vec<f64>,
    pub localized_modes: Vec<usize>,
    pub reflection_pairing: Option<Vec<usize>>,
    pub rotation_angle: Option<f64>,
    pub seed: u64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            d_plus: 2,
            d_minus: 2,
            boost_freqs_plus: vec![1.0, -1.0],
            boost_freqs_minus: vec![1.0, -1.0],
            localized_modes: vec![0, 2],
            reflection_pairing: Some(vec![1, 0, 3, 2]),
            rotation_angle: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DeformationConfig {
    pub kappa: Vec<f64>,
}

impl Default for DeformationConfig {
    fn default() -> Self {
        Self { kappa: KAPPA_GRID.to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub deformation: DeformationConfig,
    /// Per-suite tolerance overrides, applied to checks bounded from above.
    pub tolerances: BTreeMap<String, f64>,
    pub suites: Vec<String>,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: ModelConfig::default(),
            deformation: DeformationConfig::default(),
            tolerances: BTreeMap::new(),
            suites: suites::SUITES.iter().map(|s| s.to_string()).collect(),
            seed: DEFAULT_SEED,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.into(), source })?;
        Self::from_json(&text)
    }

    /// Checks the invariants and builds the model.
    pub fn validate(&self) -> Result<OneParticleModel, ConfigError> {
        let m = &self.model;
        let modes = m.d_plus + m.d_minus;
        if modes > MAX_MODES {
            return Err(ConfigError::TooManyModes(modes));
        }
        for (field, declared, given) in [
            ("boost_freqs_plus", m.d_plus, m.boost_freqs_plus.len()),
            ("boost_freqs_minus", m.d_minus, m.boost_freqs_minus.len()),
        ] {
            if declared != given {
                return Err(ConfigError::ModeCount { field, declared, given });
            }
        }
        if let Some(k) = self.deformation.kappa.iter().find(|k| !k.is_finite()) {
            return Err(ConfigError::NonFiniteKappa(*k));
        }
        for name in self.suites.iter().chain(self.tolerances.keys()) {
            if !suites::is_known(name) {
                return Err(ConfigError::UnknownSuite(name.clone()));
            }
        }
        if let Some((name, _)) = self.tolerances.iter().find(|(_, t)| !(t.is_finite() && **t >= 0.0)) {
            return Err(ConfigError::BadTolerance(name.clone()));
        }
        let model = OneParticleModel::new(
            m.boost_freqs_plus.clone(),
            m.boost_freqs_minus.clone(),
            m.localized_modes.clone(),
            m.reflection_pairing.clone(),
            None,
            m.seed,
        )?;
        Ok(match m.rotation_angle {
            Some(phi) => model.with_rotation_angle(phi)?,
            None => model,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_the_default_model() {
        let model = RunConfig::default().validate().unwrap();
        assert_eq!(model, OneParticleModel::default_model());
    }

    #[test]
    fn partial_json_fills_defaults() {
        let c = RunConfig::from_json(r#"{"suites": ["locality"], "deformation": {"kappa": [0, 0.5]}}"#).unwrap();
        assert_eq!(c.suites, ["locality"]);
        assert_eq!(c.deformation.kappa, [0.0, 0.5]);
        assert_eq!(c.model, ModelConfig::default());
    }

    #[test]
    fn guards() {
        let mut c = RunConfig::default();
        c.model.d_plus = 20;
        c.model.boost_freqs_plus = vec![1.0; 20];
        assert!(matches!(c.validate(), Err(ConfigError::TooManyModes(22))));

        let mut c = RunConfig::default();
        c.suites.push("telepathy".into());
        assert!(matches!(c.validate(), Err(ConfigError::UnknownSuite(_))));

        let mut c = RunConfig::default();
        c.model.d_minus = 3;
        assert!(matches!(c.validate(), Err(ConfigError::ModeCount { .. })));

        assert!(RunConfig::from_json(r#"{"modle": {}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"deformation": {"kappa": ["x"]}}"#).is_err());
    }
}
