//! TOML run configuration.
//!
//! The schema is a direct transcription of the simulation inputs:
//!
//! ```toml
//! [simulation]
//! seed = 42                     # required
//! snr_grid_db = [0.0, 10.0]     # required, strictly increasing
//! n_trials = 10000              # default shown
//! strategies = ["rdf", "pdf", "lnc-rdf", "dpc-nc-pdf"]   # default: all
//!
//! [fading]
//! noise_variance = 1.0          # default
//!
//! [fading.variance]             # each defaults to 1.0
//! s1_s2 = 1.0
//! s2_s1 = 1.0
//! s1_d1 = 1.0
//! s1_d2 = 1.0
//! s2_d1 = 1.0
//! s2_d2 = 1.0
//!
//! [optimizer]
//! grid_points_per_axis = 25     # default
//! refine_rounds = 3             # default
//! tolerance = 1e-4              # default
//! norm_mode = "equality"        # default; or "inequality"
//!
//! [outage]                      # optional table; absent = no outage column
//! target_rate = 1.0             # required when the table is present
//! bandwidth = 1.0               # default
//! ```
//!
//! Unknown keys are rejected everywhere. Loading validates every value
//! through the model-layer constructors, so a config that loads is a
//! config that runs; errors name the offending key.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::allocator::{AllocatorError, OptimizerSettings};
use crate::model::{
    FadingProfile, LinkId, ModelError, NormMode, OutageSpec, StrategyId,
};
use crate::montecarlo::{MonteCarloPlan, PlanError};

/// Configuration that cannot be loaded or fails validation.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config syntax error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid value for {key}: {message}")]
    Invalid { key: String, message: String },
}

fn invalid(key: &str, err: impl std::fmt::Display) -> ConfigError {
    ConfigError::Invalid { key: key.to_string(), message: err.to_string() }
}

/// TOML key suffix for a link variance, e.g. `s1_d2`.
fn link_key(link: LinkId) -> &'static str {
    match link {
        LinkId::S1ToS2 => "s1_s2",
        LinkId::S2ToS1 => "s2_s1",
        LinkId::S1ToD1 => "s1_d1",
        LinkId::S1ToD2 => "s1_d2",
        LinkId::S2ToD1 => "s2_d1",
        LinkId::S2ToD2 => "s2_d2",
    }
}

fn default_n_trials() -> usize {
    10_000
}

fn default_strategies() -> Vec<String> {
    StrategyId::ALL.iter().map(|s| s.label().to_string()).collect()
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSection {
    pub seed: u64,
    pub snr_grid_db: Vec<f64>,
    #[serde(default = "default_n_trials")]
    pub n_trials: usize,
    #[serde(default = "default_strategies")]
    pub strategies: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarianceSection {
    #[serde(default = "one")]
    pub s1_s2: f64,
    #[serde(default = "one")]
    pub s2_s1: f64,
    #[serde(default = "one")]
    pub s1_d1: f64,
    #[serde(default = "one")]
    pub s1_d2: f64,
    #[serde(default = "one")]
    pub s2_d1: f64,
    #[serde(default = "one")]
    pub s2_d2: f64,
}

impl Default for VarianceSection {
    fn default() -> Self {
        Self { s1_s2: 1.0, s2_s1: 1.0, s1_d1: 1.0, s1_d2: 1.0, s2_d1: 1.0, s2_d2: 1.0 }
    }
}

impl VarianceSection {
    /// Variances in [`LinkId::ALL`] order.
    fn as_array(&self) -> [f64; 6] {
        [self.s1_s2, self.s2_s1, self.s1_d1, self.s1_d2, self.s2_d1, self.s2_d2]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FadingSection {
    pub noise_variance: f64,
    pub variance: VarianceSection,
}

impl Default for FadingSection {
    fn default() -> Self {
        Self { noise_variance: 1.0, variance: VarianceSection::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptimizerSection {
    pub grid_points_per_axis: usize,
    pub refine_rounds: u32,
    pub tolerance: f64,
    pub norm_mode: String,
}

impl Default for OptimizerSection {
    fn default() -> Self {
        let d = OptimizerSettings::default();
        Self {
            grid_points_per_axis: d.grid_points_per_axis(),
            refine_rounds: d.refine_rounds(),
            tolerance: d.tolerance(),
            norm_mode: d.norm_mode().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutageSection {
    pub target_rate: f64,
    #[serde(default = "one")]
    pub bandwidth: f64,
}

/// Parsed and validated run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub simulation: SimulationSection,
    #[serde(default)]
    pub fading: FadingSection,
    #[serde(default)]
    pub optimizer: OptimizerSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outage: Option<OutageSection>,
}

impl RunConfig {
    /// Fading profile with errors mapped to `fading.*` keys.
    pub fn fading_profile(&self) -> Result<FadingProfile, ConfigError> {
        FadingProfile::new(self.fading.variance.as_array(), self.fading.noise_variance).map_err(
            |e| match e {
                ModelError::InvalidLinkVariance { link, .. } => {
                    invalid(&format!("fading.variance.{}", link_key(link)), e)
                }
                _ => invalid("fading.noise_variance", e),
            },
        )
    }

    /// Optimizer settings with errors mapped to `optimizer.*` keys.
    pub fn optimizer_settings(&self) -> Result<OptimizerSettings, ConfigError> {
        let mode: NormMode =
            self.optimizer.norm_mode.parse().map_err(|e| invalid("optimizer.norm_mode", e))?;
        OptimizerSettings::new(
            self.optimizer.grid_points_per_axis,
            self.optimizer.refine_rounds,
            self.optimizer.tolerance,
            mode,
        )
        .map_err(|e| match e {
            AllocatorError::TooFewGridPoints(_) => invalid("optimizer.grid_points_per_axis", e),
            _ => invalid("optimizer.tolerance", e),
        })
    }

    /// Outage spec, if the `[outage]` table is present.
    pub fn outage_spec(&self) -> Result<Option<OutageSpec>, ConfigError> {
        self.outage
            .as_ref()
            .map(|o| {
                OutageSpec::new(o.target_rate, o.bandwidth).map_err(|e| match e {
                    ModelError::InvalidTargetRate(_) => invalid("outage.target_rate", e),
                    _ => invalid("outage.bandwidth", e),
                })
            })
            .transpose()
    }

    /// Strategy identifiers in config order (duplicates delegated to the
    /// plan constructor).
    pub fn strategy_ids(&self) -> Result<Vec<StrategyId>, ConfigError> {
        self.simulation
            .strategies
            .iter()
            .map(|s| s.parse().map_err(|e| invalid("simulation.strategies", e)))
            .collect()
    }

    /// Assembles the Monte Carlo plan. `seed_override` replaces the config
    /// seed, `outage_override` replaces (or supplies) the outage spec.
    pub fn monte_carlo_plan(
        &self,
        seed_override: Option<u64>,
        outage_override: Option<OutageSpec>,
    ) -> Result<MonteCarloPlan, ConfigError> {
        let outage = match outage_override {
            Some(spec) => Some(spec),
            None => self.outage_spec()?,
        };
        MonteCarloPlan::new(
            self.simulation.n_trials,
            seed_override.unwrap_or(self.simulation.seed),
            self.simulation.snr_grid_db.clone(),
            &self.strategy_ids()?,
            self.optimizer_settings()?,
            outage,
        )
        .map_err(|e| match e {
            PlanError::NoTrials => invalid("simulation.n_trials", e),
            PlanError::BadSnrGrid => invalid("simulation.snr_grid_db", e),
            PlanError::DuplicateStrategy(_) => invalid("simulation.strategies", e),
        })
    }

    /// Runs every constructor once so a returned config is known-good.
    fn validate(&self) -> Result<(), ConfigError> {
        self.fading_profile()?;
        self.monte_carlo_plan(None, None)?;
        Ok(())
    }

    /// Serializes back to TOML. Loading the output reproduces this config
    /// exactly; used by the round-trip tests.
    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }
}

/// Parses a TOML string into a validated config.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let config: RunConfig = toml::from_str(text)?;
    config.validate()?;
    Ok(config)
}

/// Reads and validates a config file.
pub fn load_config(path: impl AsRef<Path>) -> Result<RunConfig, ConfigError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)
        .map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
    parse_config(&text)
}

// ---------------------------------------------------------------------------
