use serde::{Deserialize, Serialize};

use crate::dist::{DistributionModel, ModelSpec};
use crate::edgeworth::ExpansionKind;
use crate::error::{Error, Result};
use crate::estimators::BiasEstimator;
use crate::functionals::{TrimLevels, TrimSpec};

/// Smallest replicate count accepted for a sup-distance estimate.
pub const MIN_REPS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Normal,
    PopulationExpansion,
    EmpiricalExpansion,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Normal => "normal",
            Target::PopulationExpansion => "population_expansion",
            Target::EmpiricalExpansion => "empirical_expansion",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "normal" => Ok(Target::Normal),
            "population_expansion" => Ok(Target::PopulationExpansion),
            "empirical_expansion" => Ok(Target::EmpiricalExpansion),
            other => Err(Error::Config(format!("unknown target `{other}`"))),
        }
    }
}

fn default_targets() -> Vec<Target> {
    vec![Target::Normal, Target::PopulationExpansion]
}

fn default_workers() -> usize {
    1
}

fn default_empirical_reps() -> usize {
    200
}

/// Everything a simulation run depends on. Read from TOML:
///
/// ```toml
/// model = { family = "exponential", params = [1.0] }
/// alpha = 0.1
/// beta = 0.9
/// n_list = [100, 400, 1600]
/// reps = 200000
/// base_seed = 20261017
/// kind = "studentized"
/// targets = ["normal", "population_expansion"]
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub model: ModelSpec,
    pub alpha: f64,
    pub beta: f64,
    pub n_list: Vec<usize>,
    pub reps: usize,
    pub base_seed: u64,
    pub kind: ExpansionKind,
    #[serde(default = "default_targets")]
    pub targets: Vec<Target>,
    /// Worker threads; results do not depend on it.
    #[serde(default = "default_workers")]
    pub workers: usize,
    /// Replicates whose own plug-ins define an empirical expansion.
    #[serde(default = "default_empirical_reps")]
    pub empirical_reps: usize,
    #[serde(default)]
    pub bias_estimator: BiasEstimator,
}

impl SimulationConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: SimulationConfig = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn levels(&self) -> Result<TrimLevels> {
        TrimLevels::new(self.alpha, self.beta).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn build_model(&self) -> Result<DistributionModel> {
        self.model.build().map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        self.build_model()?;
        let levels = self.levels()?;
        if self.reps < MIN_REPS {
            return Err(Error::Config(format!(
                "reps = {} is below the minimum of {MIN_REPS}",
                self.reps
            )));
        }
        if self.n_list.is_empty() {
            return Err(Error::Config("n_list is empty".into()));
        }
        for &n in &self.n_list {
            if n < 4 {
                return Err(Error::Config(format!("sample size {n} is below 4")));
            }
            if n >= 1 << 31 {
                return Err(Error::Config(format!("sample size {n} is too large")));
            }
            TrimSpec::from_levels(levels, n).map_err(|e| Error::Config(e.to_string()))?;
        }
        let mut seen = self.n_list.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.n_list.len() {
            return Err(Error::Config("n_list has repeated sizes".into()));
        }
        if self.targets.is_empty() {
            return Err(Error::Config("no targets selected".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        if self.empirical_reps == 0 || self.empirical_reps > self.reps {
            return Err(Error::Config(format!(
                "empirical_reps must lie in 1..={}",
                self.reps
            )));
        }
        if self.reps >= 1 << 32 {
            return Err(Error::Config("reps must be below 2^32".into()));
        }
        Ok(())
    }

    /// Extra requirement of a rate study: three or more sizes spanning at
    /// least a factor of ten.
    pub fn validate_rate_design(&self) -> Result<()> {
        let lo = self.n_list.iter().min().copied().unwrap_or(0);
        let hi = self.n_list.iter().max().copied().unwrap_or(0);
        if self.n_list.len() < 3 || hi < 10 * lo {
            return Err(Error::Config(format!(
                "a rate study needs at least 3 sizes spanning a decade, got {:?}",
                self.n_list
            )));
        }
        Ok(())
    }
}
