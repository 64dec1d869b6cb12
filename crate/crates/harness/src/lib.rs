//! Seeded randomized verification of the distance and channel properties.
//!
//! Each property runs `cfg.trials` independent trials. Trial `i` of property `p`
//! draws from a generator seeded by `(cfg.seed, p, i)`, so any failure can be
//! regenerated alone with [`replay`] and results do not depend on scheduling.

pub mod dynamics;
pub mod properties;

use std::time::{Duration, Instant};

use qdist_core::limits::max_dim;
use qdist_core::random::seeded_rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use dynamics::{reduced_dynamics, reduced_dynamics_demo, DynamicsRow};
pub use properties::{lookup, Kind, Property, REGISTRY};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialConfig {
    pub seed: u64,
    pub trials: u64,
    pub dims: Vec<usize>,
    pub tolerance: f64,
    /// Property ids to run; empty means every registered property.
    pub properties: Vec<String>,
}

impl Default for TrialConfig {
    fn default() -> Self {
        Self {
            seed: 2024,
            trials: 500,
            dims: vec![2, 3, 4],
            tolerance: 1e-9,
            properties: Vec::new(),
        }
    }
}

impl TrialConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::InvalidConfig("trials must be at least 1".into()));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(HarnessError::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.dims.is_empty() {
            return Err(HarnessError::InvalidConfig("no dimensions given".into()));
        }
        if let Some(&d) = self.dims.iter().find(|&&d| d < 2 || d > max_dim()) {
            return Err(HarnessError::InvalidConfig(format!(
                "dimension {d} outside 2..={}",
                max_dim()
            )));
        }
        self.selected().map(|_| ())
    }

    /// Selected properties in id order.
    pub fn selected(&self) -> Result<Vec<&'static Property>, HarnessError> {
        if self.properties.is_empty() {
            return Ok(REGISTRY.iter().collect());
        }
        let mut picked = Vec::with_capacity(self.properties.len());
        for name in &self.properties {
            let p = lookup(name).ok_or_else(|| HarnessError::UnknownProperty(name.clone()))?;
            if !picked.iter().any(|q: &&Property| q.id == p.id) {
                picked.push(p);
            }
        }
        picked.sort_by_key(|p| p.id);
        Ok(picked)
    }
}

/// Enough to regenerate one trial with [`replay`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialDigest {
    pub index: u64,
    pub trial_seed: u64,
    pub dim: usize,
    /// `None` when the trial raised an error instead of producing a margin.
    pub margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub id: String,
    pub kind: Kind,
    pub trials: u64,
    pub tolerance: f64,
    pub failures: u64,
    /// Largest margin over all trials; positive values are violations.
    pub worst_margin: f64,
    pub worst: TrialDigest,
    pub failing: Vec<TrialDigest>,
    /// Wall-clock time; kept out of the serialized form so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: TrialConfig,
    pub properties: Vec<PropertyReport>,
    /// Failing trials of asserted properties.
    pub asserted_failures: u64,
    /// Failing trials of observed properties (never fail the suite).
    pub observed_failures: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.asserted_failures == 0
    }

    pub fn elapsed(&self) -> Duration {
        self.properties.iter().map(|p| p.elapsed).sum()
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Seed of trial `index` of property `id`.
pub fn trial_seed(seed: u64, id: &str, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ fnv1a(id)).wrapping_add(index))
}

/// Reruns a single trial and returns its margin.
pub fn replay(
    id: &str,
    seed: u64,
    index: u64,
    dims: &[usize],
) -> Result<qdist_core::Result<f64>, HarnessError> {
    let p = lookup(id).ok_or_else(|| HarnessError::UnknownProperty(id.to_string()))?;
    let d = p.dim_for(dims, index);
    Ok((p.trial)(&mut seeded_rng(trial_seed(seed, id, index)), d))
}

fn run_property(p: &Property, cfg: &TrialConfig) -> PropertyReport {
    let start = Instant::now();
    let tolerance = cfg.tolerance * p.factor;
    let digests: Vec<TrialDigest> = (0..cfg.trials)
        .into_par_iter()
        .map(|index| {
            let trial_seed = trial_seed(cfg.seed, p.id, index);
            let dim = p.dim_for(&cfg.dims, index);
            let outcome = (p.trial)(&mut seeded_rng(trial_seed), dim);
            let (margin, error) = match outcome {
                Ok(m) if m.is_finite() => (Some(m), None),
                Ok(m) => (None, Some(format!("non-finite margin {m}"))),
                Err(e) => (None, Some(e.to_string())),
            };
            TrialDigest {
                index,
                trial_seed,
                dim,
                margin,
                error,
            }
        })
        .collect();

    let fails = |t: &TrialDigest| t.margin.is_none_or(|m| m > tolerance);
    let failing: Vec<TrialDigest> = digests.iter().filter(|t| fails(t)).cloned().collect();
    let rank = |t: &TrialDigest| t.margin.unwrap_or(f64::INFINITY);
    let worst = digests
        .iter()
        .fold(None::<&TrialDigest>, |best, t| match best {
            Some(b) if rank(b) >= rank(t) => Some(b),
            _ => Some(t),
        })
        .expect("at least one trial")
        .clone();
    PropertyReport {
        id: p.id.to_string(),
        kind: p.kind,
        trials: cfg.trials,
        tolerance,
        failures: failing.len() as u64,
        worst_margin: rank(&worst),
        worst,
        failing,
        elapsed: start.elapsed(),
    }
}

/// Runs every selected property; failures are collected, never raised.
pub fn run_suite(cfg: &TrialConfig) -> Result<SuiteReport, HarnessError> {
    cfg.validate()?;
    let properties: Vec<PropertyReport> = cfg
        .selected()?
        .into_iter()
        .map(|p| run_property(p, cfg))
        .collect();
    let count = |kind: Kind| {
        properties
            .iter()
            .filter(|r| r.kind == kind)
            .map(|r| r.failures)
            .sum()
    };
    Ok(SuiteReport {
        asserted_failures: count(Kind::Asserted),
        observed_failures: count(Kind::Observed),
        config: cfg.clone(),
        properties,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_differ_across_properties_and_trials() {
        let a = trial_seed(1, "de_symmetry", 0);
        assert_ne!(a, trial_seed(1, "de_symmetry", 1));
        assert_ne!(a, trial_seed(1, "de_triangle", 0));
        assert_ne!(a, trial_seed(2, "de_symmetry", 0));
        assert_eq!(a, trial_seed(1, "de_symmetry", 0));
    }

    #[test]
    fn validation() {
        let ok = TrialConfig::default();
        assert!(ok.validate().is_ok());
        let bad = |f: fn(&mut TrialConfig)| {
            let mut c = TrialConfig::default();
            f(&mut c);
            c.validate().unwrap_err()
        };
        assert!(matches!(bad(|c| c.trials = 0), HarnessError::InvalidConfig(_)));
        assert!(matches!(bad(|c| c.tolerance = 0.0), HarnessError::InvalidConfig(_)));
        assert!(matches!(bad(|c| c.dims = vec![1]), HarnessError::InvalidConfig(_)));
        assert!(matches!(bad(|c| c.dims = vec![]), HarnessError::InvalidConfig(_)));
        assert_eq!(
            bad(|c| c.properties = vec!["nope".into()]),
            HarnessError::UnknownProperty("nope".into())
        );
    }
}
