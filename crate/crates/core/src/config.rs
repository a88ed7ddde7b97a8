use serde::{Deserialize, Serialize};

use crate::policy::DEFAULT_EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Json,
    CsvSummary,
}

/// Size caps for the exhaustive procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveLimits {
    /// Full subset scan for Tutte witnesses.
    pub tutte: usize,
    /// Subset enumeration for exact toughness.
    pub toughness: usize,
    /// Exact maximum number of edge-disjoint perfect matchings.
    pub pm_family: usize,
}

impl Default for ExhaustiveLimits {
    fn default() -> Self {
        Self {
            tutte: 16,
            toughness: 20,
            pm_family: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub epsilon: f64,
    pub limits: ExhaustiveLimits,
    /// Alternative perfect matchings tried per level while peeling.
    pub backtrack_limit: usize,
    pub seed: u64,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_EPSILON,
            limits: ExhaustiveLimits::default(),
            backtrack_limit: 200,
            seed: 0,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(format!("epsilon must be positive, got {}", self.epsilon));
        }
        let l = self.limits;
        if l.tutte < 4 || l.toughness < 4 || l.pm_family < 4 {
            return Err("exhaustive limits must be at least 4".into());
        }
        if l.tutte > 64 || l.toughness > 64 || l.pm_family > 64 {
            return Err("exhaustive limits above 64 are not supported".into());
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = RunConfig::default();
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.limits.tutte, 16);
        assert_eq!(cfg.limits.toughness, 20);
        assert_eq!(cfg.limits.pm_family, 12);
        assert_eq!(cfg.backtrack_limit, 200);
    }

    #[test]
    fn rejects_bad_values() {
        let mut cfg = RunConfig { epsilon: 0.0, ..RunConfig::default() };
        assert!(cfg.validate().is_err());
        cfg.epsilon = 1e-9;
        cfg.limits.tutte = 3;
        assert!(cfg.validate().is_err());
    }
}
