//! Tunable caps for the searches, loadable from TOML or JSON.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid TOML config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("invalid JSON config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("config value out of range: {0}")]
    Range(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    /// Largest `a` tried in the feasibility search.
    pub a_max: u32,
    /// Largest `b` tried in the feasibility search.
    pub b_max: u32,
    /// Largest `m` in the color-requirement sweep.
    pub m_max: u32,
    /// Decimal exponent grid for region scans: `exp_lo, exp_lo + exp_step, ...` up to `exp_hi`.
    pub exp_lo: f64,
    pub exp_hi: f64,
    pub exp_step: f64,
    /// Bisection resolution for the boundary exponent.
    pub exp_resolution: f64,
    /// Most colorings the brute-force search may visit.
    pub enumeration_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            a_max: 64,
            b_max: 64,
            m_max: 400,
            exp_lo: 0.5,
            exp_hi: 250.0,
            exp_step: 0.5,
            exp_resolution: 0.1,
            enumeration_budget: 1 << 24,
        }
    }
}

impl SearchConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: SearchConfig = toml::from_str(text)?;
        cfg.validate()
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: SearchConfig = serde_json::from_str(text)?;
        cfg.validate()
    }

    fn validate(self) -> Result<Self, ConfigError> {
        if self.a_max == 0 || self.b_max == 0 || self.m_max < 2 || self.enumeration_budget == 0 {
            return Err(ConfigError::Range("caps must be positive and m_max ≥ 2".into()));
        }
        if !(self.exp_step > 0.0 && self.exp_resolution > 0.0 && self.exp_lo < self.exp_hi && self.exp_hi <= 300.0) {
            return Err(ConfigError::Range("grid needs exp_lo < exp_hi ≤ 300 and positive steps".into()));
        }
        Ok(self)
    }

    /// The exponent grid, built by integer stepping so it is reproducible.
    pub fn grid(&self) -> Vec<f64> {
        let steps = ((self.exp_hi - self.exp_lo) / self.exp_step + 1e-9).floor() as usize;
        (0..=steps).map(|i| self.exp_lo + i as f64 * self.exp_step).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_partial_toml() {
        let cfg = SearchConfig::from_toml("a_max = 8\nexp_step = 1.0\n").unwrap();
        assert_eq!(cfg.a_max, 8);
        assert_eq!(cfg.b_max, 64);
        assert_eq!(cfg.grid().len(), 250);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(SearchConfig::from_toml("a_max = 0").is_err());
        assert!(SearchConfig::from_json("{\"exp_hi\": 400.0}").is_err());
        assert!(SearchConfig::from_toml("bogus = 1").is_err());
    }

    #[test]
    fn default_grid() {
        let g = SearchConfig::default().grid();
        assert_eq!(g.len(), 500);
        assert_eq!(g[0], 0.5);
        assert_eq!(*g.last().unwrap(), 250.0);
    }
}
