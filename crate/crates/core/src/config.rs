//! Scenario configuration shared by the fluid and agent-level engines.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// How expected successes are computed when several attempt-groups share a zone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuccessMode {
    /// Each attempt-group `l` contends only against itself: `m (1 - 1/R)^(m - 1)`.
    Literal,
    /// Every group sees the zone total `M_i` in the exponent: `m (1 - 1/R)^(M_i - 1)`.
    Coupled,
}

impl SuccessMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SuccessMode::Literal => "literal",
            SuccessMode::Coupled => "coupled",
        }
    }
}

impl fmt::Display for SuccessMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuccessMode {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "literal" => Ok(SuccessMode::Literal),
            "coupled" => Ok(SuccessMode::Coupled),
            other => Err(ConfigError::InvalidValue {
                key: "success_mode".into(),
                value: other.into(),
                expected: "literal or coupled",
            }),
        }
    }
}

/// All parameters of one discovery scenario.
///
/// Durations are in seconds. The defaults are the LTE-A evaluation setting
/// (450 UEs, 22 resources, 30 ms zones every 10 s, 20 zones, 5 ms processing
/// delay, Beta(3, 4) activation) with the proposed backoff window of 3 and
/// at most 3 transmissions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub total_ues: u64,
    pub resources: u64,
    pub dz_length: f64,
    pub dz_interval: f64,
    pub dz_count: usize,
    pub max_transmissions: usize,
    pub backoff_window: usize,
    pub processing_delay: f64,
    pub alpha: f64,
    pub beta: f64,
    pub success_mode: SuccessMode,
    pub eq15_weighting: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            total_ues: 450,
            resources: 22,
            dz_length: 0.030,
            dz_interval: 10.0,
            dz_count: 20,
            max_transmissions: 3,
            backoff_window: 3,
            processing_delay: 0.005,
            alpha: 3.0,
            beta: 4.0,
            success_mode: SuccessMode::Coupled,
            eq15_weighting: true,
        }
    }
}

/// Field names in the order used by config files and CSV/JSON echoes.
pub const FIELD_NAMES: [&str; 12] = [
    "total_ues",
    "resources",
    "dz_length",
    "dz_interval",
    "dz_count",
    "max_transmissions",
    "backoff_window",
    "processing_delay",
    "alpha",
    "beta",
    "success_mode",
    "eq15_weighting",
];

impl ScenarioConfig {
    /// Checks every invariant and returns the config unchanged when it holds.
    pub fn validate(self) -> Result<Self, ConfigError> {
        fn positive(key: &'static str, v: f64) -> Result<(), ConfigError> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(ConfigError::Violation { key, reason: format!("must be > 0 and finite, got {v}") })
            }
        }
        fn at_least_one(key: &'static str, v: u64) -> Result<(), ConfigError> {
            if v >= 1 {
                Ok(())
            } else {
                Err(ConfigError::Violation { key, reason: "must be ≥ 1".into() })
            }
        }

        at_least_one("resources", self.resources)?;
        at_least_one("dz_count", self.dz_count as u64)?;
        at_least_one("max_transmissions", self.max_transmissions as u64)?;
        at_least_one("backoff_window", self.backoff_window as u64)?;
        positive("dz_length", self.dz_length)?;
        positive("dz_interval", self.dz_interval)?;
        positive("processing_delay", self.processing_delay)?;
        positive("alpha", self.alpha)?;
        positive("beta", self.beta)?;
        if self.backoff_window > self.dz_count {
            return Err(ConfigError::Violation {
                key: "backoff_window",
                reason: format!(
                    "must not exceed dz_count ({} > {})",
                    self.backoff_window, self.dz_count
                ),
            });
        }
        Ok(self)
    }

    /// Sets one field from its textual value, as found in a config file or flag.
    pub fn set_field(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        fn num<T: FromStr>(key: &str, value: &str, expected: &'static str) -> Result<T, ConfigError> {
            value.parse().map_err(|_| ConfigError::InvalidValue {
                key: key.into(),
                value: value.into(),
                expected,
            })
        }
        const INT: &str = "a non-negative integer";
        const REAL: &str = "a decimal number";
        match key {
            "total_ues" => self.total_ues = num(key, value, INT)?,
            "resources" => self.resources = num(key, value, INT)?,
            "dz_length" => self.dz_length = num(key, value, REAL)?,
            "dz_interval" => self.dz_interval = num(key, value, REAL)?,
            "dz_count" => self.dz_count = num(key, value, INT)?,
            "max_transmissions" => self.max_transmissions = num(key, value, INT)?,
            "backoff_window" => self.backoff_window = num(key, value, INT)?,
            "processing_delay" => self.processing_delay = num(key, value, REAL)?,
            "alpha" => self.alpha = num(key, value, REAL)?,
            "beta" => self.beta = num(key, value, REAL)?,
            "success_mode" => self.success_mode = value.parse()?,
            "eq15_weighting" => self.eq15_weighting = num(key, value, "true or false")?,
            other => return Err(ConfigError::UnknownKey(other.into())),
        }
        Ok(())
    }

    /// Textual value of one field; inverse of [`ScenarioConfig::set_field`].
    pub fn field(&self, key: &str) -> Option<String> {
        Some(match key {
            "total_ues" => self.total_ues.to_string(),
            "resources" => self.resources.to_string(),
            "dz_length" => self.dz_length.to_string(),
            "dz_interval" => self.dz_interval.to_string(),
            "dz_count" => self.dz_count.to_string(),
            "max_transmissions" => self.max_transmissions.to_string(),
            "backoff_window" => self.backoff_window.to_string(),
            "processing_delay" => self.processing_delay.to_string(),
            "alpha" => self.alpha.to_string(),
            "beta" => self.beta.to_string(),
            "success_mode" => self.success_mode.to_string(),
            "eq15_weighting" => self.eq15_weighting.to_string(),
            _ => return None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = ScenarioConfig::default();
        assert_eq!(cfg.total_ues, 450);
        assert_eq!(cfg.resources, 22);
        assert_eq!(cfg.dz_count, 20);
        assert_eq!(cfg.dz_interval, 10.0);
        assert_eq!(cfg.dz_length, 0.030);
        assert_eq!(cfg.processing_delay, 0.005);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn zero_resources_rejected() {
        let cfg = ScenarioConfig { resources: 0, ..Default::default() };
        let err = cfg.validate().unwrap_err();
        assert_eq!(err.to_string(), "resources must be ≥ 1");
    }

    #[test]
    fn window_longer_than_horizon_rejected() {
        let cfg = ScenarioConfig { backoff_window: 25, dz_count: 20, ..Default::default() };
        let err = cfg.validate().unwrap_err();
        assert!(err.to_string().contains("backoff_window"), "{err}");
    }

    #[test]
    fn zero_ues_is_allowed() {
        let cfg = ScenarioConfig { total_ues: 0, ..Default::default() };
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn non_positive_shapes_and_durations_rejected() {
        for cfg in [
            ScenarioConfig { alpha: 0.0, ..Default::default() },
            ScenarioConfig { beta: -1.0, ..Default::default() },
            ScenarioConfig { dz_length: 0.0, ..Default::default() },
            ScenarioConfig { dz_interval: f64::NAN, ..Default::default() },
            ScenarioConfig { max_transmissions: 0, ..Default::default() },
        ] {
            assert!(cfg.validate().is_err());
        }
    }

    #[test]
    fn field_text_round_trips() {
        let cfg = ScenarioConfig { dz_length: 0.1 + 0.2, success_mode: SuccessMode::Literal, ..Default::default() };
        let mut back = ScenarioConfig::default();
        for key in FIELD_NAMES {
            back.set_field(key, &cfg.field(key).unwrap()).unwrap();
        }
        assert_eq!(back, cfg);
    }
}
