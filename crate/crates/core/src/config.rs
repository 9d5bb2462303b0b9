//! JSON model configuration.
//!
//! Only the built-in model variants are reachable from JSON; custom functions
//! are constructed programmatically. Unknown keys are rejected so that config
//! files round-trip losslessly.

use crate::channel::{FadingModel, PathLossModel};
use crate::error::{Error, Result};
use crate::geometry::{NetworkModel, RadialIntensity};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PathLossConfig {
    G1 { alpha: f64 },
    G2 { alpha: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FadingConfig {
    Deterministic { h0: f64 },
    Nakagami { m: f64 },
    Moments { moments: [f64; 3] },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum IntensityConfig {
    Stationary {
        #[serde(default)]
        t_min: f64,
    },
    Lograd { r: f64 },
}

/// The (λ, P, path loss, fading, intensity) bundle in serializable form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub pathloss: PathLossConfig,
    pub fading: FadingConfig,
    pub intensity: IntensityConfig,
    pub lambda: f64,
    pub power: f64,
}

impl PathLossConfig {
    pub fn build(&self) -> Result<PathLossModel> {
        match *self {
            Self::G1 { alpha } => PathLossModel::inverse_shifted(alpha),
            Self::G2 { alpha } => PathLossModel::inverse_sum(alpha),
        }
    }
}

impl FadingConfig {
    pub fn build(&self) -> Result<FadingModel> {
        match *self {
            Self::Deterministic { h0 } => FadingModel::deterministic(h0),
            Self::Nakagami { m } => FadingModel::nakagami(m),
            Self::Moments { moments: [m1, m2, m3] } => FadingModel::custom_moments(m1, m2, m3),
        }
    }
}

impl IntensityConfig {
    pub fn build(&self) -> Result<RadialIntensity> {
        match *self {
            Self::Stationary { t_min } => RadialIntensity::stationary(t_min),
            Self::Lograd { r } => RadialIntensity::log_radial(r),
        }
    }
}

impl ModelConfig {
    pub fn build(&self) -> Result<NetworkModel> {
        NetworkModel::new(
            self.lambda,
            self.power,
            self.pathloss.build()?,
            self.fading.build()?,
            self.intensity.build()?,
        )
    }

    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ModelConfig {
        ModelConfig {
            pathloss: PathLossConfig::G2 { alpha: 4.0 },
            fading: FadingConfig::Nakagami { m: 5.0 },
            intensity: IntensityConfig::Stationary { t_min: 0.5 },
            lambda: 10.0,
            power: 1.0,
        }
    }

    #[test]
    fn round_trips_losslessly() {
        let cfg = sample();
        let json = cfg.to_json().unwrap();
        let back = ModelConfig::from_json(&json).unwrap();
        assert_eq!(cfg, back);
        assert_eq!(json, back.to_json().unwrap());
    }

    #[test]
    fn parses_the_documented_shape() {
        let json = r#"{
            "pathloss": {"kind": "g1", "alpha": 4.0},
            "fading": {"kind": "deterministic", "h0": 1.0},
            "intensity": {"kind": "lograd", "r": 0.5},
            "lambda": 2.0,
            "power": 1.0
        }"#;
        let cfg = ModelConfig::from_json(json).unwrap();
        let model = cfg.build().unwrap();
        assert_eq!(model.lambda(), 2.0);
        assert_eq!(model.intensity().support_lo(), 0.5);
    }

    #[test]
    fn rejects_unknown_keys() {
        let json = r#"{
            "pathloss": {"kind": "g2", "alpha": 4.0, "beta": 1.0},
            "fading": {"kind": "deterministic", "h0": 1.0},
            "intensity": {"kind": "stationary"},
            "lambda": 1.0,
            "power": 1.0
        }"#;
        assert!(ModelConfig::from_json(json).is_err());
        let json = r#"{
            "pathloss": {"kind": "g2", "alpha": 4.0},
            "fading": {"kind": "deterministic", "h0": 1.0},
            "intensity": {"kind": "stationary"},
            "lambda": 1.0,
            "power": 1.0,
            "extra": 3
        }"#;
        assert!(ModelConfig::from_json(json).is_err());
    }

    #[test]
    fn invalid_parameters_fail_at_build() {
        let mut cfg = sample();
        cfg.pathloss = PathLossConfig::G1 { alpha: 1.5 };
        assert!(cfg.build().is_err());
        let mut cfg = sample();
        cfg.fading = FadingConfig::Moments { moments: [1.0, 2.0, 1.0] };
        assert!(cfg.build().is_err());
        let mut cfg = sample();
        cfg.lambda = -1.0;
        assert!(cfg.build().is_err());
    }
}
