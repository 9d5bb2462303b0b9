//! The JSON run configuration: a model section, an optional task section with
//! subcommand parameters, an output section and a seed. Unknown keys are
//! rejected and files round-trip losslessly.

use pppkit_core::config::ModelConfig;
use pppkit_core::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<TaskConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TaskConfig {
    Bounds {
        lambdas: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grid: Option<GridConfig>,
    },
    Simulate {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        num_samples: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tail_tolerance: Option<f64>,
    },
    Outage {
        d: f64,
        snr: f64,
        pg: f64,
        gamma: f64,
        lambdas: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        num_samples: Option<usize>,
    },
    Sumcap {
        snr: f64,
        lambdas: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        num_samples: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
}

impl RunConfig {
    pub fn load(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
        Self::from_json(&text)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Config(e.to_string()))
    }
}

impl GridConfig {
    pub fn points_vec(&self) -> Result<Vec<f64>> {
        if self.points < 2 || !(self.max > self.min) {
            return Err(Error::Config(format!(
                "grid needs points >= 2 and max > min, got {self:?}"
            )));
        }
        let n = self.points;
        Ok((0..n)
            .map(|i| self.min + (self.max - self.min) * i as f64 / (n - 1) as f64)
            .collect())
    }
}
