//! Named parameter presets.
//!
//! Each preset pins every parameter of one reproducible experiment: envelope
//! figures (fig1-*, appendix-d-*), simulated-CDF cells (fig2-*), the
//! exclusion-zone outage sweeps (fig3-*) and the sum-capacity sweeps
//! (fig4-*), so a figure is one command.

use crate::capacity::OutageScenario;
use crate::config::{FadingConfig, IntensityConfig, ModelConfig, PathLossConfig};
use crate::error::{Error, Result};
use crate::geometry::NetworkModel;

/// Logarithmically spaced grid, inclusive of both ends.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && lo > 0.0 && hi > lo);
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

/// Envelope-figure preset: one model evaluated at several intensities.
#[derive(Clone, Debug)]
pub struct BoundsPreset {
    pub name: &'static str,
    pub pathloss: PathLossConfig,
    pub fading: FadingConfig,
    pub intensity: IntensityConfig,
    pub lambdas: Vec<f64>,
}

impl BoundsPreset {
    pub fn model(&self, lambda: f64) -> Result<NetworkModel> {
        ModelConfig {
            pathloss: self.pathloss,
            fading: self.fading,
            intensity: self.intensity,
            lambda,
            power: 1.0,
        }
        .build()
    }
}

/// Simulated-CDF preset: one model, one intensity, a sample budget.
#[derive(Clone, Debug)]
pub struct SimulatePreset {
    pub name: &'static str,
    pub pathloss: PathLossConfig,
    pub fading: FadingConfig,
    pub intensity: IntensityConfig,
    pub lambda: f64,
    pub num_samples: usize,
}

impl SimulatePreset {
    pub fn model(&self) -> Result<NetworkModel> {
        ModelConfig {
            pathloss: self.pathloss,
            fading: self.fading,
            intensity: self.intensity,
            lambda: self.lambda,
            power: 1.0,
        }
        .build()
    }
}

/// Outage-capacity sweep preset (exclusion-zone scenario).
#[derive(Clone, Debug)]
pub struct OutagePreset {
    pub name: &'static str,
    pub pathloss: PathLossConfig,
    /// Fading on both the direct link and the interferers.
    pub fading: FadingConfig,
    pub d: f64,
    pub snr: f64,
    pub pg: f64,
    pub gamma: f64,
    /// Exclusion radius as a fraction of d.
    pub eta: f64,
    pub lambdas: Vec<f64>,
    pub num_samples: usize,
}

impl OutagePreset {
    pub fn scenario(&self, lambda: f64) -> Result<OutageScenario> {
        let interferers = ModelConfig {
            pathloss: self.pathloss,
            fading: self.fading,
            intensity: IntensityConfig::Stationary { t_min: self.eta * self.d },
            lambda,
            power: 1.0,
        }
        .build()?;
        OutageScenario::new(self.d, self.snr, self.pg, self.gamma, self.fading.build()?, interferers)
    }
}

/// Sum-capacity sweep preset.
#[derive(Clone, Debug)]
pub struct SumcapPreset {
    pub name: &'static str,
    pub pathloss: PathLossConfig,
    pub fading: FadingConfig,
    pub snr: f64,
    pub lambdas: Vec<f64>,
    pub num_samples: usize,
}

impl SumcapPreset {
    pub fn model(&self, lambda: f64) -> Result<NetworkModel> {
        ModelConfig {
            pathloss: self.pathloss,
            fading: self.fading,
            intensity: IntensityConfig::Stationary { t_min: 0.0 },
            lambda,
            power: 1.0,
        }
        .build()
    }
}

fn pathloss_by_tag(tag: &str) -> Option<PathLossConfig> {
    match tag {
        "g1" => Some(PathLossConfig::G1 { alpha: 4.0 }),
        "g2" => Some(PathLossConfig::G2 { alpha: 4.0 }),
        _ => None,
    }
}

/// fig1-{g1,g2}[-nofading]: envelope curves at α = 4, λ ∈ {5, 25, 100},
/// Nakagami m = 5 by default. appendix-d-{g1,g2}: the log-radial field at
/// r = 0.5 with the same intensities.
pub fn bounds_preset(name: &str) -> Option<BoundsPreset> {
    let lambdas = vec![5.0, 25.0, 100.0];
    let (tag, fading, intensity): (&str, FadingConfig, IntensityConfig) = match name {
        "fig1-g1" => ("g1", FadingConfig::Nakagami { m: 5.0 }, IntensityConfig::Stationary { t_min: 0.0 }),
        "fig1-g2" => ("g2", FadingConfig::Nakagami { m: 5.0 }, IntensityConfig::Stationary { t_min: 0.0 }),
        "fig1-g1-nofading" => ("g1", FadingConfig::Deterministic { h0: 1.0 }, IntensityConfig::Stationary { t_min: 0.0 }),
        "fig1-g2-nofading" => ("g2", FadingConfig::Deterministic { h0: 1.0 }, IntensityConfig::Stationary { t_min: 0.0 }),
        "appendix-d-g1" => ("g1", FadingConfig::Deterministic { h0: 1.0 }, IntensityConfig::Lograd { r: 0.5 }),
        "appendix-d-g2" => ("g2", FadingConfig::Deterministic { h0: 1.0 }, IntensityConfig::Lograd { r: 0.5 }),
        _ => return None,
    };
    Some(BoundsPreset {
        name: leak_name(name),
        pathloss: pathloss_by_tag(tag)?,
        fading,
        intensity,
        lambdas,
    })
}

/// fig2-{g1,g2}-a{3,5}[-m1]: simulated-CDF cells at λ = 0.1 with 10⁴ samples;
/// deterministic fading by default, Rayleigh (m = 1) rows with the -m1
/// suffix. Plain "fig2" aliases fig2-g2-a3. "sim-lambda10" is the λ = 10
/// containment demo.
pub fn simulate_preset(name: &str) -> Option<SimulatePreset> {
    if name == "fig2" {
        return simulate_preset("fig2-g2-a3");
    }
    if name == "sim-lambda10" {
        return Some(SimulatePreset {
            name: "sim-lambda10",
            pathloss: PathLossConfig::G2 { alpha: 4.0 },
            fading: FadingConfig::Deterministic { h0: 1.0 },
            intensity: IntensityConfig::Stationary { t_min: 0.0 },
            lambda: 10.0,
            num_samples: 10_000,
        });
    }
    let rest = name.strip_prefix("fig2-")?;
    let (rest, fading) = match rest.strip_suffix("-m1") {
        Some(r) => (r, FadingConfig::Nakagami { m: 1.0 }),
        None => (rest, FadingConfig::Deterministic { h0: 1.0 }),
    };
    let (model_tag, alpha_tag) = rest.split_once("-a")?;
    let alpha: f64 = match alpha_tag {
        "3" => 3.0,
        "5" => 5.0,
        _ => return None,
    };
    let pathloss = match model_tag {
        "g1" => PathLossConfig::G1 { alpha },
        "g2" => PathLossConfig::G2 { alpha },
        _ => return None,
    };
    Some(SimulatePreset {
        name: leak_name(name),
        pathloss,
        fading,
        intensity: IntensityConfig::Stationary { t_min: 0.0 },
        lambda: 0.1,
        num_samples: 10_000,
    })
}

/// fig3-{g1,g2}: exclusion-zone outage sweep. SNR 20 dB, α = 4, d = 1,
/// PG = 100, η = 0.5, γ = 0.1, Nakagami m = 5 on every link, ten log-spaced
/// intensities in [1, 100], 10⁴ samples per point.
pub fn outage_preset(name: &str) -> Option<OutagePreset> {
    let tag = name.strip_prefix("fig3-")?;
    Some(OutagePreset {
        name: leak_name(name),
        pathloss: pathloss_by_tag(tag)?,
        fading: FadingConfig::Nakagami { m: 5.0 },
        d: 1.0,
        snr: 100.0,
        pg: 100.0,
        gamma: 0.1,
        eta: 0.5,
        lambdas: log_spaced(1.0, 100.0, 10),
        num_samples: 10_000,
    })
}

/// fig4-{g1,g2}: stationary sum-capacity sweep at SNR 0 dB, α = 4,
/// Nakagami m = 5, ten log-spaced intensities in [1, 100].
pub fn sumcap_preset(name: &str) -> Option<SumcapPreset> {
    let tag = name.strip_prefix("fig4-")?;
    Some(SumcapPreset {
        name: leak_name(name),
        pathloss: pathloss_by_tag(tag)?,
        fading: FadingConfig::Nakagami { m: 5.0 },
        snr: 1.0,
        lambdas: log_spaced(1.0, 100.0, 10),
        num_samples: 10_000,
    })
}

/// Every recognized preset name, for --help and error messages.
pub fn preset_names() -> Vec<&'static str> {
    let mut names = vec![
        "fig1-g1",
        "fig1-g2",
        "fig1-g1-nofading",
        "fig1-g2-nofading",
        "appendix-d-g1",
        "appendix-d-g2",
        "fig2",
        "sim-lambda10",
        "fig3-g1",
        "fig3-g2",
        "fig4-g1",
        "fig4-g2",
    ];
    for g in ["g1", "g2"] {
        for a in ["3", "5"] {
            names.push(leak_name(&format!("fig2-{g}-a{a}")));
            names.push(leak_name(&format!("fig2-{g}-a{a}-m1")));
        }
    }
    names
}

/// Preset names are a small closed set; interning keeps the structs Copy-ish
/// without threading lifetimes through the CLI.
fn leak_name(name: &str) -> &'static str {
    use std::collections::HashSet;
    use std::sync::{Mutex, OnceLock};
    static INTERNED: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    let set = INTERNED.get_or_init(|| Mutex::new(HashSet::new()));
    let mut guard = set.lock().unwrap();
    if let Some(existing) = guard.get(name) {
        return existing;
    }
    let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
    guard.insert(leaked);
    leaked
}

/// Convenience: does any preset family know this name?
pub fn lookup_kind(name: &str) -> Option<&'static str> {
    if bounds_preset(name).is_some() {
        Some("bounds")
    } else if simulate_preset(name).is_some() {
        Some("simulate")
    } else if outage_preset(name).is_some() {
        Some("outage")
    } else if sumcap_preset(name).is_some() {
        Some("sumcap")
    } else {
        None
    }
}

/// Fails with the list of valid names when a preset is unknown.
pub fn unknown_preset(name: &str) -> Error {
    Error::Config(format!("unknown preset {name:?}; valid names: {}", preset_names().join(", ")))
}
