//! Model flags shared by the model-building subcommands. Every config key has
//! a flag counterpart; explicit flags override the config file.

use clap::Args;
use pppkit_core::config::{FadingConfig, IntensityConfig, ModelConfig, PathLossConfig};
use pppkit_core::error::{Error, Result};

#[derive(Args, Clone, Debug, Default)]
pub struct ModelArgs {
    /// Path-loss family: g1 = 1/(1+t)^α, g2 = 1/(1+t^α)
    #[arg(long, value_parser = ["g1", "g2"])]
    pub pathloss: Option<String>,

    /// Path-loss exponent α (must exceed 2)
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Fading family
    #[arg(long, value_parser = ["deterministic", "nakagami", "moments"])]
    pub fading: Option<String>,

    /// Deterministic fading value
    #[arg(long)]
    pub h0: Option<f64>,

    /// Nakagami shape (power-domain, unit mean)
    #[arg(long)]
    pub m: Option<f64>,

    /// Moments-only fading: m1,m2,m3
    #[arg(long, value_delimiter = ',', num_args = 3)]
    pub moments: Option<Vec<f64>>,

    /// Radial intensity family
    #[arg(long, value_parser = ["stationary", "lograd"])]
    pub intensity: Option<String>,

    /// Exclusion radius of the stationary disk
    #[arg(long)]
    pub t_min: Option<f64>,

    /// Inner radius of the log-radial field
    #[arg(long)]
    pub r_inner: Option<f64>,

    /// Transmitter intensity parameter λ
    #[arg(long)]
    pub lambda: Option<f64>,

    /// Common transmit power P
    #[arg(long)]
    pub power: Option<f64>,
}

impl ModelArgs {
    /// Overlay these flags on a base config (from a file or a preset), or on
    /// the documented defaults: g2 α=4, H≡1, stationary disk, λ=1, P=1.
    pub fn resolve(&self, base: Option<ModelConfig>) -> Result<ModelConfig> {
        let mut cfg = base.unwrap_or(ModelConfig {
            pathloss: PathLossConfig::G2 { alpha: 4.0 },
            fading: FadingConfig::Deterministic { h0: 1.0 },
            intensity: IntensityConfig::Stationary { t_min: 0.0 },
            lambda: 1.0,
            power: 1.0,
        });
        let alpha = self.alpha.unwrap_or(match cfg.pathloss {
            PathLossConfig::G1 { alpha } | PathLossConfig::G2 { alpha } => alpha,
        });
        cfg.pathloss = match self.pathloss.as_deref() {
            Some("g1") => PathLossConfig::G1 { alpha },
            Some("g2") => PathLossConfig::G2 { alpha },
            Some(other) => return Err(Error::Config(format!("unknown path-loss kind {other:?}"))),
            None => match cfg.pathloss {
                PathLossConfig::G1 { .. } => PathLossConfig::G1 { alpha },
                PathLossConfig::G2 { .. } => PathLossConfig::G2 { alpha },
            },
        };
        if let Some(kind) = self.fading.as_deref() {
            cfg.fading = match kind {
                "deterministic" => FadingConfig::Deterministic { h0: self.h0.unwrap_or(1.0) },
                "nakagami" => FadingConfig::Nakagami {
                    m: self.m.ok_or_else(|| Error::Config("--fading nakagami needs --m".into()))?,
                },
                "moments" => {
                    let v = self
                        .moments
                        .as_ref()
                        .ok_or_else(|| Error::Config("--fading moments needs --moments m1,m2,m3".into()))?;
                    FadingConfig::Moments { moments: [v[0], v[1], v[2]] }
                }
                other => return Err(Error::Config(format!("unknown fading kind {other:?}"))),
            };
        } else {
            if let Some(h0) = self.h0 {
                cfg.fading = FadingConfig::Deterministic { h0 };
            }
            if let Some(m) = self.m {
                cfg.fading = FadingConfig::Nakagami { m };
            }
        }
        if let Some(kind) = self.intensity.as_deref() {
            cfg.intensity = match kind {
                "stationary" => IntensityConfig::Stationary { t_min: self.t_min.unwrap_or(0.0) },
                "lograd" => IntensityConfig::Lograd {
                    r: self
                        .r_inner
                        .ok_or_else(|| Error::Config("--intensity lograd needs --r-inner".into()))?,
                },
                other => return Err(Error::Config(format!("unknown intensity kind {other:?}"))),
            };
        } else {
            match (&mut cfg.intensity, self.t_min, self.r_inner) {
                (IntensityConfig::Stationary { t_min }, Some(t), _) => *t_min = t,
                (IntensityConfig::Lograd { r }, _, Some(radius)) => *r = radius,
                _ => {}
            }
        }
        if let Some(l) = self.lambda {
            cfg.lambda = l;
        }
        if let Some(p) = self.power {
            cfg.power = p;
        }
        Ok(cfg)
    }
}

/// Comma-separated λ list; an empty list is a usage error.
pub fn parse_lambdas(list: &[f64]) -> Result<Vec<f64>> {
    if list.is_empty() {
        return Err(Error::Config("at least one intensity value is required".into()));
    }
    if list.iter().any(|l| !(*l > 0.0) || !l.is_finite()) {
        return Err(Error::Config(format!("intensities must be positive and finite: {list:?}")));
    }
    Ok(list.to_vec())
}
