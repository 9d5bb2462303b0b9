//! Path-loss and fading models.
//!
//! Path loss is a bounded, monotone non-increasing function of distance that
//! decays at least as fast as t^{-α} with α > 2. Fading is the per-transmitter
//! power gain; the envelope machinery only ever needs its first three moments,
//! so a moments-only variant exists for distributions without a sampler.

use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, Gamma};
use std::fmt;
use std::sync::Arc;

/// Number of probe points used to vet custom path-loss functions.
const PATHLOSS_PROBE_POINTS: usize = 1000;

/// Bounded monotone non-increasing attenuation G(t).
#[derive(Clone)]
pub enum PathLossModel {
    /// G(t) = 1/(1+t)^α
    InverseShifted { alpha: f64 },
    /// G(t) = 1/(1+t^α)
    InverseSum { alpha: f64 },
    /// User-supplied attenuation with a declared supremum.
    Custom {
        eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        bound: f64,
        alpha: f64,
    },
}

impl fmt::Debug for PathLossModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InverseShifted { alpha } => write!(f, "InverseShifted {{ alpha: {alpha} }}"),
            Self::InverseSum { alpha } => write!(f, "InverseSum {{ alpha: {alpha} }}"),
            Self::Custom { bound, alpha, .. } => {
                write!(f, "Custom {{ bound: {bound}, alpha: {alpha} }}")
            }
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 2.0) || !alpha.is_finite() {
        return Err(Error::Validation(format!(
            "path-loss exponent must satisfy alpha > 2, got {alpha}"
        )));
    }
    Ok(())
}

/// x^a, with an integer fast path (α is almost always 3, 4 or 5).
#[inline]
pub(crate) fn pow_alpha(x: f64, a: f64) -> f64 {
    if a.fract() == 0.0 && (0.0..=64.0).contains(&a) {
        x.powi(a as i32)
    } else {
        x.powf(a)
    }
}

impl PathLossModel {
    pub fn inverse_shifted(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self::InverseShifted { alpha })
    }

    pub fn inverse_sum(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self::InverseSum { alpha })
    }

    /// Custom attenuation. The function must be nonnegative, bounded by
    /// `bound` and monotone non-increasing; all three are probed on a
    /// 1000-point grid at construction since nothing else can be inspected.
    pub fn custom<F>(eval: F, bound: f64, alpha: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        check_alpha(alpha)?;
        if !(bound > 0.0) || !bound.is_finite() {
            return Err(Error::Validation(format!("custom bound must be positive, got {bound}")));
        }
        let g0 = eval(0.0);
        if !g0.is_finite() || g0 < 0.0 || g0 > bound * (1.0 + 1e-12) {
            return Err(Error::Validation(format!(
                "custom path loss must have finite G(0) in [0, bound], got {g0}"
            )));
        }
        let mut prev = g0;
        for i in 0..PATHLOSS_PROBE_POINTS {
            // log-spaced probe from 1e-6 to 1e6
            let t = 10f64.powf(-6.0 + 12.0 * i as f64 / (PATHLOSS_PROBE_POINTS - 1) as f64);
            let g = eval(t);
            if !g.is_finite() || g < 0.0 {
                return Err(Error::Validation(format!(
                    "custom path loss is negative or non-finite at t={t}: {g}"
                )));
            }
            if g > bound * (1.0 + 1e-12) {
                return Err(Error::Validation(format!(
                    "custom path loss exceeds its declared bound at t={t}: {g} > {bound}"
                )));
            }
            if g > prev * (1.0 + 1e-12) {
                return Err(Error::Validation(format!(
                    "custom path loss is not monotone non-increasing near t={t}"
                )));
            }
            prev = g;
        }
        Ok(Self::Custom { eval: Arc::new(eval), bound, alpha })
    }

    /// Decay exponent α.
    pub fn alpha(&self) -> f64 {
        match self {
            Self::InverseShifted { alpha } | Self::InverseSum { alpha } | Self::Custom { alpha, .. } => *alpha,
        }
    }

    /// Supremum of G (its value at 0 for the built-ins).
    pub fn bound(&self) -> f64 {
        match self {
            Self::InverseShifted { .. } | Self::InverseSum { .. } => 1.0,
            Self::Custom { bound, .. } => *bound,
        }
    }

    /// G(t) without the domain check; callers guarantee t ≥ 0.
    #[inline]
    pub(crate) fn value(&self, t: f64) -> f64 {
        match self {
            Self::InverseShifted { alpha } => 1.0 / pow_alpha(1.0 + t, *alpha),
            Self::InverseSum { alpha } => 1.0 / (1.0 + pow_alpha(t, *alpha)),
            Self::Custom { eval, .. } => eval(t),
        }
    }

    /// Evaluate G(t). Negative distances are a domain error.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if t < 0.0 || t.is_nan() {
            return Err(Error::Domain(format!("path loss is defined for t >= 0, got {t}")));
        }
        Ok(self.value(t))
    }
}

/// Distribution of the per-transmitter power fading coefficient H.
#[derive(Clone, Debug)]
pub enum FadingModel {
    /// H ≡ h0 (no fading).
    Deterministic { h0: f64 },
    /// Gamma-distributed power gain with shape m and unit mean
    /// (the power-domain Nakagami-m model; m = 1 is Rayleigh).
    NakagamiPower { m: f64 },
    /// Moments-only fading: usable for envelopes, not for simulation.
    CustomMoments { m1: f64, m2: f64, m3: f64 },
}

impl FadingModel {
    pub fn deterministic(h0: f64) -> Result<Self> {
        if !(h0 > 0.0) || !h0.is_finite() {
            return Err(Error::Validation(format!("deterministic fading needs h0 > 0, got {h0}")));
        }
        Ok(Self::Deterministic { h0 })
    }

    pub fn nakagami(m: f64) -> Result<Self> {
        if !(m >= 0.5) || !m.is_finite() {
            return Err(Error::Validation(format!("Nakagami shape must satisfy m >= 0.5, got {m}")));
        }
        Ok(Self::NakagamiPower { m })
    }

    /// Explicit first three moments. They must be positive, finite and
    /// satisfy the Jensen ordering m3 ≥ m2^{3/2} that every genuine
    /// distribution obeys.
    pub fn custom_moments(m1: f64, m2: f64, m3: f64) -> Result<Self> {
        for (name, v) in [("m1", m1), ("m2", m2), ("m3", m3)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Validation(format!("fading moment {name} must be positive and finite, got {v}")));
            }
        }
        if m3 < m2.powf(1.5) * (1.0 - 1e-12) {
            return Err(Error::Validation(format!(
                "fading moments violate Jensen's inequality: m3 = {m3} < m2^(3/2) = {}",
                m2.powf(1.5)
            )));
        }
        Ok(Self::CustomMoments { m1, m2, m3 })
    }

    /// E[H^k] for k in {1, 2, 3}.
    pub fn moment(&self, k: u32) -> Result<f64> {
        if !(1..=3).contains(&k) {
            return Err(Error::Domain(format!("fading moments are defined for k in {{1,2,3}}, got {k}")));
        }
        Ok(match self {
            Self::Deterministic { h0 } => h0.powi(k as i32),
            // E[H^k] = Γ(m+k)/(Γ(m) m^k) = Π_{j=0}^{k−1} (m+j)/m for integer k
            Self::NakagamiPower { m } => (0..k).map(|j| (m + j as f64) / m).product(),
            Self::CustomMoments { m1, m2, m3 } => match k {
                1 => *m1,
                2 => *m2,
                _ => *m3,
            },
        })
    }

    /// m_{H³} / (m_{H²})^{3/2}; equals 1 exactly when fading is deterministic.
    pub fn ratio(&self) -> f64 {
        match self {
            Self::Deterministic { .. } => 1.0,
            _ => {
                let m2 = self.moment(2).expect("k=2 is valid");
                let m3 = self.moment(3).expect("k=3 is valid");
                m3 / m2.powf(1.5)
            }
        }
    }

    /// Whether `sample` / `sampler` are available.
    pub fn has_sampler(&self) -> bool {
        !matches!(self, Self::CustomMoments { .. })
    }

    /// Prepared sampler for hot loops.
    pub fn sampler(&self) -> Result<FadingSampler> {
        match self {
            Self::Deterministic { h0 } => Ok(FadingSampler::Deterministic(*h0)),
            Self::NakagamiPower { m } => {
                let gamma = Gamma::new(*m, 1.0 / *m)
                    .map_err(|e| Error::Validation(format!("gamma sampler construction failed: {e}")))?;
                Ok(FadingSampler::Gamma(gamma))
            }
            Self::CustomMoments { .. } => Err(Error::Unsupported(
                "moments-only fading has no sampler; use deterministic or nakagami".into(),
            )),
        }
    }

    /// One draw of H.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        Ok(self.sampler()?.sample(rng))
    }

    /// Density q(h), needed when averaging over the direct-link fading.
    /// Moments-only fading has none.
    pub fn density(&self, h: f64) -> Result<f64> {
        match self {
            Self::Deterministic { .. } => Err(Error::Unsupported(
                "deterministic fading is a point mass; integrate by evaluation instead".into(),
            )),
            Self::NakagamiPower { m } => {
                if h < 0.0 {
                    return Ok(0.0);
                }
                if h == 0.0 {
                    // limit of h^{m-1} as h → 0⁺
                    return Ok(match m.partial_cmp(&1.0).unwrap() {
                        std::cmp::Ordering::Less => f64::INFINITY,
                        std::cmp::Ordering::Equal => 1.0,
                        std::cmp::Ordering::Greater => 0.0,
                    });
                }
                // Gamma(shape m, scale 1/m): m^m h^{m-1} e^{-mh} / Γ(m)
                let ln = m * m.ln() + (m - 1.0) * h.ln() - m * h - crate::special::ln_gamma(*m);
                Ok(ln.exp())
            }
            Self::CustomMoments { .. } => {
                Err(Error::Unsupported("moments-only fading has no density".into()))
            }
        }
    }
}

/// Sampler resolved once per simulation run.
#[derive(Clone, Copy, Debug)]
pub enum FadingSampler {
    Deterministic(f64),
    Gamma(Gamma<f64>),
}

impl FadingSampler {
    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Self::Deterministic(h0) => *h0,
            Self::Gamma(g) => g.sample(rng),
        }
    }
}
