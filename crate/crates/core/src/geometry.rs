//! Radial intensity models and exact sampling of transmitter distances.
//!
//! Interference depends on transmitter positions only through their distances
//! to the reference point, so the planar process is handled entirely through
//! its distance-mapped image on [0, ∞): a Poisson process with mean measure
//! λ∫p(t)dt. Sampling therefore happens directly in distance space.

use crate::channel::{FadingModel, PathLossModel};
use crate::error::{Error, Result};
use crate::quad;
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use std::fmt;
use std::sync::Arc;

const TWO_PI: f64 = std::f64::consts::TAU;

/// Probe grid size for custom density validation.
const GROWTH_PROBE_POINTS: usize = 256;
/// Number of trailing probe points used for the log-log slope fit.
const GROWTH_TAIL_POINTS: usize = 64;
/// Resolution of the tabulated inverse CDF used to sample custom densities.
const CUSTOM_INVERSE_TABLE: usize = 2048;

/// Density p(t) of the distance-mapped point process, per unit λ.
#[derive(Clone)]
pub enum RadialIntensity {
    /// p(t) = 2πt on t ≥ t_min: stationary planar process, optionally with an
    /// exclusion disk of radius t_min around the reference point.
    StationaryDisk { t_min: f64 },
    /// p(t) = 2π/t on t ≥ r: the non-stationary power-law field whose planar
    /// density decays as 1/‖x‖².
    LogRadial { r: f64 },
    /// User-supplied density with a declared growth budget.
    Custom {
        density: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        support_lo: f64,
        /// α of the paired path-loss model; p must be O(t^{α−1−ε}).
        growth_alpha: f64,
        growth_epsilon: f64,
    },
}

impl fmt::Debug for RadialIntensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::StationaryDisk { t_min } => write!(f, "StationaryDisk {{ t_min: {t_min} }}"),
            Self::LogRadial { r } => write!(f, "LogRadial {{ r: {r} }}"),
            Self::Custom { support_lo, growth_alpha, growth_epsilon, .. } => write!(
                f,
                "Custom {{ support_lo: {support_lo}, growth_alpha: {growth_alpha}, growth_epsilon: {growth_epsilon} }}"
            ),
        }
    }
}

impl RadialIntensity {
    pub fn stationary(t_min: f64) -> Result<Self> {
        if !(t_min >= 0.0) || !t_min.is_finite() {
            return Err(Error::Validation(format!("exclusion radius must be >= 0, got {t_min}")));
        }
        Ok(Self::StationaryDisk { t_min })
    }

    pub fn log_radial(r: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Validation(format!("inner radius must be > 0, got {r}")));
        }
        Ok(Self::LogRadial { r })
    }

    /// Custom density. Validated on a deterministic log-spaced probe grid:
    /// nonnegative everywhere, and the tail log-log slope must stay below
    /// α−1−ε (the growth needed for finite interference moments).
    pub fn custom<F>(density: F, support_lo: f64, growth_alpha: f64, growth_epsilon: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(support_lo >= 0.0) || !support_lo.is_finite() {
            return Err(Error::Validation(format!("support lower edge must be >= 0, got {support_lo}")));
        }
        if !(growth_epsilon > 0.0) {
            return Err(Error::Validation(format!("growth epsilon must be > 0, got {growth_epsilon}")));
        }
        if !(growth_alpha > 2.0) {
            return Err(Error::Validation(format!("growth alpha must exceed 2, got {growth_alpha}")));
        }
        let lo = support_lo.max(1e-3);
        let hi = 1e6f64;
        let mut pts = Vec::with_capacity(GROWTH_PROBE_POINTS);
        for i in 0..GROWTH_PROBE_POINTS {
            let t = lo * (hi / lo).powf(i as f64 / (GROWTH_PROBE_POINTS - 1) as f64);
            let p = density(t);
            if !p.is_finite() || p < 0.0 {
                return Err(Error::Validation(format!("custom density invalid at t={t}: {p}")));
            }
            pts.push((t, p));
        }
        // least-squares slope of ln p vs ln t over the last probe points
        let tail: Vec<(f64, f64)> = pts[GROWTH_PROBE_POINTS - GROWTH_TAIL_POINTS..]
            .iter()
            .filter(|(_, p)| *p > 0.0)
            .map(|(t, p)| (t.ln(), p.ln()))
            .collect();
        if tail.len() >= 8 {
            let n = tail.len() as f64;
            let sx: f64 = tail.iter().map(|(x, _)| x).sum();
            let sy: f64 = tail.iter().map(|(_, y)| y).sum();
            let sxx: f64 = tail.iter().map(|(x, _)| x * x).sum();
            let sxy: f64 = tail.iter().map(|(x, y)| x * y).sum();
            let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            let budget = growth_alpha - 1.0 - growth_epsilon;
            if slope > budget + 0.01 {
                return Err(Error::Validation(format!(
                    "custom density grows like t^{slope:.3}, exceeding the t^{budget:.3} budget"
                )));
            }
        }
        Ok(Self::Custom {
            density: Arc::new(density),
            support_lo,
            growth_alpha,
            growth_epsilon,
        })
    }

    /// Lower edge of the support.
    pub fn support_lo(&self) -> f64 {
        match self {
            Self::StationaryDisk { t_min } => *t_min,
            Self::LogRadial { r } => *r,
            Self::Custom { support_lo, .. } => *support_lo,
        }
    }

    /// p(t); zero outside the support.
    pub fn density(&self, t: f64) -> f64 {
        match self {
            Self::StationaryDisk { t_min } => {
                if t >= *t_min {
                    TWO_PI * t
                } else {
                    0.0
                }
            }
            Self::LogRadial { r } => {
                if t >= *r {
                    TWO_PI / t
                } else {
                    0.0
                }
            }
            Self::Custom { density, support_lo, .. } => {
                if t >= *support_lo {
                    density(t)
                } else {
                    0.0
                }
            }
        }
    }

    /// λ·∫_0^t p(s) ds. Closed form for the built-ins, quadrature for custom
    /// densities. Returns 0 below the support edge.
    pub fn cumulative(&self, lambda: f64, t: f64) -> Result<f64> {
        if t.is_nan() {
            return Err(Error::Domain("cumulative measure of NaN".into()));
        }
        let lo = self.support_lo();
        if t <= lo {
            return Ok(0.0);
        }
        Ok(match self {
            Self::StationaryDisk { t_min } => {
                lambda * std::f64::consts::PI * (t * t - t_min * t_min)
            }
            Self::LogRadial { r } => lambda * TWO_PI * (t / r).ln(),
            Self::Custom { density, .. } => {
                let density = density.clone();
                lambda * quad::integrate(move |s| density(s), lo, t, 1e-10, 1e-300)?
            }
        })
    }

    /// Sampler for the normalized density restricted to [support, window].
    pub(crate) fn window_sampler(&self, window: f64) -> Result<WindowSampler> {
        let lo = self.support_lo();
        if !(window > lo) {
            return Err(Error::Domain(format!(
                "window {window} does not exceed the support edge {lo}"
            )));
        }
        Ok(match self {
            Self::StationaryDisk { t_min } => WindowSampler::Disk {
                t_min_sq: t_min * t_min,
                span_sq: window * window - t_min * t_min,
            },
            Self::LogRadial { r } => WindowSampler::LogRad { r: *r, ln_ratio: (window / r).ln() },
            Self::Custom { .. } => {
                // tabulated inverse CDF; adequate for the statistical checks
                // custom densities participate in
                let total = self.cumulative(1.0, window)?;
                if !(total > 0.0) {
                    return Err(Error::Domain("custom density has zero mass in the window".into()));
                }
                let mut grid = Vec::with_capacity(CUSTOM_INVERSE_TABLE + 1);
                let mut cdf = Vec::with_capacity(CUSTOM_INVERSE_TABLE + 1);
                let mut acc = 0.0;
                let step = (window - lo) / CUSTOM_INVERSE_TABLE as f64;
                grid.push(lo);
                cdf.push(0.0);
                for i in 0..CUSTOM_INVERSE_TABLE {
                    let a = lo + i as f64 * step;
                    let b = a + step;
                    acc += quad::integrate(|s| self.density(s), a, b, 1e-10, 1e-14)?;
                    grid.push(b);
                    cdf.push(acc / total);
                }
                // guard against quadrature rounding at the top
                let last = cdf.len() - 1;
                cdf[last] = 1.0;
                WindowSampler::Table { grid, cdf }
            }
        })
    }

    /// One draw of a PPP realization on [support, window_max]: the count is
    /// Poisson with the window's mean measure and radii are i.i.d. draws of
    /// the normalized density.
    pub fn sample_radii<R: Rng + ?Sized>(
        &self,
        lambda: f64,
        window_max: f64,
        rng: &mut R,
    ) -> Result<Vec<f64>> {
        if window_max <= self.support_lo() {
            return Ok(Vec::new());
        }
        let measure = self.cumulative(lambda, window_max)?;
        if measure <= 0.0 {
            return Ok(Vec::new());
        }
        let count = sample_poisson(measure, rng)?;
        if count == 0 {
            return Ok(Vec::new());
        }
        let sampler = self.window_sampler(window_max)?;
        Ok((0..count).map(|_| sampler.draw(rng)).collect())
    }
}

pub(crate) fn sample_poisson<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> Result<u64> {
    let poisson = Poisson::new(mean)
        .map_err(|e| Error::Domain(format!("poisson mean {mean} rejected: {e}")))?;
    Ok(poisson.sample(rng) as u64)
}

/// Inverse-CDF sampler for one window, resolved once per run.
#[derive(Clone, Debug)]
pub(crate) enum WindowSampler {
    Disk { t_min_sq: f64, span_sq: f64 },
    LogRad { r: f64, ln_ratio: f64 },
    Table { grid: Vec<f64>, cdf: Vec<f64> },
}

impl WindowSampler {
    #[inline]
    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        match self {
            // CDF ∝ t² − t_min²  ⇒  t = √(t_min² + u·(W² − t_min²))
            Self::Disk { t_min_sq, span_sq } => (t_min_sq + u * span_sq).sqrt(),
            // CDF ∝ ln(t/r)  ⇒  t = r·(W/r)^u
            Self::LogRad { r, ln_ratio } => r * (u * ln_ratio).exp(),
            Self::Table { grid, cdf } => {
                let idx = cdf.partition_point(|c| *c < u).min(cdf.len() - 1).max(1);
                let (c0, c1) = (cdf[idx - 1], cdf[idx]);
                let w = if c1 > c0 { (u - c0) / (c1 - c0) } else { 0.5 };
                grid[idx - 1] + w * (grid[idx] - grid[idx - 1])
            }
        }
    }
}

/// The full interference model: I = Σ P·H_k·G(T_k) over the points T_k of the
/// distance process with intensity λ·p(t).
#[derive(Clone, Debug)]
pub struct NetworkModel {
    lambda: f64,
    power: f64,
    pathloss: PathLossModel,
    fading: FadingModel,
    intensity: RadialIntensity,
    /// ∫G^k p over the support, per unit λ, for k = 1, 2, 3.
    moments: PathMoments,
}

/// Cached path integrals ∫G^k(t) p(t) dt (p per unit λ).
#[derive(Clone, Copy, Debug)]
pub struct PathMoments {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
}

/// Relative tolerance for the moment integrals.
pub(crate) const MOMENT_REL_TOL: f64 = 1e-9;

impl NetworkModel {
    /// Builds and validates the model; fails when any of the three moment
    /// integrals does not converge (the growth condition is violated).
    pub fn new(
        lambda: f64,
        power: f64,
        pathloss: PathLossModel,
        fading: FadingModel,
        intensity: RadialIntensity,
    ) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Validation(format!("intensity parameter must be > 0, got {lambda}")));
        }
        if !(power > 0.0) || !power.is_finite() {
            return Err(Error::Validation(format!("transmit power must be > 0, got {power}")));
        }
        let moments = compute_path_moments(&pathloss, &intensity)?;
        Ok(Self { lambda, power, pathloss, fading, intensity, moments })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    pub fn power(&self) -> f64 {
        self.power
    }
    pub fn pathloss(&self) -> &PathLossModel {
        &self.pathloss
    }
    pub fn fading(&self) -> &FadingModel {
        &self.fading
    }
    pub fn intensity(&self) -> &RadialIntensity {
        &self.intensity
    }
    pub fn path_moments(&self) -> PathMoments {
        self.moments
    }

    /// Same geometry and fading at a different intensity; reuses the cached
    /// integrals, which do not depend on λ.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::Validation(format!("intensity parameter must be > 0, got {lambda}")));
        }
        let mut m = self.clone();
        m.lambda = lambda;
        Ok(m)
    }

    /// Same model at a different common transmit power.
    pub fn with_power(&self, power: f64) -> Result<Self> {
        if !(power > 0.0) || !power.is_finite() {
            return Err(Error::Validation(format!("transmit power must be > 0, got {power}")));
        }
        let mut m = self.clone();
        m.power = power;
        Ok(m)
    }

    /// E[I] = λ·P·m_H·∫G p.
    pub fn mean(&self) -> f64 {
        self.lambda * self.power * self.fading.moment(1).expect("k=1") * self.moments.i1
    }

    /// Var[I] = λ·P²·m_{H²}·∫G² p.
    pub fn variance(&self) -> f64 {
        self.lambda
            * self.power
            * self.power
            * self.fading.moment(2).expect("k=2")
            * self.moments.i2
    }

    pub fn std(&self) -> f64 {
        self.variance().sqrt()
    }

    /// Fraction of the Campbell mean lying beyond radius R.
    fn mean_tail_fraction(&self, radius: f64) -> Result<f64> {
        let tail = quad::integrate_to_inf(
            |t| self.pathloss.value(t) * self.intensity.density(t),
            radius,
            1e-8,
        )?;
        Ok(tail / self.moments.i1)
    }

    /// Fraction of the Campbell variance lying beyond radius R.
    pub(crate) fn variance_tail_fraction(&self, radius: f64) -> Result<f64> {
        let g2 = |t: f64| {
            let g = self.pathloss.value(t);
            g * g * self.intensity.density(t)
        };
        let tail = quad::integrate_to_inf(g2, radius, 1e-8)?;
        Ok(tail / self.moments.i2)
    }

    /// Smallest radius R with λPm_H∫_R^∞ G p below `tail_tolerance` times the
    /// full Campbell mean, by doubling then bisection.
    pub fn truncation_radius(&self, tail_tolerance: f64) -> Result<f64> {
        if !(tail_tolerance > 0.0 && tail_tolerance < 1.0) {
            return Err(Error::Domain(format!(
                "tail tolerance must lie in (0,1), got {tail_tolerance}"
            )));
        }
        find_tail_radius(self.intensity.support_lo(), |r| self.mean_tail_fraction(r), tail_tolerance)
    }
}

/// Doubling search then bisection for the smallest radius whose tail fraction
/// drops below `tol`.
pub(crate) fn find_tail_radius(
    support_lo: f64,
    tail_fraction: impl Fn(f64) -> Result<f64>,
    tol: f64,
) -> Result<f64> {
    let mut hi = (2.0 * support_lo).max(1.0);
    let mut grew = 0;
    while tail_fraction(hi)? > tol {
        hi *= 2.0;
        grew += 1;
        if grew > 80 {
            return Err(Error::Validation(
                "truncation search diverged; the intensity growth condition looks violated".into(),
            ));
        }
    }
    let mut lo = support_lo.max(hi / 2.0).min(hi);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        if tail_fraction(mid)? > tol {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) < 1e-6 * hi {
            break;
        }
    }
    Ok(hi)
}

pub(crate) fn compute_path_moments(
    pathloss: &PathLossModel,
    intensity: &RadialIntensity,
) -> Result<PathMoments> {
    let lo = intensity.support_lo();
    let mut vals = [0.0; 3];
    for (k, v) in vals.iter_mut().enumerate() {
        let p = k as i32 + 1;
        *v = quad::integrate_to_inf(
            |t| pathloss.value(t).powi(p) * intensity.density(t),
            lo,
            MOMENT_REL_TOL,
        )
        .map_err(|e| {
            Error::Validation(format!("moment integral ∫G^{p} p dt did not converge: {e}"))
        })?;
        if !v.is_finite() || *v <= 0.0 {
            return Err(Error::Validation(format!("moment integral ∫G^{p} p dt = {v} is not usable")));
        }
    }
    Ok(PathMoments { i1: vals[0], i2: vals[1], i3: vals[2] })
}
