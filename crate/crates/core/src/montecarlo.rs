//! Interference simulation and empirical-CDF machinery.
//!
//! Samples are independent across replicate indices (ChaCha streams keyed by
//! the index), so generation parallelizes over rayon with a deterministic,
//! schedule-independent result.
//!
//! The simulation window is handled in two parts. The truncation radius
//! R_mean keeps the truncated Campbell-mean bias below
//! `tail_tolerance` × mean. Points are only drawn out to R_pts ≤ R_mean,
//! chosen so the omitted far-field *fluctuation* is below 1e-3 of the total
//! standard deviation; the far field's mean over [R_pts, R_mean] is added
//! back as a constant. The sampled distribution therefore carries exactly the
//! designed mean bias while the far-field noise it drops is statistically
//! invisible (sup-CDF perturbation ≲ 4e-4), and the point count stays
//! proportional to the near field that actually shapes the distribution.

use crate::error::{Error, Result};
use crate::gaussian_bounds::BoundCurve;
use crate::geometry::{sample_poisson, NetworkModel};
use crate::quad;
use crate::rng::substream;
use rayon::prelude::*;

/// Omitted far-field std budget, as a fraction of the total std.
const FAR_FIELD_STD_FRACTION: f64 = 1e-3;

/// Simulation parameters.
#[derive(Clone, Copy, Debug)]
pub struct SimulationConfig {
    pub seed: u64,
    pub num_samples: usize,
    /// Mean-tail truncation tolerance for the simulation window.
    pub tail_tolerance: f64,
}

impl SimulationConfig {
    pub fn new(seed: u64, num_samples: usize) -> Result<Self> {
        let cfg = Self { seed, num_samples, tail_tolerance: 1e-4 };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_tail_tolerance(mut self, tail_tolerance: f64) -> Result<Self> {
        self.tail_tolerance = tail_tolerance;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_samples < 1 {
            return Err(Error::Validation("num_samples must be >= 1".into()));
        }
        if !(self.tail_tolerance > 0.0 && self.tail_tolerance < 1.0) {
            return Err(Error::Validation(format!(
                "tail tolerance must lie in (0,1), got {}",
                self.tail_tolerance
            )));
        }
        Ok(())
    }
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self { seed: 0, num_samples: 10_000, tail_tolerance: 1e-4 }
    }
}

/// Resolved simulation window: points are drawn on [support, r_points] and
/// the deterministic far-field mean over [r_points, r_mean] is added back.
#[derive(Clone, Copy, Debug)]
pub struct SimWindow {
    pub r_points: f64,
    pub r_mean: f64,
    pub far_field_mean: f64,
}

/// The window `sample_interference` would use at this tolerance.
pub fn resolve_window(model: &NetworkModel, tail_tolerance: f64) -> Result<SimWindow> {
    let r_mean = model.truncation_radius(tail_tolerance)?;
    let r_var = crate::geometry::find_tail_radius(
        model.intensity().support_lo(),
        |r| model.variance_tail_fraction(r),
        FAR_FIELD_STD_FRACTION * FAR_FIELD_STD_FRACTION,
    )?;
    let r_points = r_var.min(r_mean);
    let far_field_mean = if r_points < r_mean {
        let m1 = model.fading().moment(1)?;
        model.lambda()
            * model.power()
            * m1
            * quad::integrate(
                |t| model.pathloss().value(t) * model.intensity().density(t),
                r_points,
                r_mean,
                1e-9,
                1e-300,
            )?
    } else {
        0.0
    };
    Ok(SimWindow { r_points, r_mean, far_field_mean })
}

/// `num_samples` i.i.d. draws of I = Σ P·H_k·G(T_k), deterministic in the
/// seed. Fails for moments-only fading (no sampler).
pub fn sample_interference(model: &NetworkModel, cfg: &SimulationConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let window = resolve_window(model, cfg.tail_tolerance)?;
    sample_interference_in_window(model, cfg, &window)
}

pub(crate) fn sample_interference_in_window(
    model: &NetworkModel,
    cfg: &SimulationConfig,
    window: &SimWindow,
) -> Result<Vec<f64>> {
    let fading = model.fading().sampler()?;
    let measure = model.intensity().cumulative(model.lambda(), window.r_points)?;
    if measure <= 0.0 {
        return Ok(vec![window.far_field_mean; cfg.num_samples]);
    }
    let radius = model.intensity().window_sampler(window.r_points)?;
    let power = model.power();
    let pathloss = model.pathloss().clone();
    (0..cfg.num_samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(cfg.seed, i);
            let count = sample_poisson(measure, &mut rng)?;
            let mut acc = window.far_field_mean;
            for _ in 0..count {
                let t = radius.draw(&mut rng);
                acc += power * fading.sample(&mut rng) * pathloss.value(t);
            }
            Ok(acc)
        })
        .collect()
}

/// Finite-window construction with a deterministic point count: ⌈Λ_n⌉ i.i.d.
/// radii with density λp/Λ_n on [0, n]. Converges in distribution to the
/// Poisson-window interference as n grows; serves as an independent
/// cross-check of the exact sampler.
pub fn sample_interference_finite_window(
    model: &NetworkModel,
    n: f64,
    cfg: &SimulationConfig,
) -> Result<Vec<f64>> {
    cfg.validate()?;
    if n <= model.intensity().support_lo() {
        return Err(Error::Domain(format!(
            "finite window {n} does not exceed the support edge"
        )));
    }
    let fading = model.fading().sampler()?;
    let measure = model.intensity().cumulative(model.lambda(), n)?;
    if measure <= 0.0 {
        return Err(Error::Domain("finite window has zero measure".into()));
    }
    let count = measure.ceil() as u64;
    let radius = model.intensity().window_sampler(n)?;
    let power = model.power();
    let pathloss = model.pathloss().clone();
    Ok((0..cfg.num_samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(cfg.seed, i);
            let mut acc = 0.0;
            for _ in 0..count {
                let t = radius.draw(&mut rng);
                acc += power * fading.sample(&mut rng) * pathloss.value(t);
            }
            acc
        })
        .collect())
}

/// Right-continuous empirical CDF.
#[derive(Clone, Debug)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Domain("empirical CDF of an empty sample".into()));
        }
        if samples.iter().any(|v| v.is_nan()) {
            return Err(Error::Domain("empirical CDF sample contains NaN".into()));
        }
        samples.sort_by(f64::total_cmp);
        Ok(Self { sorted: samples })
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// F̂(x) = #{samples ≤ x} / n.
    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|v| *v <= x) as f64 / self.sorted.len() as f64
    }

    pub fn values(&self) -> &[f64] {
        &self.sorted
    }
}

/// Empirical CDF of (sample − mean)/std with *analytic* centering moments.
pub fn centered_normalized_cdf(samples: &[f64], mean: f64, std: f64) -> Result<EmpiricalCdf> {
    if !(std > 0.0) || !std.is_finite() {
        return Err(Error::Domain(format!("centering std must be > 0, got {std}")));
    }
    EmpiricalCdf::new(samples.iter().map(|s| (s - mean) / std).collect())
}

/// sup_x |F̂(x) − F(x)| against a reference CDF, evaluated on both sides of
/// every jump.
pub fn ks_distance<F: Fn(f64) -> f64>(cdf: &EmpiricalCdf, reference: F) -> f64 {
    let n = cdf.len() as f64;
    let mut sup: f64 = 0.0;
    for (i, x) in cdf.values().iter().enumerate() {
        let f = reference(*x);
        sup = sup.max((i as f64 / n - f).abs());
        sup = sup.max(((i + 1) as f64 / n - f).abs());
    }
    sup
}

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn two_sample_ks(a: &EmpiricalCdf, b: &EmpiricalCdf) -> f64 {
    let (xa, xb) = (a.values(), b.values());
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let mut i = 0;
    let mut j = 0;
    let mut sup: f64 = 0.0;
    while i < xa.len() && j < xb.len() {
        let va = xa[i];
        let vb = xb[j];
        if va <= vb {
            i += 1;
        }
        if vb <= va {
            j += 1;
        }
        sup = sup.max((i as f64 / na - j as f64 / nb).abs());
    }
    sup
}

/// Distribution-free concentration slack √(ln(2/δ)/(2n)): with probability
/// 1−δ the empirical CDF stays within this band of the truth everywhere.
pub fn dkw_slack(n: usize, delta: f64) -> Result<f64> {
    if n == 0 || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Domain(format!("dkw_slack needs n >= 1 and δ in (0,1), got n={n}, δ={delta}")));
    }
    Ok(((2.0 / delta).ln() / (2.0 * n as f64)).sqrt())
}

/// Containment check of an empirical CDF against an envelope.
#[derive(Clone, Copy, Debug)]
pub struct ContainmentReport {
    pub total: usize,
    pub violations: usize,
    pub fraction: f64,
    pub slack: f64,
    /// Largest amount by which any grid point escaped the slacked envelope.
    pub worst_excess: f64,
}

/// Fraction of grid points where lower − slack ≤ F̂ ≤ upper + slack.
pub fn envelope_containment(
    cdf: &EmpiricalCdf,
    curve: &BoundCurve,
    slack: f64,
) -> ContainmentReport {
    let mut violations = 0;
    let mut worst: f64 = 0.0;
    for i in 0..curve.len() {
        let e = cdf.eval(curve.xs[i]);
        let below = (curve.lower[i] - slack) - e;
        let above = e - (curve.upper[i] + slack);
        let excess = below.max(above);
        if excess > 0.0 {
            violations += 1;
            worst = worst.max(excess);
        }
    }
    ContainmentReport {
        total: curve.len(),
        violations,
        fraction: 1.0 - violations as f64 / curve.len() as f64,
        slack,
        worst_excess: worst,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{FadingModel, PathLossModel};
    use crate::gaussian_bounds::cdf_bounds;
    use crate::geometry::RadialIntensity;
    use crate::special::normal_cdf;
    use std::f64::consts::PI;

    fn g2a4_model(lambda: f64) -> NetworkModel {
        NetworkModel::new(
            lambda,
            1.0,
            PathLossModel::inverse_sum(4.0).unwrap(),
            FadingModel::deterministic(1.0).unwrap(),
            RadialIntensity::stationary(0.0).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn reproducible_bit_identical() {
        let m = g2a4_model(1.0);
        let cfg = SimulationConfig::new(42, 256).unwrap();
        let a = sample_interference(&m, &cfg).unwrap();
        let b = sample_interference(&m, &cfg).unwrap();
        assert_eq!(a, b);
        let c = sample_interference(&m, &SimulationConfig::new(43, 256).unwrap()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_measure_window_gives_zero_samples() {
        let m = NetworkModel::new(
            1.0,
            1.0,
            PathLossModel::inverse_sum(4.0).unwrap(),
            FadingModel::deterministic(1.0).unwrap(),
            RadialIntensity::log_radial(0.5).unwrap(),
        )
        .unwrap();
        // a window at the support edge has zero measure and no far field
        let window = SimWindow { r_points: 0.5, r_mean: 0.5, far_field_mean: 0.0 };
        let cfg = SimulationConfig::new(1, 64).unwrap();
        let samples = sample_interference_in_window(&m, &cfg, &window).unwrap();
        assert!(samples.iter().all(|&s| s == 0.0));
    }

    #[test]
    fn vanishing_intensity_gives_nearly_zero_samples() {
        let m = g2a4_model(1e-12);
        let cfg = SimulationConfig::new(5, 128).unwrap();
        let samples = sample_interference(&m, &cfg).unwrap();
        // far-field compensation is O(λ); points occur with probability ~1e-9
        assert!(samples.iter().all(|&s| s < 1e-9));
    }

    #[test]
    fn unsupported_fading_errors() {
        let m = NetworkModel::new(
            1.0,
            1.0,
            PathLossModel::inverse_sum(4.0).unwrap(),
            FadingModel::custom_moments(1.0, 1.2, 1.68).unwrap(),
            RadialIntensity::stationary(0.0).unwrap(),
        )
        .unwrap();
        let cfg = SimulationConfig::default();
        assert!(matches!(sample_interference(&m, &cfg), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sample_moments_match_campbell() {
        // mean within 3·std/√N of π²/2, variance inside a moment-based band
        let m = g2a4_model(1.0);
        let cfg = SimulationConfig::new(7, 100_000).unwrap();
        let samples = sample_interference(&m, &cfg).unwrap();
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let band = 3.0 * var.sqrt() / n.sqrt();
        assert!((mean - PI * PI / 2.0).abs() < band, "mean {mean} vs {} ± {band}", PI * PI / 2.0);
        let m4 = samples.iter().map(|s| (s - mean).powi(4)).sum::<f64>() / n;
        let var_band = 3.0 * ((m4 - var * var).max(0.0) / n).sqrt();
        assert!(
            (var - PI * PI / 4.0).abs() < var_band,
            "variance {var} vs {} ± {var_band}",
            PI * PI / 4.0
        );
    }

    #[test]
    fn finite_window_mean_matches_quadrature() {
        // E[I_n] = ⌈Λ_n⌉ · λPm_H ∫₀^n G p / Λ_n
        let m = g2a4_model(5.0);
        let n_window = 12.0;
        let cfg = SimulationConfig::new(17, 40_000).unwrap();
        let samples = sample_interference_finite_window(&m, n_window, &cfg).unwrap();
        let nf = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / nf;
        let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (nf - 1.0);
        let measure = m.intensity().cumulative(m.lambda(), n_window).unwrap();
        let head = crate::quad::integrate(
            |t| m.pathloss().eval(t).unwrap() * m.intensity().density(t),
            0.0,
            n_window,
            1e-10,
            1e-12,
        )
        .unwrap();
        let expected = measure.ceil() * m.lambda() * head / measure;
        let band = 3.0 * (var / nf).sqrt();
        assert!(
            (mean - expected).abs() < band,
            "finite-window mean {mean} vs {expected} ± {band}"
        );
    }

    #[test]
    fn finite_window_single_term() {
        // a window with ⌈Λ_n⌉ = 1 makes every sample a single P·H·G(U) term
        let m = g2a4_model(0.01);
        // Λ_n = 0.01·π·n² = 1 at n ≈ 5.64
        let n_window = (1.0 / (0.01 * PI)).sqrt();
        let cfg = SimulationConfig::new(11, 512).unwrap();
        let samples = sample_interference_finite_window(&m, n_window, &cfg).unwrap();
        for s in samples {
            assert!(s > 0.0 && s <= 1.0, "single bounded term expected, got {s}");
        }
        assert!(sample_interference_finite_window(&m, -1.0, &cfg).is_err());
    }

    #[test]
    fn empirical_cdf_basics() {
        assert!(EmpiricalCdf::new(vec![]).is_err());
        let one = EmpiricalCdf::new(vec![2.0]).unwrap();
        assert_eq!(one.eval(1.9), 0.0);
        assert_eq!(one.eval(2.0), 1.0);
        let cdf = EmpiricalCdf::new(vec![3.0, 1.0, 2.0]).unwrap();
        assert_eq!(cdf.eval(0.0), 0.0);
        assert!((cdf.eval(1.5) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(cdf.eval(3.0), 1.0);
    }

    #[test]
    fn centered_cdf_degenerate_cases() {
        // constant samples at the mean: a single step at 0
        let cdf = centered_normalized_cdf(&[5.0, 5.0, 5.0], 5.0, 2.0).unwrap();
        assert_eq!(cdf.eval(-1e-9), 0.0);
        assert_eq!(cdf.eval(0.0), 1.0);
        assert!(centered_normalized_cdf(&[1.0], 0.0, 0.0).is_err());
        assert!(centered_normalized_cdf(&[1.0], 0.0, -1.0).is_err());
    }

    #[test]
    fn ks_distance_step_at_zero() {
        // step at 0 vs Ψ: distance 1 − Ψ(0) = 0.5
        let cdf = EmpiricalCdf::new(vec![0.0; 10]).unwrap();
        let d = ks_distance(&cdf, normal_cdf);
        assert!((d - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ks_distance_converges_for_exact_law() {
        // uniform draws vs the uniform CDF: KS must be ≲ 1.63/√n at 1%
        let mut rng = substream(13, 0);
        use rand::Rng;
        let n = 40_000;
        let samples: Vec<f64> = (0..n).map(|_| rng.random()).collect();
        let cdf = EmpiricalCdf::new(samples).unwrap();
        let d = ks_distance(&cdf, |x| x.clamp(0.0, 1.0));
        assert!(d < 1.6276 / (n as f64).sqrt(), "KS {d}");
    }

    #[test]
    fn two_sample_ks_identical_and_shifted() {
        let a = EmpiricalCdf::new((0..1000).map(|i| i as f64).collect()).unwrap();
        let b = EmpiricalCdf::new((0..1000).map(|i| i as f64).collect()).unwrap();
        assert_eq!(two_sample_ks(&a, &b), 0.0);
        let c = EmpiricalCdf::new((0..1000).map(|i| i as f64 + 2000.0).collect()).unwrap();
        assert_eq!(two_sample_ks(&a, &c), 1.0);
    }

    #[test]
    fn containment_reports() {
        let m = g2a4_model(10.0);
        let xs = crate::gaussian_bounds::default_grid();
        let curve = cdf_bounds(&m, &xs).unwrap();
        // degenerate envelope [0,1] contains anything
        let degenerate = BoundCurve {
            xs: xs.clone(),
            lower: vec![0.0; xs.len()],
            gaussian: curve.gaussian.clone(),
            upper: vec![1.0; xs.len()],
        };
        let cdf = EmpiricalCdf::new(vec![-1.0, 0.0, 1.0]).unwrap();
        let rep = envelope_containment(&cdf, &degenerate, 0.0);
        assert_eq!(rep.violations, 0);
        assert_eq!(rep.fraction, 1.0);
    }

    #[test]
    fn dkw_slack_values() {
        let s = dkw_slack(10_000, 0.01).unwrap();
        assert!((s - 0.016277).abs() < 1e-5);
        assert!(dkw_slack(0, 0.01).is_err());
        assert!(dkw_slack(10, 1.5).is_err());
    }

    #[test]
    fn truncation_windows_shrink_with_looser_tolerance() {
        let m = g2a4_model(1.0);
        let tight = resolve_window(&m, 1e-6).unwrap();
        let loose = resolve_window(&m, 1e-2).unwrap();
        assert!(loose.r_mean < tight.r_mean);
        // point window never exceeds the mean window
        assert!(loose.r_points <= loose.r_mean);
        assert!(tight.r_points <= tight.r_mean);
    }
}
