//! Outage-capacity and sum-capacity envelopes, with Monte-Carlo references.
//!
//! A test link of length d with direct fading H̃ sees
//! SINR = H̃·G(d) / (SNR⁻¹ + I_λ(1)/PG). Replacing the interference CDF by
//! its envelope Q± yields two outage-probability curves in the coding rate R;
//! the largest R at which each stays below the target outage γ brackets the
//! outage capacity. The ergodic sum capacity E[log(1+I_λ(SNR))] is bracketed
//! by integrating the envelope of the tail distribution of log(1+I).

use crate::channel::FadingModel;
use crate::error::{Error, Result};
use crate::gaussian_bounds::Envelope;
use crate::geometry::NetworkModel;
use crate::montecarlo::{sample_interference, SimulationConfig};
use crate::quad;
use crate::rng::{derive_seed, substream};
use crate::special::gamma_upper_quantile;

/// Direct-link fading mass ignored beyond the integration cutoff.
const FADING_TAIL_MASS: f64 = 1e-8;
/// Rate-grid resolution for the capacity sup-search.
const RATE_GRID_POINTS: usize = 512;
const RATE_GRID_FLOOR: f64 = 1e-6;

/// A single-link outage setting embedded in an interference field.
///
/// The interferer model is stored at unit transmit power; all power bookkeeping
/// happens through `snr` and the processing gain.
#[derive(Clone, Debug)]
pub struct OutageScenario {
    d: f64,
    snr: f64,
    pg: f64,
    gamma: f64,
    direct_fading: FadingModel,
    interferers: NetworkModel,
}

/// A (lower, upper) capacity pair in nats/s/Hz.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityBounds {
    pub lower: f64,
    pub upper: f64,
}

impl OutageScenario {
    pub fn new(
        d: f64,
        snr: f64,
        pg: f64,
        gamma: f64,
        direct_fading: FadingModel,
        interferers: NetworkModel,
    ) -> Result<Self> {
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::Validation(format!("link distance must be > 0, got {d}")));
        }
        if !(snr > 0.0) || !snr.is_finite() {
            return Err(Error::Validation(format!("snr must be > 0, got {snr}")));
        }
        if !(pg >= 1.0) || !pg.is_finite() {
            return Err(Error::Validation(format!("processing gain must be >= 1, got {pg}")));
        }
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(Error::Validation(format!("target outage must lie in (0,1), got {gamma}")));
        }
        let interferers = interferers.with_power(1.0)?;
        Ok(Self { d, snr, pg, gamma, direct_fading, interferers })
    }

    pub fn d(&self) -> f64 {
        self.d
    }
    pub fn snr(&self) -> f64 {
        self.snr
    }
    pub fn pg(&self) -> f64 {
        self.pg
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn direct_fading(&self) -> &FadingModel {
        &self.direct_fading
    }
    pub fn interferers(&self) -> &NetworkModel {
        &self.interferers
    }

    /// Same scenario at a different interferer intensity.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        let mut s = self.clone();
        s.interferers = self.interferers.with_lambda(lambda)?;
        Ok(s)
    }

    /// Direct-link attenuation G(d).
    pub fn link_gain(&self) -> f64 {
        self.interferers.pathloss().value(self.d)
    }

    /// Fading value below which the SINR cannot reach rate R even without
    /// interference.
    pub fn fading_threshold(&self, rate: f64) -> f64 {
        (rate.exp_m1() / self.snr) / self.link_gain()
    }

    /// Upper integration cutoff for the direct fading (tail mass 1e-8), or
    /// the point mass itself when fading is deterministic.
    fn fading_cutoff(&self) -> Result<f64> {
        match self.direct_fading {
            FadingModel::Deterministic { h0 } => Ok(h0),
            FadingModel::NakagamiPower { m } => Ok(gamma_upper_quantile(m, FADING_TAIL_MASS)? / m),
            FadingModel::CustomMoments { .. } => Err(Error::Unsupported(
                "outage calculations need a direct-fading density or point mass".into(),
            )),
        }
    }
}

/// ζ(h, R): the envelope argument at which the interference CDF decides
/// whether rate R survives fading state h.
pub fn zeta(scn: &OutageScenario, h: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0) {
        return Err(Error::Domain(format!("rate must be > 0, got {rate}")));
    }
    if h < 0.0 || h.is_nan() {
        return Err(Error::Domain(format!("fading value must be >= 0, got {h}")));
    }
    let i = &scn.interferers;
    Ok(((h * scn.link_gain() / rate.exp_m1() - 1.0 / scn.snr) * scn.pg - i.mean()) / i.std())
}

/// E[f(H̃)·1{H̃ ≥ thr}] for the direct fading, by evaluation (point mass) or
/// adaptive quadrature against the fading density.
fn expect_over_direct_fading(
    scn: &OutageScenario,
    thr: f64,
    f: impl Fn(f64) -> f64,
) -> Result<f64> {
    match scn.direct_fading {
        FadingModel::Deterministic { h0 } => Ok(if h0 >= thr { f(h0) } else { 0.0 }),
        FadingModel::NakagamiPower { .. } => {
            let hmax = scn.fading_cutoff()?;
            if thr >= hmax {
                return Ok(0.0);
            }
            let fading = scn.direct_fading.clone();
            quad::integrate(
                move |h| f(h) * fading.density(h).expect("nakagami density"),
                thr.max(0.0),
                hmax,
                1e-8,
                1e-10,
            )
        }
        FadingModel::CustomMoments { .. } => Err(Error::Unsupported(
            "outage calculations need a direct-fading density or point mass".into(),
        )),
    }
}

/// (lower, upper) bounds on the outage probability at rate R.
///
/// The lower bound feeds the capacity *upper* bound and vice versa: the
/// envelope's upper CDF branch makes outage look less likely, the lower
/// branch more likely.
pub fn outage_probability_bounds(scn: &OutageScenario, rate: f64) -> Result<(f64, f64)> {
    if !(rate > 0.0) {
        return Err(Error::Domain(format!("rate must be > 0, got {rate}")));
    }
    let env = Envelope::of(&scn.interferers);
    let thr = scn.fading_threshold(rate);
    let lower =
        1.0 - expect_over_direct_fading(scn, thr, |h| env.upper(zeta(scn, h, rate).expect("h >= thr > 0")))?;
    let upper =
        1.0 - expect_over_direct_fading(scn, thr, |h| env.lower(zeta(scn, h, rate).expect("h >= thr > 0")))?;
    Ok((lower.clamp(0.0, 1.0), upper.clamp(0.0, 1.0)))
}

/// sup{R > 0 : bound(R) ≤ γ} by a log-spaced grid scan for the last feasible
/// point, refined by bisection. The bound-vs-rate curve is not provably
/// monotone (the non-uniform envelope branch is not), so the scan realizes
/// the sup semantics instead of a single bisection.
fn sup_feasible_rate(r_max: f64, gamma: f64, bound: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    if r_max <= RATE_GRID_FLOOR {
        return Ok(0.0);
    }
    let ratio = r_max / RATE_GRID_FLOOR;
    let grid: Vec<f64> = (0..RATE_GRID_POINTS)
        .map(|i| RATE_GRID_FLOOR * ratio.powf(i as f64 / (RATE_GRID_POINTS - 1) as f64))
        .collect();
    let mut last_feasible = None;
    for (i, &r) in grid.iter().enumerate() {
        if bound(r)? <= gamma {
            last_feasible = Some(i);
        }
    }
    let Some(k) = last_feasible else {
        return Ok(0.0);
    };
    if k + 1 >= grid.len() {
        return Ok(grid[k]);
    }
    let mut lo = grid[k];
    let mut hi = grid[k + 1];
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if bound(mid)? <= gamma {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Envelope-derived outage capacity bracket.
pub fn outage_capacity_bounds(scn: &OutageScenario) -> Result<CapacityBounds> {
    let h_up = scn.fading_cutoff()?;
    let r_max = (scn.snr * h_up * scn.link_gain()).ln_1p();
    let lower = sup_feasible_rate(r_max, scn.gamma, |r| {
        outage_probability_bounds(scn, r).map(|(_, upper)| upper)
    })?;
    let upper = sup_feasible_rate(r_max, scn.gamma, |r| {
        outage_probability_bounds(scn, r).map(|(lower, _)| lower)
    })?;
    Ok(CapacityBounds { lower, upper })
}

/// Empirical outage capacity: the γ-quantile of log(1+SINR) over `num_samples`
/// joint draws of direct fading and interference.
pub fn outage_capacity_simulated(scn: &OutageScenario, cfg: &SimulationConfig) -> Result<f64> {
    Ok(outage_capacity_simulated_with_stderr(scn, cfg)?.0)
}

/// The simulated γ-quantile together with a standard-error estimate from the
/// binomial fluctuation of the quantile's order-statistic index.
pub fn outage_capacity_simulated_with_stderr(
    scn: &OutageScenario,
    cfg: &SimulationConfig,
) -> Result<(f64, f64)> {
    let direct = scn.direct_fading.sampler()?;
    let interference = sample_interference(&scn.interferers, cfg)?;
    let seed_h = derive_seed(cfg.seed, 1);
    let g_d = scn.link_gain();
    let mut rates: Vec<f64> = interference
        .iter()
        .enumerate()
        .map(|(i, &int)| {
            let mut rng = substream(seed_h, i as u64);
            let h = direct.sample(&mut rng);
            let sinr = h * g_d / (1.0 / scn.snr + int / scn.pg);
            sinr.ln_1p()
        })
        .collect();
    rates.sort_by(f64::total_cmp);
    let n = rates.len();
    // sup{R : #{rate < R} ≤ γN} is the order statistic at ⌊γN⌋
    let k = ((scn.gamma * n as f64).floor() as usize).min(n - 1);
    let spread = (scn.gamma * (1.0 - scn.gamma) * n as f64).sqrt();
    let k_lo = k.saturating_sub(spread.ceil() as usize);
    let k_hi = (k + spread.ceil() as usize).min(n - 1);
    let stderr = 0.5 * (rates[k_hi] - rates[k_lo]);
    Ok((rates[k], stderr))
}

/// Envelope-derived ergodic sum-capacity bracket for E[log(1 + I_λ(SNR))].
pub fn sum_capacity_bounds(model: &NetworkModel, snr: f64) -> Result<CapacityBounds> {
    if !(snr > 0.0) || !snr.is_finite() {
        return Err(Error::Domain(format!("snr must be > 0, got {snr}")));
    }
    let scaled = model.with_power(snr)?;
    let env = Envelope::of(&scaled);
    sum_capacity_from_envelope(scaled.mean(), scaled.std(), |z| env.upper(z), |z| env.lower(z))
}

/// Shared integral core: lower uses the clipped upper CDF branch, upper the
/// clipped lower branch.
fn sum_capacity_from_envelope(
    mean: f64,
    std: f64,
    q_upper: impl Fn(f64) -> f64,
    q_lower: impl Fn(f64) -> f64,
) -> Result<CapacityBounds> {
    if !(std > 0.0) || !std.is_finite() {
        return Err(Error::Validation(format!("interference std must be > 0, got {std}")));
    }
    // cutoff where the lower branch has climbed to 1 − 1e-8; beyond it the
    // integrands are ≤ 1e-8 and decay at least as fast as z(x)^{-3}
    let mut z_star = 8.0;
    let mut steps = 0;
    while q_lower(z_star) < 1.0 - 1e-8 {
        z_star *= 2.0;
        steps += 1;
        if steps > 200 {
            return Err(Error::NonConvergent("sum-capacity cutoff search".into()));
        }
    }
    let k = z_star.max(10.0);
    let x_max = (mean + k * std).ln_1p();
    let z = move |x: f64| (x.exp_m1() - mean) / std;
    let lower = quad::integrate(|x| 1.0 - q_upper(z(x)), 0.0, x_max, 1e-8, 1e-10)?;
    let upper = quad::integrate(|x| 1.0 - q_lower(z(x)), 0.0, x_max, 1e-8, 1e-10)?;
    Ok(CapacityBounds { lower: lower.max(0.0), upper: upper.max(0.0) })
}

/// Monte-Carlo estimate of E[log(1 + I_λ(SNR))] with its standard error.
pub fn sum_capacity_simulated(
    model: &NetworkModel,
    snr: f64,
    cfg: &SimulationConfig,
) -> Result<(f64, f64)> {
    if !(snr > 0.0) || !snr.is_finite() {
        return Err(Error::Domain(format!("snr must be > 0, got {snr}")));
    }
    let samples = sample_interference(&model.with_power(snr)?, cfg)?;
    let rates: Vec<f64> = samples.iter().map(|i| i.ln_1p()).collect();
    let n = rates.len() as f64;
    let mean = rates.iter().sum::<f64>() / n;
    let var = rates.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    Ok((mean, (var / n).sqrt()))
}

/// One λ of the Θ(1/λ) scaling diagnostic.
#[derive(Clone, Copy, Debug)]
pub struct ScalingRow {
    pub lambda: f64,
    pub lower: f64,
    pub upper: f64,
    pub lower_product: f64,
    pub upper_product: f64,
}

/// λ·C products across a sweep; a ratio near 1 over the dense tail confirms
/// the 1/λ law.
#[derive(Clone, Debug)]
pub struct ScalingDiagnostic {
    pub rows: Vec<ScalingRow>,
    /// max/min of λ·C over the top half of the λ range, per bound.
    pub lower_ratio: f64,
    pub upper_ratio: f64,
}

pub fn outage_scaling_diagnostic(scn: &OutageScenario, lambdas: &[f64]) -> Result<ScalingDiagnostic> {
    if lambdas.len() < 3 {
        return Err(Error::Domain("scaling diagnostic needs at least 3 intensities".into()));
    }
    if lambdas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("scaling intensities must be strictly increasing".into()));
    }
    let mut rows = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let bounds = outage_capacity_bounds(&scn.with_lambda(lambda)?)?;
        rows.push(ScalingRow {
            lambda,
            lower: bounds.lower,
            upper: bounds.upper,
            lower_product: lambda * bounds.lower,
            upper_product: lambda * bounds.upper,
        });
    }
    let (lower_ratio, upper_ratio) = {
        let top = &rows[rows.len() / 2..];
        let ratio = |sel: fn(&ScalingRow) -> f64| {
            let max = top.iter().map(sel).fold(f64::NEG_INFINITY, f64::max);
            let min = top.iter().map(sel).fold(f64::INFINITY, f64::min);
            if min > 0.0 {
                max / min
            } else {
                f64::INFINITY
            }
        };
        (ratio(|r| r.lower_product), ratio(|r| r.upper_product))
    };
    Ok(ScalingDiagnostic { rows, lower_ratio, upper_ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::PathLossModel;
    use crate::gaussian_bounds::campbell_moments;
    use crate::geometry::RadialIntensity;
    use crate::special::normal_cdf;

    fn interferers(lambda: f64, fading: FadingModel, t_min: f64) -> NetworkModel {
        NetworkModel::new(
            lambda,
            1.0,
            PathLossModel::inverse_sum(4.0).unwrap(),
            fading,
            RadialIntensity::stationary(t_min).unwrap(),
        )
        .unwrap()
    }

    fn det_scenario(lambda: f64) -> OutageScenario {
        OutageScenario::new(
            1.0,
            100.0,
            100.0,
            0.1,
            FadingModel::deterministic(1.0).unwrap(),
            interferers(lambda, FadingModel::deterministic(1.0).unwrap(), 0.0),
        )
        .unwrap()
    }

    #[test]
    fn zeta_compositional_oracle() {
        let scn = det_scenario(1.0);
        let consts = campbell_moments(scn.interferers());
        let (h, rate) = (1.0, 0.1);
        let by_hand = ((h * scn.link_gain() / (rate as f64).exp_m1() - 1.0 / 100.0) * 100.0
            - consts.mean)
            / consts.variance.sqrt();
        let z = zeta(&scn, h, rate).unwrap();
        assert!((z - by_hand).abs() < 1e-9, "zeta {z} vs hand {by_hand}");
    }

    #[test]
    fn zeta_edges() {
        let scn = det_scenario(1.0);
        // h at the threshold makes the first parenthesis vanish
        let rate = 0.3;
        let h = scn.fading_threshold(rate);
        let z = zeta(&scn, h, rate).unwrap();
        let i = scn.interferers();
        assert!((z - (-i.mean() / i.std())).abs() < 1e-10);
        // strictly decreasing in R for h above threshold
        let mut prev = zeta(&scn, 1.0, 0.05).unwrap();
        for r in [0.1, 0.2, 0.4, 0.8] {
            let cur = zeta(&scn, 1.0, r).unwrap();
            assert!(cur < prev);
            prev = cur;
        }
        assert!(zeta(&scn, 1.0, 0.0).is_err());
        assert!(zeta(&scn, -1.0, 0.1).is_err());
    }

    #[test]
    fn outage_probability_limits() {
        // tiny rate, deterministic fading far above threshold, small λ:
        // both bounds collapse to 0
        let scn = det_scenario(0.1);
        let (lo, hi) = outage_probability_bounds(&scn, 1e-6).unwrap();
        assert!(lo < 1e-6, "lower {lo}");
        assert!(hi < 0.05, "upper {hi}");
        // vanishing snr pushes the threshold beyond all fading: both -> 1
        let starved = OutageScenario::new(
            1.0,
            1e-12,
            100.0,
            0.1,
            FadingModel::nakagami(5.0).unwrap(),
            interferers(1.0, FadingModel::nakagami(5.0).unwrap(), 0.0),
        )
        .unwrap();
        let (lo, hi) = outage_probability_bounds(&starved, 1.0).unwrap();
        assert_eq!(lo, 1.0);
        assert_eq!(hi, 1.0);
        // ordering
        for rate in [0.01, 0.1, 0.5, 1.0] {
            let (lo, hi) = outage_probability_bounds(&scn, rate).unwrap();
            assert!(lo <= hi + 1e-12, "rate {rate}: {lo} > {hi}");
        }
    }

    #[test]
    fn outage_capacity_floor_when_no_rate_is_feasible() {
        // the sup-search returns the 0 floor when the bound exceeds γ on the
        // whole grid
        let c = sup_feasible_rate(2.0, 0.1, |_| Ok(1.0)).unwrap();
        assert_eq!(c, 0.0);
        // overwhelming interference: Q⁻ clamps to 0 (outage bound 1) and Q⁺
        // stays negligible at every representable rate, so both bounds floor
        let drowned = OutageScenario::new(
            1.0,
            100.0,
            1.0,
            0.1,
            FadingModel::deterministic(1.0).unwrap(),
            interferers(1e7, FadingModel::deterministic(1.0).unwrap(), 0.0),
        )
        .unwrap();
        let b = outage_capacity_bounds(&drowned).unwrap();
        assert_eq!(b.lower, 0.0);
        assert_eq!(b.upper, 0.0);
    }

    #[test]
    fn simulated_outage_capacity_zero_interference() {
        // λ -> 0: log(1 + snr·h0·G(d)) exactly
        let scn = det_scenario(1e-12);
        let cfg = SimulationConfig::new(3, 500).unwrap();
        let c = outage_capacity_simulated(&scn, &cfg).unwrap();
        let ideal = (100.0 * scn.link_gain()).ln_1p();
        assert!((c - ideal).abs() < 1e-6, "c {c} vs ideal {ideal}");
    }

    #[test]
    fn simulated_outage_capacity_is_quantile() {
        let scn = OutageScenario::new(
            1.0,
            100.0,
            100.0,
            0.5,
            FadingModel::deterministic(1.0).unwrap(),
            interferers(5.0, FadingModel::nakagami(1.0).unwrap(), 0.0),
        )
        .unwrap();
        let cfg = SimulationConfig::new(9, 2001).unwrap();
        let c = outage_capacity_simulated(&scn, &cfg).unwrap();
        // reconstruct the rate sample and check the quantile position
        let ints = sample_interference(scn.interferers(), &cfg).unwrap();
        let below = ints
            .iter()
            .enumerate()
            .map(|(i, &int)| {
                let mut rng = substream(derive_seed(cfg.seed, 1), i as u64);
                let h = scn.direct_fading().sampler().unwrap().sample(&mut rng);
                (h * scn.link_gain() / (0.01 + int / 100.0)).ln_1p()
            })
            .filter(|r| *r < c)
            .count();
        assert!(below as f64 <= 0.5 * 2001.0);
    }

    #[test]
    fn sum_capacity_degenerate_envelope_collapses() {
        // c ≡ 0 turns both integrals into the same clipped-Gaussian integral
        let q_upper = |z: f64| normal_cdf(z).min(1.0);
        let q_lower = |z: f64| normal_cdf(z).max(0.0);
        let b = sum_capacity_from_envelope(10.0, 2.0, q_upper, q_lower).unwrap();
        assert!((b.lower - b.upper).abs() < 1e-7, "collapse failed: {b:?}");
        assert!(b.lower > 0.0);
    }

    #[test]
    fn sum_capacity_ordering_and_simulation_agreement() {
        let m = interferers(10.0, FadingModel::nakagami(5.0).unwrap(), 0.0);
        let b = sum_capacity_bounds(&m, 1.0).unwrap();
        assert!(b.lower <= b.upper);
        // the true value E[ln(1+I)] must land inside
        let cfg = SimulationConfig::new(21, 20_000).unwrap();
        let (sim, se) = sum_capacity_simulated(&m, 1.0, &cfg).unwrap();
        assert!(
            sim + 3.0 * se >= b.lower && sim - 3.0 * se <= b.upper,
            "sim {sim}±{se} outside [{}, {}]",
            b.lower,
            b.upper
        );
        assert!(sum_capacity_bounds(&m, 0.0).is_err());
    }

    #[test]
    fn sum_capacity_tiny_lambda_enumeration_oracle() {
        // with Λ so small that two points are already rare, E[ln(1+I)] is
        // dominated by the zero- and one-point configurations, which can be
        // enumerated: E ≈ P(N=1)·E[ln(1+G(U))] + P(N=2)·E[ln(1+G(U1)+G(U2))]
        let m = interferers(0.0002, FadingModel::deterministic(1.0).unwrap(), 0.0);
        let cfg = SimulationConfig::new(31, 400_000).unwrap();
        let (sim, se) = sum_capacity_simulated(&m, 1.0, &cfg).unwrap();

        let window = crate::montecarlo::resolve_window(&m, cfg.tail_tolerance).unwrap();
        let r = window.r_points;
        let measure = m.intensity().cumulative(m.lambda(), r).unwrap();
        let p1 = measure * (-measure).exp();
        let p2 = 0.5 * measure * measure * (-measure).exp();
        let g = |t: f64| 1.0 / (1.0 + t.powi(4));
        // radius density within the window is 2t/r²
        let e1 = quad::integrate(
            |t| (window.far_field_mean + g(t)).ln_1p() * 2.0 * t / (r * r),
            0.0,
            r,
            1e-10,
            1e-12,
        )
        .unwrap();
        let e2 = quad::integrate(
            |t1| {
                quad::integrate(
                    |t2| {
                        (window.far_field_mean + g(t1) + g(t2)).ln_1p() * 2.0 * t2 / (r * r)
                    },
                    0.0,
                    r,
                    1e-8,
                    1e-10,
                )
                .unwrap()
                    * 2.0
                    * t1
                    / (r * r)
            },
            0.0,
            r,
            1e-6,
            1e-8,
        )
        .unwrap();
        let p0 = (-measure).exp();
        let e0 = (window.far_field_mean).ln_1p();
        let expected = p0 * e0 + p1 * e1 + p2 * e2;
        assert!(
            (sim - expected).abs() < 4.0 * se + 1e-7,
            "sim {sim} vs enumeration {expected} (se {se})"
        );
    }

    #[test]
    fn scaling_diagnostic_exact_law() {
        // synthetic check of the product/ratio plumbing on an exact 1/λ law
        let rows: Vec<ScalingRow> = [10.0, 20.0, 40.0]
            .iter()
            .map(|&l| ScalingRow {
                lambda: l,
                lower: 2.0 / l,
                upper: 3.0 / l,
                lower_product: l * (2.0 / l),
                upper_product: l * (3.0 / l),
            })
            .collect();
        let top = &rows[rows.len() / 2..];
        let max = top.iter().map(|r| r.lower_product).fold(f64::NEG_INFINITY, f64::max);
        let min = top.iter().map(|r| r.lower_product).fold(f64::INFINITY, f64::min);
        assert!((max / min - 1.0).abs() < 1e-12);
        // and the argument validation of the real entry point
        let scn = det_scenario(1.0);
        assert!(outage_scaling_diagnostic(&scn, &[1.0, 2.0]).is_err());
        assert!(outage_scaling_diagnostic(&scn, &[2.0, 1.0, 3.0]).is_err());
    }

    #[test]
    fn moments_only_direct_fading_is_rejected() {
        let scn = OutageScenario::new(
            1.0,
            100.0,
            100.0,
            0.1,
            FadingModel::custom_moments(1.0, 1.2, 1.68).unwrap(),
            interferers(1.0, FadingModel::deterministic(1.0).unwrap(), 0.0),
        )
        .unwrap();
        assert!(matches!(outage_probability_bounds(&scn, 0.1), Err(Error::Unsupported(_))));
        assert!(matches!(outage_capacity_bounds(&scn), Err(Error::Unsupported(_))));
    }

    #[test]
    fn scenario_validation() {
        let i = interferers(1.0, FadingModel::deterministic(1.0).unwrap(), 0.0);
        let det = FadingModel::deterministic(1.0).unwrap();
        assert!(OutageScenario::new(0.0, 1.0, 1.0, 0.1, det.clone(), i.clone()).is_err());
        assert!(OutageScenario::new(1.0, 1.0, 0.5, 0.1, det.clone(), i.clone()).is_err());
        assert!(OutageScenario::new(1.0, 1.0, 1.0, 0.0, det.clone(), i.clone()).is_err());
        assert!(OutageScenario::new(1.0, -1.0, 1.0, 0.1, det, i).is_err());
    }
}
