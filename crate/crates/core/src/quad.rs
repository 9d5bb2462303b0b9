//! Globally adaptive quadrature.
//!
//! Each interval is estimated with Gauss–Legendre rules of 15 and 31 points;
//! the difference serves as the error estimate and the worst interval is
//! bisected until the summed error meets the tolerance. Nodes and weights are
//! computed at startup by Newton iteration on the Legendre polynomials, so
//! there are no embedded coefficient tables.
//!
//! Semi-infinite integrals are split at max(a, 1) and the tail is mapped to a
//! finite interval with u = 1/t, which turns polynomially decaying integrands
//! into smooth (or mildly singular, still integrable) ones.

use crate::error::{Error, Result};
use std::collections::BinaryHeap;
use std::sync::OnceLock;

/// Gauss–Legendre nodes/weights on [-1, 1].
struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    /// Newton iteration on P_n with the Chebyshev-like initial guess.
    fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // evaluate P_n(x) and P_n'(x) by the three-term recurrence
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussRule { nodes, weights }
    }

    fn apply<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn rules() -> &'static (GaussRule, GaussRule) {
    static RULES: OnceLock<(GaussRule, GaussRule)> = OnceLock::new();
    RULES.get_or_init(|| (GaussRule::new(15), GaussRule::new(31)))
}

struct Segment {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn estimate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let (lo_rule, hi_rule) = rules();
    let coarse = lo_rule.apply(f, a, b);
    let fine = hi_rule.apply(f, a, b);
    Segment { err: (fine - coarse).abs(), a, b, value: fine }
}

const MAX_SEGMENTS: usize = 20_000;

/// ∫_a^b f, to relative tolerance `rel_tol` (with absolute floor `abs_tol`).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("integrate requires finite limits".into()));
    }
    if a == b {
        return Ok(0.0);
    }
    let (a, b, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut heap = BinaryHeap::new();
    let first = estimate(&f, a, b);
    let mut total = first.value;
    let mut total_abs = first.value.abs();
    let mut total_err = first.err;
    heap.push(first);
    // the 1e-16·Σ|I_k| floor stops cancellation-dominated integrals from
    // spinning once machine precision is reached
    while total_err > abs_tol.max(rel_tol * total.abs()).max(1e-16 * total_abs) {
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        if heap.len() + 2 > MAX_SEGMENTS {
            return Err(Error::NonConvergent(format!(
                "quadrature on [{a}, {b}] exceeded {MAX_SEGMENTS} segments (error {total_err:.3e})"
            )));
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval at floating-point resolution; accept its estimate
            total_err -= worst.err;
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let left = estimate(&f, worst.a, mid);
        let right = estimate(&f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_abs += left.value.abs() + right.value.abs() - worst.value.abs();
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    if !total.is_finite() {
        return Err(Error::NonConvergent(format!("quadrature on [{a}, {b}] produced {total}")));
    }
    Ok(sign * total)
}

/// ∫_a^∞ f, splitting at max(a, 1) and mapping the tail with u = 1/t.
pub fn integrate_to_inf<F: Fn(f64) -> f64>(f: F, a: f64, rel_tol: f64) -> Result<f64> {
    if !a.is_finite() || a < 0.0 {
        return Err(Error::Domain(format!("semi-infinite integral needs finite a >= 0, got {a}")));
    }
    let split = a.max(1.0);
    let head = if split > a { integrate(&f, a, split, rel_tol, 0.0)? } else { 0.0 };
    let tail = integrate(
        |u| {
            let t = 1.0 / u;
            f(t) * t * t
        },
        0.0,
        1.0 / split,
        rel_tol,
        // absolute floor keeps vanishing tails from spinning on relative tolerance
        1e-300,
    )?;
    let total = head + tail;
    if !total.is_finite() {
        return Err(Error::NonConvergent("semi-infinite integral diverged".into()));
    }
    Ok(total)
}
