//! Extremes of `|g|` on circles `|z| = t`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{Analytic, C64};
use crate::{Error, Result};

const INITIAL_SAMPLES: usize = 64;
const SAMPLE_CAP: usize = 1 << 20;
/// Local extrema polished per level.
const POLISH_CANDIDATES: usize = 8;

/// Outcome of an adaptive circle search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleSample {
    pub t: f64,
    /// Equispaced angles used at the accepted level (power of two, >= 64).
    pub k_samples: usize,
    /// Attained extreme value of `|g|` (a certified bound in the search direction).
    pub value: f64,
    /// `value` widened by the acceptance tolerance in the other direction.
    pub bound: f64,
    /// Angle where `value` is attained.
    pub angle: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Extreme {
    Max,
    Min,
}

impl Extreme {
    /// Larger is better in the search direction.
    fn score(self, v: f64) -> f64 {
        match self {
            Extreme::Max => v,
            Extreme::Min => -v,
        }
    }
}

/// Estimate of `M(t, g) = max_{|z|=t} |g(z)|`.
///
/// `value` is an attained modulus (a lower bound for the true maximum); `bound`
/// is `value + tol (1 + value)`. Doubling the sample count must move the
/// polished maximum by less than `tol (1 + M)` for acceptance.
pub fn max_modulus<A: Analytic + ?Sized>(g: &A, t: f64, tol: f64) -> Result<CircleSample> {
    circle_extreme(g, t, tol, Extreme::Max)
}

/// Estimate of `min_{|z|=t} |g(z)|`; `value` is attained (an upper bound for the
/// true minimum) and `bound = max(0, value - tol (1 + value))`.
pub fn min_modulus<A: Analytic + ?Sized>(g: &A, t: f64, tol: f64) -> Result<CircleSample> {
    circle_extreme(g, t, tol, Extreme::Min)
}

fn circle_extreme<A: Analytic + ?Sized>(g: &A, t: f64, tol: f64, dir: Extreme) -> Result<CircleSample> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("circle radius must be positive, got {t}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let modulus = |theta: f64| g.eval(C64::from_polar(t, theta)).norm();

    let mut k = INITIAL_SAMPLES;
    let mut prev = polish(&modulus, k, dir);
    loop {
        k *= 2;
        let cur = polish(&modulus, k, dir);
        let change = (cur.0 - prev.0).abs();
        let best = if dir.score(cur.0) >= dir.score(prev.0) { cur } else { prev };
        if !best.0.is_finite() {
            return Err(Error::Domain(format!("non-finite modulus on |z| = {t}")));
        }
        if change <= tol * (1.0 + best.0) {
            let slack = tol * (1.0 + best.0);
            let bound = match dir {
                Extreme::Max => best.0 + slack,
                Extreme::Min => (best.0 - slack).max(0.0),
            };
            return Ok(CircleSample { t, k_samples: k, value: best.0, bound, angle: best.1 });
        }
        if k >= SAMPLE_CAP {
            return Err(Error::Oscillation { samples: k, last_change: change });
        }
        prev = cur;
    }
}

/// Sample `k` angles, then golden-section polish the best local extrema.
fn polish(modulus: &impl Fn(f64) -> f64, k: usize, dir: Extreme) -> (f64, f64) {
    let h = TAU / k as f64;
    let vals: Vec<f64> = (0..k).map(|j| modulus(j as f64 * h)).collect();
    let mut peaks: Vec<usize> = (0..k)
        .filter(|&j| {
            let s = dir.score(vals[j]);
            s >= dir.score(vals[(j + k - 1) % k]) && s >= dir.score(vals[(j + 1) % k])
        })
        .collect();
    peaks.sort_by(|&a, &b| dir.score(vals[b]).total_cmp(&dir.score(vals[a])));
    peaks.truncate(POLISH_CANDIDATES);

    let (mut best_v, mut best_theta) = (vals[0], 0.0);
    for (j, &v) in vals.iter().enumerate() {
        if dir.score(v) > dir.score(best_v) {
            best_v = v;
            best_theta = j as f64 * h;
        }
    }
    for &j in &peaks {
        let centre = j as f64 * h;
        let (theta, v) = golden(modulus, centre - h, centre + h, dir);
        if dir.score(v) > dir.score(best_v) {
            best_v = v;
            best_theta = theta;
        }
    }
    (best_v, best_theta.rem_euclid(TAU))
}

fn golden(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, dir: Extreme) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = dir.score(f(c));
    let mut fd = dir.score(f(d));
    for _ in 0..60 {
        if (b - a).abs() < 1e-13 {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = dir.score(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = dir.score(f(d));
        }
    }
    if fc > fd {
        (c, f(c))
    } else {
        (d, f(d))
    }
}
