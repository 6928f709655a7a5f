//! Coefficient-decay analysis: radius of convergence and degree detection.

use serde::{Deserialize, Serialize};

use super::TaylorSeries;
use crate::{Error, Result};

const MIN_NONZERO: usize = 16;
/// Window-maximum drop (log2 units) beyond which no finite-radius model applies.
const ENTIRE_DROP: f64 = 8.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Confidence {
    High,
    /// Sparse or underflowing tail (gap series, super-exponential decay).
    Low,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusEstimate {
    /// Estimated radius; `f64::INFINITY` for entire functions and polynomials.
    pub rho: f64,
    pub confidence: Confidence,
    /// Every coefficient in the analysed tail is zero.
    pub polynomial: bool,
    /// Least-squares slope of the window maxima of `log2 |f_k|^{1/k}` against `log2 k`.
    pub decay_slope: f64,
}

impl RadiusEstimate {
    pub fn is_entire(&self) -> bool {
        self.rho.is_infinite()
    }
}

/// Estimate `rho = 1 / limsup |f_k|^{1/k}`.
///
/// `limsup` is emulated by maxima of `log2|f_k| / k` over sliding windows of
/// length `ceil(K/4)` covering the tail `k >= ceil(K/4)`. The window maxima are
/// fitted by least squares with two three-term models:
///
/// * finite radius: `L + beta log2(k)/k + gamma/k` (algebraic singularity),
/// * entire: `c + s log2 k + gamma/k` (finite order, `s < 0`),
///
/// and the better fit wins. A drop of more than 8 in the window maxima across
/// the tail is declared entire outright.
pub fn radius_of_convergence(s: &TaylorSeries) -> Result<RadiusEstimate> {
    let order = s.order();
    let window = order.div_ceil(4).max(1);
    let logs = s.log2_mags();

    let tail = window.min(order)..order;
    if tail.clone().all(|k| logs[k] == f64::NEG_INFINITY) {
        return Ok(RadiusEstimate {
            rho: f64::INFINITY,
            confidence: Confidence::High,
            polynomial: true,
            decay_slope: f64::NEG_INFINITY,
        });
    }
    let nonzero = logs.iter().filter(|l| l.is_finite()).count();
    if nonzero < MIN_NONZERO {
        return Err(Error::TooFewCoefficients { needed: MIN_NONZERO, found: nonzero });
    }

    // Sparse floats in the tail: either a gap series or magnitudes below f64 range.
    let float_nonzero = tail.clone().filter(|&k| s.coeffs()[k].norm() > 0.0).count();
    let mut confidence = if 2 * float_nonzero < tail.len() { Confidence::Low } else { Confidence::High };

    let root_log = |k: usize| logs[k] / k as f64;
    let mut points: Vec<(f64, f64)> = Vec::new();
    let mut start = window;
    while start + window <= order {
        let best = (start..start + window)
            .filter(|&k| k > 0 && logs[k].is_finite())
            .max_by(|&a, &b| root_log(a).total_cmp(&root_log(b)));
        if let Some(k) = best {
            if points.last().map(|p| p.0) != Some(k as f64) {
                points.push((k as f64, root_log(k)));
            }
        }
        start += 1;
    }
    if points.len() < 4 {
        confidence = Confidence::Low;
    }
    if points.is_empty() {
        return Err(Error::TooFewCoefficients { needed: MIN_NONZERO, found: nonzero });
    }

    let xs_log: Vec<f64> = points.iter().map(|p| p.0.log2()).collect();
    let ws: Vec<f64> = points.iter().map(|p| p.1).collect();
    let decay_slope = slope(&xs_log, &ws);
    let drop = ws[0] - ws[ws.len() - 1];

    let entire = if drop > ENTIRE_DROP {
        true
    } else if points.len() >= 4 {
        let finite = lstsq3(&points, |k| [1.0, k.log2() / k, 1.0 / k]);
        let ent = lstsq3(&points, |k| [1.0, k.log2(), 1.0 / k]);
        match (finite, ent) {
            (Some((_, rss_f)), Some((c, rss_e))) => rss_e < rss_f && c[1] < -0.05,
            _ => decay_slope < -0.35,
        }
    } else {
        decay_slope < -0.35
    };

    let rho = if entire {
        f64::INFINITY
    } else if points.len() >= 4 {
        match lstsq3(&points, |k| [1.0, k.log2() / k, 1.0 / k]) {
            Some((c, _)) => (-c[0]).exp2(),
            None => (-ws[ws.len() - 1]).exp2(),
        }
    } else {
        (-ws[ws.len() - 1]).exp2()
    };

    Ok(RadiusEstimate { rho, confidence, polynomial: false, decay_slope })
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return 0.0;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Least squares for a three-function basis; returns coefficients and residual sum of squares.
fn lstsq3(points: &[(f64, f64)], basis: impl Fn(f64) -> [f64; 3]) -> Option<([f64; 3], f64)> {
    let mut ata = nalgebra::Matrix3::<f64>::zeros();
    let mut atb = nalgebra::Vector3::<f64>::zeros();
    // column scaling keeps the normal equations sane
    let mut scale = [0.0f64; 3];
    for &(k, _) in points {
        let b = basis(k);
        for i in 0..3 {
            scale[i] = scale[i].max(b[i].abs());
        }
    }
    if scale.contains(&0.0) {
        return None;
    }
    for &(k, w) in points {
        let b = basis(k);
        let row = nalgebra::Vector3::new(b[0] / scale[0], b[1] / scale[1], b[2] / scale[2]);
        ata += row * row.transpose();
        atb += row * w;
    }
    let sol = ata.lu().solve(&atb)?;
    let coef = [sol[0] / scale[0], sol[1] / scale[1], sol[2] / scale[2]];
    let rss = points
        .iter()
        .map(|&(k, w)| {
            let b = basis(k);
            let fit = coef[0] * b[0] + coef[1] * b[1] + coef[2] * b[2];
            (w - fit).powi(2)
        })
        .sum();
    Some((coef, rss))
}

/// Outcome of [`degree_detect`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DegreeVerdict {
    Degree(usize),
    /// The zero series; its degree is minus infinity.
    NegativeInfinity,
    NotPolynomial,
}

/// Detect a polynomial from truncated coefficients.
///
/// `d` is the largest `k` with `|f_k| > tol max_j |f_j|`. The series is a
/// polynomial of degree `d` only if `d <= K/4` and the tail past `d` is empty:
/// with a log channel every finite entry counts, otherwise entries above
/// `1e-2 tol max|f_j|` (clear of rounding noise) count.
pub fn degree_detect(s: &TaylorSeries, tol: f64) -> DegreeVerdict {
    let logs = s.log2_mags();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return DegreeVerdict::NegativeInfinity;
    }
    let cut = top + tol.log2();
    let d = logs.iter().rposition(|&l| l > cut).unwrap_or(0);
    if 4 * d > s.order() {
        return DegreeVerdict::NotPolynomial;
    }
    let noise = top + (1e-2 * tol).log2();
    let tail_live = logs[d + 1..].iter().any(|&l| if s.has_log_channel() { l.is_finite() } else { l > noise });
    if tail_live {
        DegreeVerdict::NotPolynomial
    } else {
        DegreeVerdict::Degree(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::{CatalogFunction, C64};

    fn real_series(f: impl Fn(usize) -> f64, k: usize) -> TaylorSeries {
        TaylorSeries::new((0..k).map(|i| C64::new(f(i), 0.0)).collect())
    }

    #[test]
    fn geometric_half() {
        let est = radius_of_convergence(&real_series(|k| 0.5f64.powi(k as i32), 64)).unwrap();
        assert!((est.rho - 2.0).abs() < 1e-9, "{est:?}");
        assert_eq!(est.confidence, Confidence::High);
    }

    #[test]
    fn all_ones() {
        let est = radius_of_convergence(&real_series(|_| 1.0, 64)).unwrap();
        assert!((est.rho - 1.0).abs() < 1e-9);
    }

    #[test]
    fn algebraic_pole_orders() {
        // 1/(1-z)^{p+1} has coefficients ~ k^p
        for p in [1, 3, 6] {
            let est = radius_of_convergence(&real_series(|k| ((k + 1) as f64).powi(p), 64)).unwrap();
            assert!((est.rho - 1.0).abs() < 0.05, "p={p}: {est:?}");
        }
    }

    #[test]
    fn exp_is_entire() {
        let est = radius_of_convergence(&CatalogFunction::exp().taylor(64)).unwrap();
        assert!(est.is_entire(), "{est:?}");
        assert_eq!(est.confidence, Confidence::High);
    }

    #[test]
    fn factorial_lacunary_is_entire_with_low_confidence() {
        let est = radius_of_convergence(&CatalogFunction::lacunary_factorial().taylor(64)).unwrap();
        assert!(est.is_entire());
        assert_eq!(est.confidence, Confidence::Low);
    }

    #[test]
    fn gap_series_flagged() {
        // sum z^{2^j}: radius one, mostly zero coefficients
        let s = real_series(|k| if k.is_power_of_two() { 1.0 } else { 0.0 }, 1 << 12);
        let est = radius_of_convergence(&s);
        // 13 nonzero coefficients is below the 16 needed
        assert!(matches!(est, Err(Error::TooFewCoefficients { .. })));
        let dense_gaps = real_series(|k| if k % 3 == 0 { 1.0 } else { 0.0 }, 96);
        let est = radius_of_convergence(&dense_gaps).unwrap();
        assert_eq!(est.confidence, Confidence::Low);
        assert!((est.rho - 1.0).abs() < 0.05);
    }

    #[test]
    fn zero_tail_is_polynomial() {
        let est = radius_of_convergence(&real_series(|k| if k < 4 { 1.0 } else { 0.0 }, 32)).unwrap();
        assert!(est.polynomial && est.is_entire());
    }

    #[test]
    fn degree_examples() {
        let s = real_series(|k| [1.0, 0.0, 3.0].get(k).copied().unwrap_or(0.0), 16);
        assert_eq!(degree_detect(&s, 1e-12), DegreeVerdict::Degree(2));
        assert_eq!(degree_detect(&CatalogFunction::exp().taylor(64), 1e-12), DegreeVerdict::NotPolynomial);
        // float-only exp as well
        let e = CatalogFunction::exp().taylor(64);
        let plain = TaylorSeries::new(e.coeffs().to_vec());
        assert_eq!(degree_detect(&plain, 1e-12), DegreeVerdict::NotPolynomial);
        assert_eq!(degree_detect(&TaylorSeries::zero(8), 1e-12), DegreeVerdict::NegativeInfinity);
    }
}
