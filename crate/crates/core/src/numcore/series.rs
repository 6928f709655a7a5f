use serde::{Deserialize, Serialize};

use super::{ComplexPoly, C64};
use crate::{Error, Result};

/// Power series known modulo `z^K`, `K = order()`.
///
/// An optional `log2|f_k|` channel carries magnitudes that underflow `f64`
/// (e.g. `2^{-k!}`). When present it is authoritative for magnitudes; the
/// complex channel is authoritative for phases.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaylorSeries {
    coeffs: Vec<C64>,
    log2_mags: Option<Vec<f64>>,
}

impl TaylorSeries {
    pub fn new(coeffs: Vec<C64>) -> Self {
        TaylorSeries { coeffs, log2_mags: None }
    }

    /// Attach a log-magnitude channel. Where both channels are finite (and the
    /// float is normal) they must agree to 1e-6 in log2 units.
    pub fn with_log2_mags(coeffs: Vec<C64>, log2_mags: Vec<f64>) -> Result<Self> {
        if coeffs.len() != log2_mags.len() {
            return Err(Error::Domain(format!(
                "log channel length {} differs from order {}",
                log2_mags.len(),
                coeffs.len()
            )));
        }
        for (k, (c, &l)) in coeffs.iter().zip(&log2_mags).enumerate() {
            let direct = c.norm().log2();
            if c.norm() >= f64::MIN_POSITIVE && l.is_finite() && (direct - l).abs() > 1e-6 * l.abs().max(1.0) {
                return Err(Error::Domain(format!(
                    "coefficient {k}: log channel {l} disagrees with |f_k| (log2 {direct})"
                )));
            }
            if l.is_nan() || l == f64::INFINITY {
                return Err(Error::Domain(format!("coefficient {k}: invalid log magnitude {l}")));
            }
        }
        Ok(TaylorSeries { coeffs, log2_mags: Some(log2_mags) })
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![C64::new(0.0, 0.0); order])
    }

    pub fn from_poly(p: &ComplexPoly, order: usize) -> Self {
        Self::new((0..order).map(|k| p.coeff(k)).collect())
    }

    /// Truncation order `K`: coefficients `0..K` are known.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<C64> {
        self.coeffs.get(k).copied()
    }

    pub fn has_log_channel(&self) -> bool {
        self.log2_mags.is_some()
    }

    /// `log2|f_k|`, from the log channel when present. `-inf` for zero.
    pub fn log2_mag(&self, k: usize) -> f64 {
        match &self.log2_mags {
            Some(l) => l[k],
            None => self.coeffs[k].norm().log2(),
        }
    }

    pub fn log2_mags(&self) -> Vec<f64> {
        (0..self.order()).map(|k| self.log2_mag(k)).collect()
    }

    pub fn truncated(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TaylorSeries {
            coeffs: self.coeffs[..order].to_vec(),
            log2_mags: self.log2_mags.as_ref().map(|l| l[..order].to_vec()),
        }
    }

    /// The polynomial `f_0 + ... + f_{n} z^n` (clamped to the known order).
    pub fn section(&self, n: usize) -> ComplexPoly {
        ComplexPoly::new(self.coeffs[..(n + 1).min(self.order())].to_vec())
    }

    /// Partial sum over the known coefficients.
    pub fn partial_sum(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `f(rho z)`; the log channel is shifted by `k log2 rho`.
    pub fn rescale_argument(&self, rho: f64) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(k, &c)| c * rho.powi(k as i32)).collect();
        let log2_mags =
            self.log2_mags.as_ref().map(|l| l.iter().enumerate().map(|(k, &v)| v + k as f64 * rho.log2()).collect());
        TaylorSeries { coeffs, log2_mags }
    }

    pub fn add(&self, other: &TaylorSeries) -> Self {
        let k = self.order().min(other.order());
        Self::new((0..k).map(|i| self.coeffs[i] + other.coeffs[i]).collect())
    }

    pub fn sub(&self, other: &TaylorSeries) -> Self {
        let k = self.order().min(other.order());
        Self::new((0..k).map(|i| self.coeffs[i] - other.coeffs[i]).collect())
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &TaylorSeries) -> Self {
        let k = self.order().min(other.order());
        let mut out = vec![C64::new(0.0, 0.0); k];
        for (i, &a) in self.coeffs[..k].iter().enumerate() {
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs[..k - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn mul_poly(&self, p: &ComplexPoly) -> Self {
        self.mul(&TaylorSeries::from_poly(p, self.order()))
    }

    /// `self / other`, requires `other[0] != 0`.
    pub fn div(&self, other: &TaylorSeries) -> Result<Self> {
        let k = self.order().min(other.order());
        let d0 = other.coeffs.first().copied().unwrap_or_default();
        if d0 == C64::new(0.0, 0.0) {
            return Err(Error::Domain("series division by a series vanishing at 0".into()));
        }
        let mut out = vec![C64::new(0.0, 0.0); k];
        for n in 0..k {
            let mut acc = self.coeffs[n];
            for j in 1..=n {
                acc -= other.coeffs[j] * out[n - j];
            }
            out[n] = acc / d0;
        }
        Ok(Self::new(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_times_one_minus_z_is_one() {
        let geom = TaylorSeries::new(vec![C64::new(1.0, 0.0); 12]);
        let p = geom.mul_poly(&ComplexPoly::from_real(&[1.0, -1.0]));
        assert!((p.coeffs()[0] - 1.0).norm() < 1e-15);
        assert!(p.coeffs()[1..].iter().all(|c| c.norm() < 1e-15));
    }

    #[test]
    fn division_inverts_product() {
        let a = TaylorSeries::new((0..10).map(|k| C64::new(1.0 / (k + 1) as f64, 0.3)).collect());
        let b = TaylorSeries::from_poly(&ComplexPoly::from_real(&[2.0, -1.0, 0.25]), 10);
        let back = a.mul(&b).div(&b).unwrap();
        for (x, y) in back.coeffs().iter().zip(a.coeffs()) {
            assert!((x - y).norm() < 1e-13);
        }
    }

    #[test]
    fn log_channel_must_agree() {
        let c = vec![C64::new(0.25, 0.0)];
        assert!(TaylorSeries::with_log2_mags(c.clone(), vec![-2.0]).is_ok());
        assert!(TaylorSeries::with_log2_mags(c, vec![-3.0]).is_err());
    }

    #[test]
    fn log_channel_survives_underflow() {
        // 2^{-5040} underflows to zero but the channel keeps it
        let s = TaylorSeries::with_log2_mags(vec![C64::new(0.0, 0.0)], vec![-5040.0]).unwrap();
        assert_eq!(s.log2_mag(0), -5040.0);
        assert_eq!(s.rescale_argument(2.0).log2_mag(0), -5040.0);
    }
}
