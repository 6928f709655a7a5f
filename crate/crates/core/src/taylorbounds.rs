//! Coefficient-decay constants and certificates for functions `f` such that
//! `f - P_n` has many zeros in a disk, plus the doubling constant that turns
//! such decay into a degree bound.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::numcore::{max_modulus, Analytic, CatalogFunction, ComplexPoly, InequalityCheck, TaylorSeries, C64};
use crate::polyinterp::NodeSet;
use crate::{Error, Result};

pub const CHECK_SLACK: f64 = 1e-8;
const MODULUS_TOL: f64 = 1e-10;
const TAIL_CUTOFF: f64 = 1e-18;
const DOUBLING_HORIZON: usize = 100_000;

/// Constants depending only on the disk radius `r`. Logs are natural, though
/// `A` and `delta` are ratios of logs and do not depend on the base.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskConstants {
    pub r: f64,
    pub s: f64,
    pub a1: f64,
    pub a2: f64,
    pub a: f64,
    #[serde(rename = "A")]
    pub big_a: f64,
    pub delta: f64,
}

pub fn disk_constants(r: f64) -> Result<DiskConstants> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("disk radius {r} must lie in (0, 1)")));
    }
    let s = (2.0 * r + 1.0) / 3.0;
    let a1 = 2.0 * r * s / (r * r + s * s);
    let a2 = a1.sqrt();
    let a = a2.sqrt();
    let big_a = (-4.0 * (5f64.ln() - (1.0 - r).ln()) / a1.ln()).max(1.0);
    let delta = a.ln() / r.ln();
    Ok(DiskConstants { r, s, a1, a2, a, big_a, delta })
}

impl DiskConstants {
    /// Smallest zero count `N` with `N >= A (n+1)`.
    pub fn min_zero_count(&self, n: usize) -> usize {
        (self.big_a * (n + 1) as f64).ceil() as usize
    }

    /// Smallest radius at which [`coeff_bound`] may be applied.
    pub fn min_radius(&self) -> f64 {
        (self.r + 2.0) / 3.0
    }
}

/// `R_+ = max(R, 1)`.
pub fn r_plus(big_r: f64) -> f64 {
    big_r.max(1.0)
}

/// `M(r, g) <= M(s, g) (2rs/(r^2+s^2))^N` for `g` with `N` zeros in the closed `r`-disk.
pub fn zero_decrement_check<A: Analytic + ?Sized>(g: &A, r: f64, s: f64, n_zeros: usize) -> Result<InequalityCheck> {
    if !(r > 0.0 && r < s) {
        return Err(Error::Domain(format!("zero decrement needs 0 < r < s (r={r}, s={s})")));
    }
    let lhs = max_modulus(g, r, MODULUS_TOL)?.value;
    let factor = 2.0 * r * s / (r * r + s * s);
    let rhs = max_modulus(g, s, MODULUS_TOL)?.value * factor.powi(n_zeros as i32);
    Ok(InequalityCheck::new(lhs, rhs, CHECK_SLACK))
}

/// `|f_k| <= M(R,f) / R_+^{n+1} a^N` for `n < k <= floor(delta N)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayCertificate {
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub mrf: f64,
    /// Inclusive range of certified indices; empty when `floor(delta N) <= n`.
    pub k_first: usize,
    pub k_last: usize,
    pub log2_bound: f64,
    pub empty: bool,
}

impl DecayCertificate {
    pub fn bound(&self) -> f64 {
        self.log2_bound.exp2()
    }

    pub fn ks(&self) -> std::ops::RangeInclusive<usize> {
        self.k_first..=self.k_last
    }

    /// Per-index bound values.
    pub fn bounds(&self) -> Vec<(usize, f64)> {
        if self.empty {
            return Vec::new();
        }
        self.ks().map(|k| (k, self.bound())).collect()
    }

    /// Compare every certified coefficient of `s` with the bound, in log2 units
    /// so that underflowing coefficients are handled.
    pub fn check(&self, s: &TaylorSeries) -> Result<Vec<InequalityCheck>> {
        if self.empty {
            return Ok(Vec::new());
        }
        if s.order() <= self.k_last {
            return Err(Error::TooFewCoefficients { needed: self.k_last + 1, found: s.order() });
        }
        Ok(self
            .ks()
            .map(|k| {
                let l = s.log2_mag(k);
                let holds = l <= self.log2_bound + CHECK_SLACK.ln_1p() / std::f64::consts::LN_2;
                InequalityCheck { lhs: l.exp2(), rhs: self.bound(), holds }
            })
            .collect())
    }
}

pub fn coeff_bound(dc: &DiskConstants, n: usize, big_n: usize, big_r: f64, mrf: f64) -> Result<DecayCertificate> {
    if !(big_r >= dc.min_radius()) || !(mrf >= 0.0) {
        return Err(Error::Domain(format!(
            "coefficient bound needs R >= (r+2)/3 = {} and M >= 0 (R={big_r}, M={mrf})",
            dc.min_radius()
        )));
    }
    if (big_n as f64) < dc.big_a * (n + 1) as f64 {
        return Err(Error::NotApplicable(format!("N = {big_n} < A(n+1) = {:.3}", dc.big_a * (n + 1) as f64)));
    }
    let k_last = (dc.delta * big_n as f64).floor() as usize;
    let log2_bound = mrf.log2() - (n + 1) as f64 * r_plus(big_r).log2() + big_n as f64 * dc.a.log2();
    Ok(DecayCertificate { n, big_n, big_r, mrf, k_first: n + 1, k_last, log2_bound, empty: k_last <= n })
}

/// `f = P + omega h` with `omega` the monic polynomial vanishing at `roots`,
/// so `f - P` has at least `|roots|` zeros in the closed disk of `roots`.
///
/// `omega` is evaluated in product form: its expanded coefficients are far
/// larger than its values on circles of radius about 1.
pub fn synth_witness(p: &ComplexPoly, roots: &NodeSet, h: &CatalogFunction) -> CatalogFunction {
    let omega = roots.omega();
    let zs: Arc<[C64]> = roots.nodes().into();
    let dp = p.derivative();
    let (pe, he) = (p.clone(), h.clone());
    let (pt, ot, ht) = (p.clone(), omega, h.clone());
    let (ze, zd, hd) = (zs.clone(), zs, h.clone());
    let deriv: Option<Arc<dyn Fn(C64) -> C64 + Send + Sync>> = if Analytic::deriv(h, C64::new(0.0, 0.0)).is_some() {
        Some(Arc::new(move |z| {
            let (w, dw) = product_with_derivative(&zd, z);
            dp.eval(z) + dw * hd.eval(z) + w * Analytic::deriv(&hd, z).unwrap_or_default()
        }))
    } else {
        None
    };
    CatalogFunction::custom(
        format!("witness[{}]", h.id()),
        move |z| pe.eval(z) + product_with_derivative(&ze, z).0 * he.eval(z),
        deriv,
        move |k| TaylorSeries::from_poly(&pt, k).add(&ht.taylor(k).mul_poly(&ot)),
        h.rho_known(),
    )
}

/// `prod (z - z_j)` and its derivative.
fn product_with_derivative(zs: &[C64], z: C64) -> (C64, C64) {
    let mut w = C64::new(1.0, 0.0);
    let mut dw = C64::new(0.0, 0.0);
    for &zj in zs {
        dw = dw * (z - zj) + w;
        w *= z - zj;
    }
    (w, dw)
}

/// Result of [`doubling_constant`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoublingConstant {
    #[serde(rename = "C")]
    pub c: f64,
    /// `log C / log 2`.
    pub degree_cap: f64,
    /// Last index summed.
    pub last_index: usize,
}

/// `C = sum_{n<=n0} 2^n + sum_{n>=n0} 2^{n+1} a^{N(n)}`.
///
/// The tail is summed until a term drops below 1e-18 once
/// `2 a^{N(n)/n} <= 1/2`, within a horizon of 100000 indices.
pub fn doubling_constant(n0: usize, a: f64, schedule: impl Fn(usize) -> f64) -> Result<DoublingConstant> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::Domain(format!("doubling constant needs 0 <= a < 1, got {a}")));
    }
    let la = a.log2();
    let log2_pow = |big_n: f64| if big_n == 0.0 { 0.0 } else { big_n * la };
    let head: f64 = (0..=n0).map(|n| (n as f64).exp2()).sum();
    let mut tail = 0.0;
    for n in n0..DOUBLING_HORIZON {
        let big_n = schedule(n);
        let term = ((n + 1) as f64 + log2_pow(big_n)).exp2();
        tail += term;
        let contracting = n > 0 && 1.0 + log2_pow(big_n) / n as f64 <= -1.0;
        if contracting && term < TAIL_CUTOFF {
            let c = head + tail;
            return Ok(DoublingConstant { c, degree_cap: c.log2(), last_index: n });
        }
    }
    Err(Error::Diverges { horizon: DOUBLING_HORIZON })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn half_disk_constants() {
        let dc = disk_constants(0.5).unwrap();
        assert!((dc.s - 2.0 / 3.0).abs() < 1e-15);
        assert!((dc.a1 - 0.96).abs() < 1e-15);
        assert!((dc.big_a - (-4.0 * 10f64.ln() / 0.96f64.ln())).abs() < 1e-9);
        assert!((dc.big_a - 225.62).abs() < 5e-3);
        assert!((dc.a - 0.989847).abs() < 1e-6);
        assert!((dc.delta - 0.014723).abs() < 1e-6);
        assert_eq!(dc.min_zero_count(1), 452);
    }

    #[test]
    fn near_one_constants() {
        let dc = disk_constants(0.9).unwrap();
        assert!((dc.s - 2.8 / 3.0).abs() < 1e-15);
        assert!((dc.a1 - 1.68 / 1.681111111111111).abs() < 1e-12);
        assert!(disk_constants(1.0).is_err() && disk_constants(0.0).is_err());
    }

    #[test]
    fn monomial_decrement() {
        let g = ComplexPoly::monomial(7, C64::new(1.0, 0.0));
        let chk = zero_decrement_check(&g, 0.4, 0.8, 7).unwrap();
        assert!(chk.holds && chk.lhs < chk.rhs);
        let none = zero_decrement_check(&CatalogFunction::exp(), 0.4, 0.8, 0).unwrap();
        assert!(none.holds);
    }

    #[test]
    fn certificate_example() {
        let dc = disk_constants(0.5).unwrap();
        let cert = coeff_bound(&dc, 0, 226, 1.0, 1.0).unwrap();
        assert_eq!((cert.k_first, cert.k_last), (1, 3));
        assert!((cert.bound() - dc.a.powi(226)).abs() < 1e-15);
        assert!((cert.bound() - 0.0996).abs() < 5e-4);
        assert!(matches!(coeff_bound(&dc, 0, 225, 1.0, 1.0), Err(Error::NotApplicable(_))));
        assert!(coeff_bound(&dc, 0, 226, 0.8, 1.0).is_err());
        // R_+ = 1: independent of n
        let c2 = coeff_bound(&dc, 1, 452, 1.0, 1.0).unwrap();
        assert!((c2.log2_bound - 452.0 * dc.a.log2()).abs() < 1e-12);
    }

    #[test]
    fn witness_shapes() {
        let p = ComplexPoly::from_real(&[1.0, 1.0]);
        let zero_h = CatalogFunction::polynomial(ComplexPoly::zero());
        let roots = NodeSet::new(vec![C64::new(0.1, 0.0)], 0.5).unwrap();
        let f = synth_witness(&p, &roots, &zero_h);
        assert_eq!(f.taylor(8), TaylorSeries::from_poly(&p, 8));

        let zeros = NodeSet::new(vec![C64::new(0.0, 0.0); 5], 0.5).unwrap();
        let one = CatalogFunction::polynomial(ComplexPoly::one());
        let f = synth_witness(&ComplexPoly::zero(), &zeros, &one);
        assert_eq!(f.taylor(8), TaylorSeries::from_poly(&ComplexPoly::monomial(5, C64::new(1.0, 0.0)), 8));
    }

    #[test]
    fn witness_respects_certificate() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let dc = disk_constants(0.5).unwrap();
        let n = 1;
        let big_n = dc.min_zero_count(n);
        let roots = NodeSet::random_in_disk(big_n, 0.5, &mut rng).unwrap();
        let f = synth_witness(&ComplexPoly::from_real(&[1.0, 1.0]), &roots, &CatalogFunction::exp());
        let mrf = max_modulus(&f, 1.0, 1e-10).unwrap().value;
        let cert = coeff_bound(&dc, n, big_n, 1.0, mrf).unwrap();
        assert_eq!(cert.k_last, 6);
        let checks = cert.check(&f.taylor(cert.k_last + 1)).unwrap();
        assert!(checks.iter().all(|c| c.holds));
    }

    #[test]
    fn doubling_examples() {
        let d = doubling_constant(0, 0.0, |_| 5.0).unwrap();
        assert_eq!(d.c, 1.0);
        assert_eq!(d.degree_cap, 0.0);
        let d = doubling_constant(2, 0.5, |n| (n * n) as f64).unwrap();
        // 7 + 2^{-1} + 2^{-5} + 2^{-11} + 2^{-19} + ...
        let oracle: f64 = 7.0 + (2..40).map(|n: i32| 2f64.powi(n + 1 - n * n)).sum::<f64>();
        assert!((d.c - oracle).abs() < 1e-15);
        assert!((d.c - 7.531740).abs() < 1e-6);
        assert!(matches!(doubling_constant(0, 0.99, |n| n as f64), Err(Error::Diverges { .. })));
    }
}
