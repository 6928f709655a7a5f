//! Named analytic functions with point evaluators and Taylor streams.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Analytic, ComplexPoly, TaylorSeries, C64};
use crate::{Error, Result};

type EvalFn = Arc<dyn Fn(C64) -> C64 + Send + Sync>;
type TaylorFn = Arc<dyn Fn(usize) -> TaylorSeries + Send + Sync>;

/// Coefficients cached for evaluating the random unimodular series.
const RANDOM_CACHE: usize = 1 << 15;
/// Relative tolerance for treating a root of `Q` as cancelled by `P`.
const CANCEL_TOL: f64 = 1e-9;

/// A named function: evaluator, optional derivative, Taylor coefficients at
/// the origin and, when known exactly, the radius of convergence there
/// (`f64::INFINITY` for entire functions).
#[derive(Clone)]
pub struct CatalogFunction {
    id: String,
    eval: EvalFn,
    deriv: Option<EvalFn>,
    taylor: TaylorFn,
    rho_known: Option<f64>,
}

impl fmt::Debug for CatalogFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogFunction")
            .field("id", &self.id)
            .field("rho_known", &self.rho_known)
            .finish_non_exhaustive()
    }
}

impl CatalogFunction {
    pub fn custom(
        id: impl Into<String>,
        eval: impl Fn(C64) -> C64 + Send + Sync + 'static,
        deriv: Option<EvalFn>,
        taylor: impl Fn(usize) -> TaylorSeries + Send + Sync + 'static,
        rho_known: Option<f64>,
    ) -> Self {
        CatalogFunction { id: id.into(), eval: Arc::new(eval), deriv, taylor: Arc::new(taylor), rho_known }
    }

    pub fn polynomial(p: ComplexPoly) -> Self {
        let dp = p.derivative();
        let (pe, pt) = (p.clone(), p);
        CatalogFunction {
            id: "poly".into(),
            eval: Arc::new(move |z| pe.eval(z)),
            deriv: Some(Arc::new(move |z| dp.eval(z))),
            taylor: Arc::new(move |k| TaylorSeries::from_poly(&pt, k)),
            rho_known: Some(f64::INFINITY),
        }
    }

    /// `p / q`; requires `q(0) != 0` so the function is analytic at the origin.
    pub fn rational(p: ComplexPoly, q: ComplexPoly) -> Result<Self> {
        if q.coeff(0) == C64::new(0.0, 0.0) {
            return Err(Error::Domain("rational: denominator vanishes at the origin".into()));
        }
        let pscale = p.norm().max(f64::MIN_POSITIVE);
        let rho = q
            .roots()
            .into_iter()
            .filter(|&z| p.eval(z).norm() > CANCEL_TOL * pscale * (1.0 + z.norm()).powi(p.degree().unwrap_or(0) as i32))
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min);
        let (dp, dq) = (p.derivative(), q.derivative());
        let (pe, qe) = (p.clone(), q.clone());
        let (pd, qd) = (p.clone(), q.clone());
        Ok(CatalogFunction {
            id: "rational".into(),
            eval: Arc::new(move |z| pe.eval(z) / qe.eval(z)),
            deriv: Some(Arc::new(move |z| {
                let qz = qd.eval(z);
                (dp.eval(z) * qz - pd.eval(z) * dq.eval(z)) / (qz * qz)
            })),
            taylor: Arc::new(move |k| {
                TaylorSeries::from_poly(&p, k).div(&TaylorSeries::from_poly(&q, k)).expect("q(0) checked nonzero")
            }),
            rho_known: Some(rho),
        })
    }

    /// `1 / (1 - z)`.
    pub fn geometric() -> Self {
        let one = C64::new(1.0, 0.0);
        CatalogFunction {
            id: "geom".into(),
            eval: Arc::new(move |z| one / (one - z)),
            deriv: Some(Arc::new(move |z| one / ((one - z) * (one - z)))),
            taylor: Arc::new(move |k| TaylorSeries::new(vec![one; k])),
            rho_known: Some(1.0),
        }
    }

    pub fn exp() -> Self {
        CatalogFunction {
            id: "exp".into(),
            eval: Arc::new(|z: C64| z.exp()),
            deriv: Some(Arc::new(|z: C64| z.exp())),
            taylor: Arc::new(|k| {
                let mut logs = Vec::with_capacity(k);
                let mut coeffs = Vec::with_capacity(k);
                let (mut lf, mut c) = (0.0f64, 1.0f64);
                for j in 0..k {
                    if j > 0 {
                        lf += (j as f64).log2();
                        c /= j as f64;
                    }
                    logs.push(-lf);
                    coeffs.push(C64::new(c, 0.0));
                }
                TaylorSeries::with_log2_mags(coeffs, logs).expect("consistent channels")
            }),
            rho_known: Some(f64::INFINITY),
        }
    }

    /// `sum_k 2^{-k!} z^k`: entire, with coefficients decaying so fast that
    /// they leave `f64` range from `k = 7` on. Carries the exact log channel.
    pub fn lacunary_factorial() -> Self {
        CatalogFunction {
            id: "lacunary-factorial".into(),
            eval: Arc::new(|z| lacunary_sum(z, 0)),
            deriv: Some(Arc::new(|z| lacunary_sum(z, 1))),
            taylor: Arc::new(|k| {
                let logs: Vec<f64> = (0..k).map(|j| -factorial(j).min(1e308)).collect();
                let coeffs = logs.iter().map(|&l| C64::new(l.exp2(), 0.0)).collect();
                TaylorSeries::with_log2_mags(coeffs, logs).expect("consistent channels")
            }),
            rho_known: Some(f64::INFINITY),
        }
    }

    /// Series with seeded random unimodular coefficients; radius one, and
    /// (almost surely) the unit circle is a natural boundary.
    pub fn random_radius_one(seed: u64) -> Self {
        let cache: Arc<Vec<C64>> = Arc::new(unimodular(seed, RANDOM_CACHE));
        let (ce, cd) = (cache.clone(), cache.clone());
        CatalogFunction {
            id: "random-radius-one".into(),
            eval: Arc::new(move |z| power_sum(&ce, z, 0)),
            deriv: Some(Arc::new(move |z| power_sum(&cd, z, 1))),
            taylor: Arc::new(move |k| {
                if k <= cache.len() {
                    TaylorSeries::new(cache[..k].to_vec())
                } else {
                    TaylorSeries::new(unimodular(seed, k))
                }
            }),
            rho_known: Some(1.0),
        }
    }

    /// `g(z) = f(rho z)`.
    pub fn rescaled(&self, rho: f64) -> Self {
        let (fe, ft) = (self.eval.clone(), self.taylor.clone());
        let deriv = self.deriv.clone().map(|d| -> EvalFn { Arc::new(move |z: C64| d(z * rho) * rho) });
        CatalogFunction {
            id: format!("{}@{rho}", self.id),
            eval: Arc::new(move |z| fe(z * rho)),
            deriv,
            taylor: Arc::new(move |k| ft(k).rescale_argument(rho)),
            rho_known: self.rho_known.map(|r| r / rho),
        }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn rho_known(&self) -> Option<f64> {
        self.rho_known
    }

    /// Taylor coefficients `f_0 .. f_{K-1}`.
    pub fn taylor(&self, order: usize) -> TaylorSeries {
        (self.taylor)(order)
    }

    pub fn eval(&self, z: C64) -> C64 {
        (self.eval)(z)
    }
}

impl Analytic for CatalogFunction {
    fn eval(&self, z: C64) -> C64 {
        (self.eval)(z)
    }
    fn deriv(&self, z: C64) -> Option<C64> {
        self.deriv.as_ref().map(|d| d(z))
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

/// `sum_k k^{(p)} 2^{-k!} z^{k-p}` for `p` in {0, 1}, summed in the log domain.
fn lacunary_sum(z: C64, p: usize) -> C64 {
    let lz = z.norm().log2();
    let mut acc = C64::new(0.0, 0.0);
    let mut best = f64::NEG_INFINITY;
    for k in p.. {
        let fall = if p == 1 { k as f64 } else { 1.0 };
        let l = -factorial(k) + (k - p) as f64 * lz + fall.log2();
        best = best.max(l);
        if z.norm() == 0.0 {
            if k == p {
                acc += C64::new(fall * (-factorial(k)).exp2(), 0.0);
            }
            break;
        }
        acc += C64::from_polar(l.exp2(), (k - p) as f64 * z.arg());
        // factorial growth dominates from here: terms only shrink
        if k > 3 && l < best - 60.0 && factorial(k + 1) - factorial(k) > lz.max(0.0) + 1.0 {
            break;
        }
        if k > 200 {
            break;
        }
    }
    acc
}

fn unimodular(seed: u64, n: usize) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))).collect()
}

/// Horner sum of the `p`-th derivative of `sum c_k z^k`, truncated once the
/// geometric tail is below `1e-17`; NaN outside the unit disk.
fn power_sum(c: &[C64], z: C64, p: usize) -> C64 {
    let m = z.norm();
    if m >= 1.0 {
        return C64::new(f64::NAN, f64::NAN);
    }
    let terms = if m == 0.0 {
        p + 1
    } else {
        let need = ((1e-17 * (1.0 - m).powi(2)).ln() / m.ln()).ceil() as usize + p + 2;
        need.min(c.len())
    };
    let mut acc = C64::new(0.0, 0.0);
    for k in (p..terms).rev() {
        let w = if p == 1 { k as f64 } else { 1.0 };
        acc = acc * z + c[k] * w;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cross_check(f: &CatalogFunction, radius: f64) {
        let s = f.taylor(200);
        for j in 0..16 {
            let z = C64::from_polar(radius, j as f64 * 0.4);
            let diff = (s.partial_sum(z) - f.eval(z)).norm();
            assert!(diff < 1e-10, "{}: {diff} at {z}", f.id());
        }
    }

    #[test]
    fn taylor_matches_eval() {
        cross_check(&CatalogFunction::geometric(), 0.5);
        cross_check(&CatalogFunction::exp(), 2.0);
        cross_check(&CatalogFunction::lacunary_factorial(), 3.0);
        cross_check(&CatalogFunction::random_radius_one(7), 0.5);
        let r = CatalogFunction::rational(ComplexPoly::from_real(&[1.0, 1.0]), ComplexPoly::from_real(&[1.0, -2.0]))
            .unwrap();
        cross_check(&r, 0.25);
        cross_check(&CatalogFunction::geometric().rescaled(0.5), 0.9);
    }

    #[test]
    fn rational_radius_from_pole() {
        let r = CatalogFunction::rational(ComplexPoly::from_real(&[1.0, 1.0]), ComplexPoly::from_real(&[1.0, -2.0]))
            .unwrap();
        assert!((r.rho_known().unwrap() - 0.5).abs() < 1e-12);
        // (1 - z)/(1 - z)(2 - z): the cancelled root does not count
        let p = ComplexPoly::from_real(&[1.0, -1.0]);
        let q = &p * &ComplexPoly::from_real(&[2.0, -1.0]);
        let c = CatalogFunction::rational(p, q).unwrap();
        assert!((c.rho_known().unwrap() - 2.0).abs() < 1e-9);
        assert!(CatalogFunction::rational(ComplexPoly::one(), ComplexPoly::from_real(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn lacunary_log_channel() {
        let s = CatalogFunction::lacunary_factorial().taylor(12);
        assert_eq!(s.log2_mag(3), -6.0);
        assert_eq!(s.log2_mag(7), -5040.0);
        assert_eq!(s.coeffs()[7], C64::new(0.0, 0.0));
    }

    #[test]
    fn random_series_is_seeded() {
        let a = CatalogFunction::random_radius_one(3).taylor(40);
        let b = CatalogFunction::random_radius_one(3).taylor(40);
        assert_eq!(a, b);
        assert!(a.coeffs().iter().all(|c| (c.norm() - 1.0).abs() < 1e-12));
        let long = CatalogFunction::random_radius_one(3).taylor(RANDOM_CACHE + 5);
        assert_eq!(&long.coeffs()[..40], a.coeffs());
    }

    #[test]
    fn derivatives_match_difference_quotients() {
        let z = C64::new(0.2, 0.1);
        let h = 1e-6;
        for f in [
            CatalogFunction::geometric(),
            CatalogFunction::exp(),
            CatalogFunction::lacunary_factorial(),
            CatalogFunction::random_radius_one(1),
        ] {
            let fd = (f.eval(z + h) - f.eval(z - h)) / (2.0 * h);
            let d = Analytic::deriv(&f, z).unwrap();
            assert!((fd - d).norm() < 1e-7, "{}", f.id());
        }
    }
}
