use serde::{Deserialize, Serialize};

use super::{alpha_trace, Alpha, AlphaTrace, ModulusClass, NodePolicy, Normalization, RationalFn};
use crate::numcore::{
    degree_detect, radius_of_convergence, CatalogFunction, Confidence, DegreeVerdict, RadiusEstimate, TaylorSeries,
};
use crate::taylorbounds::disk_constants;
use crate::{Error, Result};

/// Relative coefficient size below which `f` is read as a polynomial.
const POLY_TOL: f64 = 1e-12;
/// Relative tolerance for the coefficients of `P = Qf` and for `Q | P`.
const P_TOL: f64 = 1e-8;
/// A trace "achieves" interpolation when the relative residual of some
/// overdetermined entry (`N > n + 2`) is below this.
const RESIDUAL_TOL: f64 = 1e-8;

/// Degrees `n_k` with demanded zero counts `N(n_k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub degrees: Vec<usize>,
    pub zero_counts: Vec<usize>,
}

impl Schedule {
    pub fn new(degrees: Vec<usize>, zero_counts: Vec<usize>) -> Result<Self> {
        if degrees.is_empty() || degrees.len() != zero_counts.len() {
            return Err(Error::Config("schedule needs matching, nonempty degree and count lists".into()));
        }
        if degrees[0] == 0 {
            return Err(Error::Config("schedule degrees start at 1".into()));
        }
        for i in 1..degrees.len() {
            if degrees[i] <= degrees[i - 1] || zero_counts[i] < zero_counts[i - 1] {
                return Err(Error::Config("schedule must be increasing".into()));
            }
        }
        if let Some(i) = (0..degrees.len()).find(|&i| zero_counts[i] < degrees[i] + 2) {
            return Err(Error::Config(format!("N({}) = {} is below n + 2", degrees[i], zero_counts[i])));
        }
        Ok(Schedule { degrees, zero_counts })
    }

    /// `N(n) = n^2` for `n = lo ..= hi`.
    pub fn squares(lo: usize, hi: usize) -> Result<Self> {
        let degrees: Vec<usize> = (lo..=hi).collect();
        let counts = degrees.iter().map(|n| n * n).collect();
        Self::new(degrees, counts)
    }

    /// `N(n) = ceil(c n ceil(ln n))`, at least `n + 2`.
    pub fn n_log_n(lo: usize, hi: usize, c: f64) -> Result<Self> {
        let degrees: Vec<usize> = (lo..=hi).collect();
        let counts =
            degrees.iter().map(|&n| ((c * n as f64 * (n as f64).ln().ceil()).ceil() as usize).max(n + 2)).collect();
        Self::new(degrees, counts)
    }

    /// The default: `n = 2 ..= 12`, `N(n) = n^2`.
    pub fn default_rational() -> Self {
        Self::squares(2, 12).expect("valid default schedule")
    }

    pub fn max_degree(&self) -> usize {
        *self.degrees.last().expect("nonempty")
    }

    /// `C = max n_{k+1} / n_k`.
    pub fn ratio_bound(&self) -> f64 {
        self.degrees.windows(2).map(|w| w[1] as f64 / w[0] as f64).fold(1.0, f64::max)
    }

    /// Truncation order for series work: `4 max n + 16`.
    pub fn series_order(&self) -> usize {
        4 * self.max_degree() + 16
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// `None` for the zero function.
    Polynomial {
        degree: Option<usize>,
    },
    Entire,
    /// `f = P/Q` with `Q = alpha z - 1` not dividing `P`.
    RationalQ1 {
        r: RationalFn,
    },
    NoOverinterpolation,
    Inconclusive {
        reason: String,
    },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Polynomial { .. } => "Polynomial",
            Verdict::Entire => "Entire",
            Verdict::RationalQ1 { .. } => "RationalQ1",
            Verdict::NoOverinterpolation => "NoOverinterpolation",
            Verdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

/// Per-degree outcome of the decay test used for entire candidates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub log2_coeff: f64,
    pub log2_bound: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub ratio_bound: f64,
    pub radius: Option<RadiusEstimate>,
    pub trace: Option<AlphaTrace>,
    pub decay: Vec<DecayRow>,
}

/// Decide which alternative of the `R_{n,1}` dichotomy the data supports.
///
/// 1. Truncated coefficients that terminate: `Polynomial`.
/// 2. Infinite radius estimate with a dense, well-resolved tail: `Entire`.
/// 3. Infinite radius from a sparse or underflowing tail: test
///    `|f_{n+1}| <= min_{R >= 1} M(R,f) R^{-n-1} a^{N(n)}` with `M` bounded by
///    `sum |f_k| R^k`. Failing on at least half the schedule means the
///    coefficients are incompatible with the demanded zero counts:
///    `NoOverinterpolation`; otherwise `Entire`.
/// 4. Finite radius `rho`: trace `alpha_n` for `g(z) = f(rho z)` on the
///    disk of radius `r / rho`. No small residual means `NoOverinterpolation`.
///    With `|alpha| = 1`, `P = Qg` must terminate and not be divisible by `Q`,
///    giving `RationalQ1` after undoing the scaling. Anything else is
///    `Inconclusive`.
pub fn classify_rational_overinterp(f: &CatalogFunction, r: f64, schedule: &Schedule) -> Result<Classification> {
    let dc = disk_constants(r)?;
    let series = f.taylor(schedule.series_order());
    let mut out = Classification {
        verdict: Verdict::Inconclusive { reason: String::new() },
        ratio_bound: schedule.ratio_bound(),
        radius: None,
        trace: None,
        decay: Vec::new(),
    };

    match degree_detect(&series, POLY_TOL) {
        DegreeVerdict::Degree(d) => {
            out.verdict = Verdict::Polynomial { degree: Some(d) };
            return Ok(out);
        }
        DegreeVerdict::NegativeInfinity => {
            out.verdict = Verdict::Polynomial { degree: None };
            return Ok(out);
        }
        DegreeVerdict::NotPolynomial => {}
    }

    let est = match radius_of_convergence(&series) {
        Ok(est) => est,
        Err(e) => {
            out.verdict = Verdict::Inconclusive { reason: format!("radius estimate failed: {e}") };
            return Ok(out);
        }
    };
    out.radius = Some(est);

    if est.is_entire() {
        if est.confidence == Confidence::High {
            out.verdict = Verdict::Entire;
            return Ok(out);
        }
        out.decay = decay_test(&series, schedule, dc.a.log2());
        let failed = out.decay.iter().filter(|d| !d.holds).count();
        out.verdict = if 2 * failed >= out.decay.len() { Verdict::NoOverinterpolation } else { Verdict::Entire };
        return Ok(out);
    }

    let rho = est.rho;
    if rho <= r {
        out.verdict = Verdict::Inconclusive { reason: format!("estimated radius {rho} does not exceed r = {r}") };
        return Ok(out);
    }
    let g = f.rescaled(rho);
    let trace = alpha_trace(&g, r / rho, &schedule.degrees, &schedule.zero_counts, NodePolicy::Equispaced)?;
    let best = trace
        .entries
        .iter()
        .filter(|e| !e.degenerate && e.big_n > e.n + 2)
        .map(|e| e.relative_residual)
        .fold(f64::INFINITY, f64::min);
    out.verdict = if best > RESIDUAL_TOL {
        Verdict::NoOverinterpolation
    } else {
        match (trace.modulus_class, trace.alpha_limit) {
            (ModulusClass::Unit, Some(Alpha::Finite(alpha))) => {
                rational_from_alpha(&g.taylor(schedule.series_order()), alpha, rho)
            }
            (ModulusClass::Outside, _) => Verdict::Inconclusive {
                reason: "|alpha| > 1 forces a polynomial, but the coefficients do not terminate".into(),
            },
            (ModulusClass::Inside, _) => {
                Verdict::Inconclusive { reason: "|alpha| < 1 contradicts limsup |alpha_n| >= 1 after scaling".into() }
            }
            _ => Verdict::Inconclusive { reason: "no usable alpha limit".into() },
        }
    };
    out.trace = Some(trace);
    Ok(out)
}

/// With `Q = alpha z - 1`, require `P = Qg` to terminate and `Q` not to divide
/// `P`; then `f(z) = P(z/rho) / Q(z/rho)`.
///
/// A coefficient `c_k` of `Qg` counts as cancelled when
/// `|c_k| <= 1e-8 (|alpha| |g_{k-1}| + |g_k|)`, so the residual error in
/// `alpha` does not masquerade as a nonterminating tail.
fn rational_from_alpha(g: &TaylorSeries, alpha: crate::C64, rho: f64) -> Verdict {
    let q = Alpha::Finite(alpha).to_q();
    let c = g.mul_poly(&q);
    let gc = g.coeffs();
    let live = |k: usize| {
        let scale = gc[k].norm() + if k > 0 { alpha.norm() * gc[k - 1].norm() } else { 0.0 };
        c.coeffs()[k].norm() > P_TOL * scale
    };
    let d = (0..c.order()).rev().find(|&k| live(k)).unwrap_or(0);
    if 4 * d > c.order() {
        return Verdict::Inconclusive { reason: "|alpha| = 1 but the coefficients of Qf do not terminate".into() };
    }
    let p = c.section(d);
    let (_, rem) = p.div_rem(&q);
    if rem.norm() <= P_TOL * p.norm() {
        return Verdict::Inconclusive { reason: "Q divides P, so f would be entire".into() };
    }
    let r = RationalFn { p, q, normalization: Normalization::Projective }.rescale_argument(1.0 / rho);
    Verdict::RationalQ1 { r }
}

/// `log2 |f_{n+1}|` against `min_{L >= 0} [LSE_k(l_k + kL) - (n+1)L] + N(n) log2 a`,
/// minimized by golden section (the objective is convex in `L`).
fn decay_test(s: &TaylorSeries, schedule: &Schedule, log2_a: f64) -> Vec<DecayRow> {
    let logs = s.log2_mags();
    let span = logs.iter().filter(|l| l.is_finite()).fold(0.0f64, |m, l| m.max(l.abs()));
    let hi = 2.0 * span + 64.0;
    schedule
        .degrees
        .iter()
        .zip(&schedule.zero_counts)
        .filter(|(n, _)| **n + 1 < logs.len())
        .map(|(&n, &big_n)| {
            let target = logs[n + 1];
            let objective =
                |l: f64| lse(logs.iter().enumerate().map(|(k, &lk)| lk + k as f64 * l)) - (n + 1) as f64 * l;
            let best = golden_min(objective, 0.0, hi);
            let log2_bound = best + big_n as f64 * log2_a;
            DecayRow { n, big_n, log2_coeff: target, log2_bound, holds: target <= log2_bound }
        })
        .collect()
}

fn lse(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let top = xs.clone().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + xs.map(|x| (x - top).exp2()).sum::<f64>().log2()
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..600 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
        if b - a <= 1e-9 * (1.0 + a.abs()) {
            break;
        }
    }
    f(0.0).min(f1.min(f2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::ComplexPoly;
    use crate::C64;

    fn classify(f: &CatalogFunction) -> Classification {
        classify_rational_overinterp(f, 0.5, &Schedule::default_rational()).unwrap()
    }

    #[test]
    fn geometric_is_rational() {
        let c = classify(&CatalogFunction::geometric());
        let Verdict::RationalQ1 { r } = &c.verdict else { panic!("{:?}", c.verdict) };
        // Q = z - 1 up to scale: alpha = 1
        let a = Alpha::from_q(&r.q).unwrap();
        assert!(a.distance(Alpha::Finite(C64::new(1.0, 0.0))) < 5e-3);
        assert_eq!(c.ratio_bound, 1.5);
    }

    #[test]
    fn shifted_rational_keeps_numerator() {
        let f = CatalogFunction::rational(ComplexPoly::from_real(&[1.0, 1.0]), ComplexPoly::from_real(&[2.0, -2.0]))
            .unwrap();
        let c = classify(&f);
        let Verdict::RationalQ1 { r } = &c.verdict else { panic!("{:?}", c.verdict) };
        // (1+z)/(2(1-z)) = -(1+z)/2 / (z - 1)
        assert!((r.p.coeff(0) + 0.5).norm() < 1e-8 && (r.p.coeff(1) + 0.5).norm() < 1e-8);
    }

    #[test]
    fn exp_is_entire_and_cube_is_polynomial() {
        assert_eq!(classify(&CatalogFunction::exp()).verdict, Verdict::Entire);
        let cube = CatalogFunction::polynomial(ComplexPoly::from_real(&[1.0, 0.0, 0.0, 1.0]));
        assert_eq!(classify(&cube).verdict, Verdict::Polynomial { degree: Some(3) });
    }

    #[test]
    fn lacunary_is_not_overinterpolated() {
        let c = classify(&CatalogFunction::lacunary_factorial());
        assert_eq!(c.verdict, Verdict::NoOverinterpolation);
        assert!(c.decay.iter().all(|d| !d.holds));
    }

    #[test]
    fn random_series_is_not_overinterpolated() {
        assert_eq!(classify(&CatalogFunction::random_radius_one(1)).verdict, Verdict::NoOverinterpolation);
    }

    #[test]
    fn scaling_covariance() {
        let f = CatalogFunction::rational(ComplexPoly::one(), ComplexPoly::from_real(&[2.0, -1.0])).unwrap();
        let a = classify_rational_overinterp(&f, 0.5, &Schedule::default_rational()).unwrap();
        let b = classify_rational_overinterp(&f.rescaled(2.0), 0.25, &Schedule::default_rational()).unwrap();
        assert_eq!(a.verdict.name(), "RationalQ1");
        assert_eq!(a.verdict.name(), b.verdict.name());
    }

    #[test]
    fn schedules() {
        let s = Schedule::n_log_n(2, 20, 1.0).unwrap();
        assert!(s.zero_counts.iter().zip(&s.degrees).all(|(big_n, n)| *big_n >= n + 2));
        assert!(Schedule::new(vec![2, 3], vec![3, 9]).is_err());
        assert_eq!(Schedule::default_rational().series_order(), 64);
    }
}
