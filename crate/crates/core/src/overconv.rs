//! Circle selection under overinterpolation, the circle error bound
//! `||f - R_n||_{S_t} <= M (c/d_n)^{m(n)} b^{N(n)}`, and overconvergence rates.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use crate::numcore::{max_modulus, min_modulus, Analytic, CatalogFunction, ComplexPoly, InequalityCheck, C64};
use crate::{Error, Result};

const MODULUS_TOL: f64 = 1e-9;
/// Default and maximal grid sizes on `[r, (1+r)/2]`.
pub const GRID_START: usize = 1024;
pub const GRID_CAP: usize = 1 << 16;
/// `roots_n` "tends to zero" when the final-quarter mean is below this.
pub const ROOTS_ZERO: f64 = 0.05;
/// Least-squares slope of `ln err_n` against `n ln n` signalling overconvergence.
pub const SLOPE_OVERCONV: f64 = -0.5;
/// Relative spread of `roots_n` tolerated for a geometric verdict.
const GEOMETRIC_SPREAD: f64 = 0.10;
/// Errors below `FLOOR_EPS * M(t, f)` are at the floating-point floor.
const FLOOR_EPS: f64 = 64.0 * f64::EPSILON;

fn check_unit(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} = {x} must lie in (0, 1)")))
    }
}

/// `a_1(t) = (12t^2 + 6t) / (13t^2 + 4t + 1)`, increasing on `[0, 1]`.
pub fn a1_of_t(t: f64) -> Result<f64> {
    check_unit(t, "t")?;
    Ok((12.0 * t * t + 6.0 * t) / (13.0 * t * t + 4.0 * t + 1.0))
}

/// `b = a_1((1 + r)/2)`.
pub fn b_const(r: f64) -> Result<f64> {
    check_unit(r, "r")?;
    a1_of_t((1.0 + r) / 2.0)
}

/// `-1 / ln b`: the rate `liminf N(n)/(n ln n)` above which meromorphic
/// continuation follows.
pub fn gc_threshold(r: f64) -> Result<f64> {
    Ok(-1.0 / b_const(r)?.ln())
}

/// `c_1(r) = 216 (1+r)^2 / (r^3 (1-r)^3)`: the prefactor
/// `9/(1-t)^2 (3(1+r)^2 / (r^2 t (1-t)))^m` maximized over `t` in
/// `[r, (1+r)/2]`, with `9/(1-t)^2 >= 1` absorbed into the `m`-th power
/// (so valid for `m >= 1`).
pub fn c1_of_r(r: f64) -> Result<f64> {
    check_unit(r, "r")?;
    Ok(216.0 * (1.0 + r).powi(2) / (r.powi(3) * (1.0 - r).powi(3)))
}

/// `c = 36 e r c_1(r)`.
pub fn c_of_r(r: f64) -> Result<f64> {
    Ok(36.0 * E * r * c1_of_r(r)?)
}

/// `M (c/d)^m b^N`, evaluated in the log domain.
pub fn tcl_error_bound(mf: f64, c: f64, d_n: f64, m_n: usize, b: f64, big_n: usize) -> f64 {
    let mut log = mf.ln() + big_n as f64 * b.ln();
    // skipped for m = 0 so that a degenerate c/d cannot produce 0 * inf
    if m_n > 0 {
        log += m_n as f64 * (c / d_n).ln();
    }
    log.exp()
}

/// `M(1, Q) <= (2/r)^m` for `Q` of degree `m` normalized by `M(r/2, Q) = 1`.
/// The normalization is applied internally.
pub fn bernstein_walsh_check(q: &ComplexPoly, m: usize, r: f64) -> Result<InequalityCheck> {
    check_unit(r, "r")?;
    if q.degree().is_some_and(|d| d > m) {
        return Err(Error::Domain(format!("Q has degree above m = {m}")));
    }
    let norm = max_modulus(q, r / 2.0, MODULUS_TOL)?.value;
    if norm == 0.0 {
        return Err(Error::Domain("Q vanishes identically".into()));
    }
    let lhs = max_modulus(q, 1.0, MODULUS_TOL)?.value / norm;
    Ok(InequalityCheck::new(lhs, (2.0 / r).powi(m as i32), 1e-9))
}

/// `Q / M(r/2, Q)`.
pub fn normalize_q(q: &ComplexPoly, r: f64) -> Result<ComplexPoly> {
    let norm = max_modulus(q, r / 2.0, MODULUS_TOL)?.value;
    if norm == 0.0 {
        return Err(Error::Domain("Q vanishes identically".into()));
    }
    Ok(q.scale(C64::new(1.0 / norm, 0.0)))
}

/// `n` equispaced radii on `[r, (1+r)/2]`.
pub fn t_grid(r: f64, n: usize) -> Vec<f64> {
    let hi = (1.0 + r) / 2.0;
    if n == 1 {
        return vec![r];
    }
    (0..n).map(|j| r + (hi - r) * j as f64 / (n - 1) as f64).collect()
}

/// Grid estimate of the set `F_n` of radii where
/// `|Q(z)| >= (2hr|z|/(1+r)^2)^m` on the whole circle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FnMask {
    pub mask: Vec<bool>,
    /// `(fraction of grid points in F_n) (1-r)/2`.
    pub measure: f64,
    /// `(1-r)/2 - 36 e h r`.
    pub lower_bound: f64,
    /// Discretization allowance: `(2 runs + 1) (1-r) / (2 (G-1))` for
    /// `runs` maximal stretches of excluded points.
    pub grid_slack: f64,
}

impl FnMask {
    pub fn check(&self) -> InequalityCheck {
        InequalityCheck::new(self.lower_bound - self.grid_slack, self.measure, 0.0)
    }
}

/// Mask of `F_n` on `grid`; `Q` is normalized internally to `M(r/2, Q) = 1`.
pub fn fn_mask(q: &ComplexPoly, m: usize, h: f64, r: f64, grid: &[f64]) -> Result<FnMask> {
    check_unit(r, "r")?;
    if !(h > 0.0 && h <= 1.0 / (8.0 * E)) {
        return Err(Error::Domain(format!("h = {h} must lie in (0, 1/(8e)]")));
    }
    let q = normalize_q(q, r)?;
    let scale = 2.0 * h * r / (1.0 + r).powi(2);
    let mask = grid
        .iter()
        .map(|&t| {
            let threshold = (scale * t).powi(m as i32);
            Ok(min_modulus(&q, t, MODULUS_TOL)?.value >= threshold)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(summarize(mask, h, r))
}

fn summarize(mask: Vec<bool>, h: f64, r: f64) -> FnMask {
    let g = mask.len();
    let band = (1.0 - r) / 2.0;
    let inside = mask.iter().filter(|&&b| b).count();
    let runs = mask.iter().enumerate().filter(|&(j, &b)| !b && (j == 0 || mask[j - 1])).count();
    let cell = if g > 1 { band / (g - 1) as f64 } else { band };
    FnMask {
        measure: band * inside as f64 / g as f64,
        lower_bound: band - 36.0 * E * h * r,
        grid_slack: (2 * runs + 1) as f64 * cell,
        mask,
    }
}

/// Record of a circle search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleSearch {
    pub r: f64,
    pub t_grid: Vec<f64>,
    pub masks: Vec<FnMask>,
    /// `h_n = min(d_n / (36 e r), 1/(8e))`.
    pub h: Vec<f64>,
    /// Smallest index from which all masks share a grid point.
    pub n0: usize,
    pub chosen_t: f64,
}

/// Pick `t` in `F_n` for every `n >= n0`, with `n0` as small as the grid allows.
///
/// `d` must look summable: the least-squares slope of `ln d_n` against `ln n`
/// over the second half must be below `-1.05`. The grid starts at 1024 points
/// and doubles until two successive grids agree on `n0`; an empty intersection
/// at 65536 points is [`Error::GridTooCoarse`].
pub fn select_circle(qs: &[(ComplexPoly, usize)], d: &[f64], r: f64) -> Result<CircleSearch> {
    check_unit(r, "r")?;
    if qs.is_empty() || qs.len() != d.len() {
        return Err(Error::Domain("need one d_n per denominator".into()));
    }
    if d.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::Domain("d_n must be positive".into()));
    }
    let exponent = tail_exponent(d);
    if exponent > -1.05 {
        return Err(Error::NotSummable { exponent });
    }
    let hmax = 1.0 / (8.0 * E);
    let h: Vec<f64> = d.iter().map(|&dn| (dn / (36.0 * E * r)).min(hmax)).collect();
    let normalized = qs.iter().map(|(q, m)| Ok((normalize_q(q, r)?, *m))).collect::<Result<Vec<_>>>()?;

    let mut prev: Option<usize> = None;
    let mut g = GRID_START;
    loop {
        let grid = t_grid(r, g);
        let masks = masks_on(&normalized, &h, r, &grid)?;
        let found = intersect(&masks);
        match (found, prev) {
            (Some((n0, j)), Some(p)) if p == n0 => {
                return Ok(CircleSearch { r, chosen_t: grid[j], t_grid: grid, masks, h, n0 });
            }
            (Some((n0, j)), _) if g >= GRID_CAP => {
                return Ok(CircleSearch { r, chosen_t: grid[j], t_grid: grid, masks, h, n0 });
            }
            (None, _) if g >= GRID_CAP => return Err(Error::GridTooCoarse { grid: g }),
            (found, _) => prev = found.map(|f| f.0),
        }
        g *= 2;
    }
}

fn masks_on(qs: &[(ComplexPoly, usize)], h: &[f64], r: f64, grid: &[f64]) -> Result<Vec<FnMask>> {
    let jobs: Vec<usize> = (0..qs.len()).collect();
    crate::par_map(&jobs, |&i| {
        let (q, m) = &qs[i];
        let scale = 2.0 * h[i] * r / (1.0 + r).powi(2);
        let mask = grid
            .iter()
            .map(|&t| Ok(min_modulus(q, t, MODULUS_TOL)?.value >= (scale * t).powi(*m as i32)))
            .collect::<Result<Vec<bool>>>()?;
        Ok(summarize(mask, h[i], r))
    })
    .into_iter()
    .collect()
}

/// Smallest `n0` (and first grid index) with a point common to masks `n0..`.
fn intersect(masks: &[FnMask]) -> Option<(usize, usize)> {
    let g = masks.first()?.mask.len();
    let mut common = vec![true; g];
    let mut best = None;
    for n0 in (0..masks.len()).rev() {
        for (c, &b) in common.iter_mut().zip(&masks[n0].mask) {
            *c &= b;
        }
        match common.iter().position(|&c| c) {
            Some(j) => best = Some((n0, j)),
            None => break,
        }
    }
    best
}

/// Slope of `ln d_n` against `ln n` (1-based) over the second half.
fn tail_exponent(d: &[f64]) -> f64 {
    let start = d.len() / 2;
    let xs: Vec<f64> = (start..d.len()).map(|i| ((i + 1) as f64).ln()).collect();
    let ys: Vec<f64> = d[start..].iter().map(|v| v.ln()).collect();
    if xs.len() < 2 {
        return f64::NEG_INFINITY;
    }
    ls_slope(&xs, &ys)
}

fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RateVerdict {
    Overconvergent,
    Geometric,
    Subgeometric,
}

/// Errors `||f - R_n||_{S_t}` and their `n`-th roots.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateReport {
    pub t: f64,
    pub ns: Vec<usize>,
    /// `log2` of the errors, so that underflowing errors remain visible.
    pub log2_errors: Vec<f64>,
    /// `err_n^{1/n}`.
    pub roots: Vec<f64>,
    /// Entries clamped to the floating-point floor and excluded from fits.
    pub at_floor: Vec<bool>,
    pub verdict: RateVerdict,
    /// Every error is at the floor (e.g. `R_n = f`).
    pub degenerate: bool,
    /// Least-squares slope of `ln err_n` against `n ln n`.
    pub slope: f64,
    /// `min N(n)/(n ln n)` over the second half, when zero counts are given.
    pub gc_rate: Option<f64>,
}

/// Errors of approximants `R_n` on `S_t`, measured by [`max_modulus`].
pub fn overconv_rate<F, R>(f: &F, rs: &[(usize, R)], t: f64) -> Result<RateReport>
where
    F: Analytic + ?Sized + Sync,
    R: Analytic + Sync,
{
    let mf = max_modulus(f, t, MODULUS_TOL)?.value;
    let floor = FLOOR_EPS * mf.max(f64::MIN_POSITIVE);
    let errs = crate::par_map(rs, |(_, rn)| {
        let diff = crate::numcore::FnAnalytic::new(|z| f.eval(z) - rn.eval(z));
        max_modulus(&diff, t, MODULUS_TOL).map(|s| s.value)
    })
    .into_iter()
    .collect::<Result<Vec<f64>>>()?;
    let at_floor: Vec<bool> = errs.iter().map(|&e| e <= floor).collect();
    let log2_errors = errs.iter().map(|&e| e.max(floor).log2()).collect();
    Ok(rate_report(t, rs.iter().map(|(n, _)| *n).collect(), log2_errors, at_floor))
}

/// Errors of the Taylor sections `sum_{k<=n} f_k z^k` on `S_t`, from the
/// log-magnitude channel: `log2 sum_{k>n} |f_k| t^k`. This is the exact
/// maximum when the coefficients are nonnegative and an upper bound otherwise.
pub fn taylor_section_rate(f: &CatalogFunction, ns: &[usize], t: f64) -> Result<RateReport> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("circle radius {t} must be positive")));
    }
    let top = ns.iter().copied().max().unwrap_or(0);
    let order = 2 * top + 64;
    let series = f.taylor(order);
    let lt = t.log2();
    let terms: Vec<f64> = (0..order).map(|k| series.log2_mag(k) + k as f64 * lt).collect();
    let mut log2_errors = Vec::with_capacity(ns.len());
    for &n in ns {
        let tail = &terms[n + 1..];
        let peak = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if peak > f64::NEG_INFINITY && tail.last().copied().unwrap_or(f64::NEG_INFINITY) > peak - 60.0 {
            return Err(Error::TooFewCoefficients { needed: 2 * order, found: order });
        }
        let sum = if peak == f64::NEG_INFINITY {
            peak
        } else {
            peak + tail.iter().map(|x| (x - peak).exp2()).sum::<f64>().log2()
        };
        log2_errors.push(sum);
    }
    let at_floor = log2_errors.iter().map(|l| *l == f64::NEG_INFINITY).collect();
    Ok(rate_report(t, ns.to_vec(), log2_errors, at_floor))
}

impl RateReport {
    /// Attach `min N(n) / (n ln n)` over the second half of the horizon.
    pub fn with_zero_counts(mut self, counts: &[usize]) -> Self {
        let start = self.ns.len() / 2;
        let rate = self.ns[start..]
            .iter()
            .zip(&counts[start..])
            .filter(|(n, _)| **n >= 2)
            .map(|(&n, &c)| c as f64 / (n as f64 * (n as f64).ln()))
            .fold(f64::INFINITY, f64::min);
        self.gc_rate = rate.is_finite().then_some(rate);
        self
    }
}

fn rate_report(t: f64, ns: Vec<usize>, log2_errors: Vec<f64>, at_floor: Vec<bool>) -> RateReport {
    let roots: Vec<f64> =
        ns.iter().zip(&log2_errors).map(|(&n, &l)| if n == 0 { l.exp2() } else { (l / n as f64).exp2() }).collect();
    let live: Vec<usize> = (0..ns.len()).filter(|&i| !at_floor[i] && ns[i] >= 1).collect();
    let degenerate = live.is_empty();
    if degenerate {
        return RateReport {
            t,
            ns,
            log2_errors,
            roots,
            at_floor,
            verdict: RateVerdict::Overconvergent,
            degenerate,
            slope: f64::NEG_INFINITY,
            gc_rate: None,
        };
    }
    let xs: Vec<f64> = live.iter().map(|&i| ns[i] as f64 * (ns[i] as f64).max(2.0).ln()).collect();
    let ys: Vec<f64> = live.iter().map(|&i| log2_errors[i] * std::f64::consts::LN_2).collect();
    let slope = if live.len() >= 2 { ls_slope(&xs, &ys) } else { 0.0 };

    let half = &live[live.len() / 2..];
    let hx: Vec<f64> = half.iter().map(|&i| ns[i] as f64).collect();
    let hy: Vec<f64> = half.iter().map(|&i| roots[i]).collect();
    // log roots, since the roots themselves may underflow to zero
    let hl: Vec<f64> = half.iter().map(|&i| log2_errors[i] / ns[i] as f64).collect();
    let decreasing = half.len() >= 2 && ls_slope(&hx, &hl) < 0.0;
    let quarter = &live[live.len() - live.len().div_ceil(4)..];
    let tail_mean = quarter.iter().map(|&i| roots[i]).sum::<f64>() / quarter.len() as f64;

    let verdict = if decreasing && (slope < SLOPE_OVERCONV || tail_mean < ROOTS_ZERO) {
        RateVerdict::Overconvergent
    } else {
        let (lo, hi) = hy.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &v| (a.min(v), b.max(v)));
        let mean = hy.iter().sum::<f64>() / hy.len() as f64;
        if mean > 0.0 && mean < 1.0 && (hi - lo) <= GEOMETRIC_SPREAD * mean {
            RateVerdict::Geometric
        } else {
            RateVerdict::Subgeometric
        }
    };
    RateReport { t, ns, log2_errors, roots, at_floor, verdict, degenerate, slope, gc_rate: None }
}
