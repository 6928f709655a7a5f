//! Algebraic curves through finite planar point sets in `C^2`.
//!
//! Minimal-degree curves come from the null space of the monomial evaluation
//! matrix. Intersection counts are numerical: `p` lies on `X` when
//! `|X(p)| < tol * |row(p)|` with `X` unit-normalized and `row(p)` the vector
//! of monomials at `p`.

use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{norm, right_singular};
use crate::numcore::{ComplexPoly, C64};
use crate::{Error, Result};

/// Relative singular-value cut for declaring a null vector.
pub const RANK_TOL: f64 = 1e-8;
/// Relative vanishing tolerance for intersection counts.
pub const COUNT_TOL: f64 = 1e-8;
/// Highest degree tried by the automatic degree range of [`alpha_exponent`].
const AUTO_DEGREE_CAP: usize = 16;
/// Point sets this small are classified from the line-union gadget alone.
pub const FINITE_SIZE: usize = 20;

/// `(n+1)(n+2)/2`.
pub fn monomial_count(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// `(k^2 + 3k)/2`, which equals `monomial_count(k) - 1`.
pub fn forcing_count(k: usize) -> usize {
    (k * k + 3 * k) / 2
}

/// Finite set of pairwise distinct points `(x, y)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSet2 {
    points: Vec<(C64, C64)>,
    tol: f64,
}

#[derive(Serialize, Deserialize)]
struct PointRow {
    re_x: f64,
    im_x: f64,
    re_y: f64,
    im_y: f64,
}

impl PointSet2 {
    /// Rejects points closer than `tol` (max-norm) to an earlier point.
    pub fn new(points: Vec<(C64, C64)>, tol: f64) -> Result<Self> {
        if points.iter().any(|(x, y)| !(x.is_finite() && y.is_finite())) {
            return Err(Error::Domain("non-finite point".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if let Some(q) = points[..i].iter().find(|q| dist(p, q) <= tol) {
                return Err(Error::DuplicateNode { node: format!("({}, {}) ~ ({}, {})", p.0, p.1, q.0, q.1) });
            }
        }
        Ok(PointSet2 { points, tol })
    }

    /// `n` points uniform in the unit bidisk.
    pub fn random(n: usize, rng: &mut impl Rng) -> Result<Self> {
        let pts = (0..n).map(|_| (disk_point(rng), disk_point(rng))).collect();
        Self::new(pts, 1e-12)
    }

    pub fn points(&self) -> &[(C64, C64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn subset(&self, idx: &[usize]) -> PointSet2 {
        PointSet2 { points: idx.iter().map(|&i| self.points[i]).collect(), tol: self.tol }
    }

    /// Per-coordinate RMS modulus.
    pub fn rms(&self) -> f64 {
        let s: f64 = self.points.iter().map(|(x, y)| x.norm_sqr() + y.norm_sqr()).sum();
        (s / (2 * self.points.len().max(1)) as f64).sqrt()
    }

    /// Copy scaled by `1/rms`, with the scale used.
    pub fn normalized(&self) -> (PointSet2, f64) {
        let s = self.rms();
        let s = if s > 0.0 { s } else { 1.0 };
        let points = self.points.iter().map(|(x, y)| (x / s, y / s)).collect();
        (PointSet2 { points, tol: self.tol / s }, s)
    }

    pub fn read_csv(reader: impl Read, tol: f64) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let mut pts = Vec::new();
        for row in rdr.deserialize() {
            let row: PointRow = row?;
            pts.push((C64::new(row.re_x, row.im_x), C64::new(row.re_y, row.im_y)));
        }
        Self::new(pts, tol)
    }

    pub fn write_csv(&self, writer: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for (x, y) in &self.points {
            w.serialize(PointRow { re_x: x.re, im_x: x.im, re_y: y.re, im_y: y.im })?;
        }
        w.flush()?;
        Ok(())
    }
}

fn dist(p: &(C64, C64), q: &(C64, C64)) -> f64 {
    (p.0 - q.0).norm().max((p.1 - q.1).norm())
}

fn disk_point(rng: &mut impl Rng) -> C64 {
    C64::from_polar(rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU))
}

/// Index of `x^i y^j` in the graded order `1, x, y, x^2, xy, y^2, ...`.
fn index(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// All monomials of total degree `<= n` at `(x, y)`, in graded order.
pub fn monomial_row(x: C64, y: C64, n: usize) -> Vec<C64> {
    let mut px = vec![C64::new(1.0, 0.0); n + 1];
    let mut py = vec![C64::new(1.0, 0.0); n + 1];
    for k in 1..=n {
        px[k] = px[k - 1] * x;
        py[k] = py[k - 1] * y;
    }
    let mut row = Vec::with_capacity(monomial_count(n));
    for d in 0..=n {
        for j in 0..=d {
            row.push(px[d - j] * py[j]);
        }
    }
    row
}

/// `sum c_ij x^i y^j` over `i + j <= n`, with unit coefficient norm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BivarPoly {
    coeffs: Vec<C64>,
    nominal: usize,
}

impl BivarPoly {
    /// Coefficients in graded order; normalized to unit norm.
    pub fn new(coeffs: Vec<C64>, nominal_degree: usize) -> Result<Self> {
        if coeffs.len() != monomial_count(nominal_degree) {
            return Err(Error::Domain(format!(
                "degree {nominal_degree} needs {} coefficients, got {}",
                monomial_count(nominal_degree),
                coeffs.len()
            )));
        }
        let nrm = norm(&coeffs);
        if !(nrm > 0.0 && nrm.is_finite()) {
            return Err(Error::Domain("zero or non-finite bivariate polynomial".into()));
        }
        Ok(BivarPoly { coeffs: coeffs.into_iter().map(|c| c / nrm).collect(), nominal: nominal_degree })
    }

    /// From `(i, j, c)` terms meaning `c x^i y^j`.
    pub fn from_terms(terms: &[(usize, usize, C64)]) -> Result<Self> {
        let n = terms.iter().map(|t| t.0 + t.1).max().unwrap_or(0);
        let mut coeffs = vec![C64::new(0.0, 0.0); monomial_count(n)];
        for &(i, j, c) in terms {
            coeffs[index(i, j)] += c;
        }
        Self::new(coeffs, n)
    }

    /// `a (x - x0) + b (y - y0)`.
    pub fn line_through(p: (C64, C64), a: C64, b: C64) -> Result<Self> {
        Self::new(vec![-(a * p.0 + b * p.1), a, b], 1)
    }

    /// Coefficients drawn uniformly from the unit disk.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let coeffs = (0..monomial_count(n)).map(|_| disk_point(rng)).collect();
        Self::new(coeffs, n).expect("random coefficients are nonzero")
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> C64 {
        if i + j > self.nominal {
            C64::new(0.0, 0.0)
        } else {
            self.coeffs[index(i, j)]
        }
    }

    pub fn nominal_degree(&self) -> usize {
        self.nominal
    }

    /// Largest total degree carrying a coefficient above `tol`.
    pub fn degree(&self, tol: f64) -> usize {
        (0..=self.nominal).rev().find(|&d| (0..=d).any(|j| self.coeffs[index(d - j, j)].norm() > tol)).unwrap_or(0)
    }

    pub fn eval(&self, x: C64, y: C64) -> C64 {
        monomial_row(x, y, self.nominal).iter().zip(&self.coeffs).map(|(m, c)| m * c).sum()
    }

    /// `|X(p)| / |row(p)|`.
    pub fn relative_value(&self, p: (C64, C64)) -> f64 {
        let row = monomial_row(p.0, p.1, self.nominal);
        let v: C64 = row.iter().zip(&self.coeffs).map(|(m, c)| m * c).sum();
        v.norm() / norm(&row)
    }

    pub fn mul(&self, other: &BivarPoly) -> BivarPoly {
        let n = self.nominal + other.nominal;
        let mut out = vec![C64::new(0.0, 0.0); monomial_count(n)];
        for d1 in 0..=self.nominal {
            for j1 in 0..=d1 {
                let a = self.coeffs[index(d1 - j1, j1)];
                if a.norm() == 0.0 {
                    continue;
                }
                for d2 in 0..=other.nominal {
                    for j2 in 0..=d2 {
                        out[index(d1 - j1 + d2 - j2, j1 + j2)] += a * other.coeffs[index(d2 - j2, j2)];
                    }
                }
            }
        }
        BivarPoly::new(out, n).expect("product of nonzero polynomials is nonzero")
    }

    /// `y -> X(x0, y)`.
    pub fn restrict_x(&self, x0: C64) -> ComplexPoly {
        let mut c = vec![C64::new(0.0, 0.0); self.nominal + 1];
        for d in 0..=self.nominal {
            for (j, cj) in c.iter_mut().enumerate().take(d + 1) {
                *cj += self.coeffs[index(d - j, j)] * x0.powu((d - j) as u32);
            }
        }
        ComplexPoly::new(c)
    }

    /// `x -> X(x, y0)`.
    pub fn restrict_y(&self, y0: C64) -> ComplexPoly {
        let mut c = vec![C64::new(0.0, 0.0); self.nominal + 1];
        for d in 0..=self.nominal {
            for j in 0..=d {
                c[d - j] += self.coeffs[index(d - j, j)] * y0.powu(j as u32);
            }
        }
        ComplexPoly::new(c)
    }

    /// Coefficients of `X(s x, s y)`, renormalized.
    pub fn rescale(&self, s: f64) -> BivarPoly {
        let mut c = self.coeffs.clone();
        for d in 0..=self.nominal {
            let f = s.powi(d as i32);
            for j in 0..=d {
                c[index(d - j, j)] *= f;
            }
        }
        BivarPoly::new(c, self.nominal).expect("rescaling keeps a nonzero polynomial")
    }

    /// `count` distinct points on the zero set: a random `x` in the unit disk
    /// and a random root in `y` (roles swapped when `X` does not involve `y`).
    pub fn sample_points(&self, count: usize, rng: &mut impl Rng) -> Result<PointSet2> {
        let tol = 1e-12;
        let y_deg = (0..=self.nominal).any(|d| (1..=d).any(|j| self.coeffs[index(d - j, j)].norm() > tol));
        let mut pts: Vec<(C64, C64)> = Vec::with_capacity(count);
        let mut attempts = 0;
        while pts.len() < count {
            attempts += 1;
            if attempts > 100 * count + 100 {
                return Err(Error::Domain("could not sample distinct points on the curve".into()));
            }
            let free = disk_point(rng);
            let restricted = if y_deg { self.restrict_x(free) } else { self.restrict_y(free) };
            let roots = restricted.roots();
            if roots.is_empty() {
                continue;
            }
            let root = roots[rng.random_range(0..roots.len())];
            let p = if y_deg { (free, root) } else { (root, free) };
            if p.0.is_finite() && p.1.is_finite() && pts.iter().all(|q| dist(&p, q) > 1e-9) {
                pts.push(p);
            }
        }
        PointSet2::new(pts, 1e-9)
    }
}

/// Result of [`min_degree_curve`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinCurve {
    pub curve: BivarPoly,
    pub degree: usize,
    /// `sigma_min / sigma_max` of the evaluation matrix at `degree`, on the
    /// RMS-normalized points.
    pub sigma_ratio: f64,
    /// `max_p |X(p)| / |row(p)|` on the input points.
    pub residual: f64,
}

/// Evaluation matrix of `pts` at degree `n`, row-major.
fn evaluation_matrix(pts: &[(C64, C64)], n: usize) -> Vec<C64> {
    pts.iter().flat_map(|&(x, y)| monomial_row(x, y, n)).collect()
}

/// Null vectors of the degree-`n` evaluation matrix below `tol * sigma_max`,
/// with the smallest singular ratio.
fn null_space(pts: &[(C64, C64)], n: usize, tol: f64) -> (Vec<Vec<C64>>, f64) {
    let cols = monomial_count(n);
    let rs = right_singular(pts.len(), cols, &evaluation_matrix(pts, n));
    let ratio = rs.sigma[0] / rs.largest();
    let dim = rs.null_dim(tol);
    (rs.vectors[..dim].to_vec(), ratio)
}

/// Smallest `n <= cap` for which `S` lies on a degree-`n` curve.
///
/// Points are scaled to unit RMS before the SVD; the returned curve is in the
/// original coordinates.
pub fn min_degree_curve(s: &PointSet2, tol: f64, cap: usize) -> Result<MinCurve> {
    if s.is_empty() {
        return Err(Error::Domain("empty point set".into()));
    }
    let (scaled, scale) = s.normalized();
    let mut profile = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let (null, ratio) = null_space(scaled.points(), n, tol);
        profile.push(ratio);
        if let Some(v) = null.into_iter().next() {
            let curve = BivarPoly::new(v, n)?.rescale(1.0 / scale);
            let residual = s.points().iter().map(|&p| curve.relative_value(p)).fold(0.0, f64::max);
            return Ok(MinCurve { curve, degree: n, sigma_ratio: ratio, residual });
        }
    }
    Err(Error::NoCurveUpToCap { cap, singular_profile: profile })
}

/// Points of `S` on the zero set of `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intersection {
    pub count: usize,
    pub contains_all: bool,
}

pub fn intersect_count(s: &PointSet2, x: &BivarPoly, tol: f64) -> Intersection {
    let count = s.points().iter().filter(|&&p| x.relative_value(p) < tol).count();
    Intersection { count, contains_all: count == s.len() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutCheck {
    pub count: usize,
    pub bound: usize,
    pub holds: bool,
}

/// `|S ∩ X| <= deg Γ deg X` for `S` on `Γ` and `X` not containing `S`.
///
/// `Γ` should be irreducible: a shared component lets the count exceed the bound.
pub fn bezout_check(s: &PointSet2, gamma: &BivarPoly, x: &BivarPoly, tol: f64) -> Result<BezoutCheck> {
    if !intersect_count(s, gamma, tol).contains_all {
        return Err(Error::Domain("point set does not lie on the given curve".into()));
    }
    let inter = intersect_count(s, x, tol);
    if inter.contains_all {
        return Err(Error::NotApplicable("X contains the point set".into()));
    }
    let bound = gamma.degree(1e-12) * x.degree(1e-12);
    Ok(BezoutCheck { count: inter.count, bound, holds: inter.count <= bound })
}

fn random_direction(rng: &mut impl Rng) -> (C64, C64) {
    loop {
        let (a, b) = (disk_point(rng), disk_point(rng));
        if a.norm() + b.norm() > 0.1 {
            return (a, b);
        }
    }
}

/// Product of lines `L_j` through `z_j`, one for each `j` in `through`, each
/// with a random direction redrawn until it stays away from `avoid`.
pub fn line_union(s: &PointSet2, through: &[usize], avoid: Option<usize>, rng: &mut impl Rng) -> Result<BivarPoly> {
    let mut acc = BivarPoly::new(vec![C64::new(1.0, 0.0)], 0)?;
    for &j in through {
        let line = loop {
            let (a, b) = random_direction(rng);
            let l = BivarPoly::line_through(s.points()[j], a, b)?;
            match avoid {
                Some(k) if l.relative_value(s.points()[k]) < 1e-3 => continue,
                _ => break l,
            }
        };
        acc = acc.mul(&line);
    }
    Ok(acc)
}

/// The `alpha < 1` gadget: `n - 1` lines through all points but `designated`.
pub fn line_union_gadget(s: &PointSet2, designated: usize, rng: &mut impl Rng) -> Result<BivarPoly> {
    let others: Vec<usize> = (0..s.len()).filter(|&j| j != designated).collect();
    line_union(s, &others, Some(designated), rng)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum AlphaClass {
    Finite,
    OnCurve { degree: usize },
    AlphaAtLeast2,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaRow {
    pub degree: usize,
    /// Best count over curves not containing `S`.
    pub max_count: usize,
    pub random_max: usize,
    pub subset_max: usize,
    pub line_union_max: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaReport {
    pub rows: Vec<AlphaRow>,
    pub alpha_hat: f64,
    pub a_hat: f64,
    pub class: AlphaClass,
    pub degenerate: bool,
    /// Count achieved by the line-union gadget (small sets only).
    pub gadget_count: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaOptions {
    /// Random curves per degree (at least 50).
    pub trials: usize,
    /// Inclusive degree range spanning at least 4 values; chosen from `|S|`
    /// when absent.
    pub degrees: Option<(usize, usize)>,
    pub seed: u64,
    pub tol: f64,
}

impl Default for AlphaOptions {
    fn default() -> Self {
        AlphaOptions { trials: 50, degrees: None, seed: 0, tol: COUNT_TOL }
    }
}

/// The four highest degrees `d` with `forcing_count(d) <= |S|`.
pub fn auto_degrees(size: usize) -> (usize, usize) {
    let top = (1..=AUTO_DEGREE_CAP).take_while(|&d| forcing_count(d) <= size).last().unwrap_or(1);
    (top.saturating_sub(3).max(1), top.max(4))
}

/// Growth exponent of `max |S ∩ X|` over degree-`d` curves `X` not containing `S`.
///
/// Three adversaries per degree: random curves, curves through random
/// subsets of `forcing_count(d)` points, and unions of `d` lines through
/// points of `S`. The log-log slope of the best counts against `d` is
/// `alpha_hat`. Work happens on the RMS-normalized points.
pub fn alpha_exponent(s: &PointSet2, opts: &AlphaOptions) -> Result<AlphaReport> {
    let (s, _) = s.normalized();
    if s.len() <= FINITE_SIZE {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let gadget_count = if s.len() >= 2 {
            let g = line_union_gadget(&s, 0, &mut rng)?;
            Some(intersect_count(&s, &g, opts.tol).count)
        } else {
            Some(0)
        };
        return Ok(AlphaReport {
            rows: Vec::new(),
            alpha_hat: f64::NAN,
            a_hat: f64::NAN,
            class: AlphaClass::Finite,
            degenerate: false,
            gadget_count,
        });
    }
    if opts.trials < 50 {
        return Err(Error::Domain(format!("need at least 50 trials per degree, got {}", opts.trials)));
    }
    let (lo, hi) = opts.degrees.unwrap_or_else(|| auto_degrees(s.len()));
    if lo == 0 || hi < lo + 3 {
        return Err(Error::Domain(format!("degree range {lo}..={hi} must span at least 4 positive values")));
    }
    let degrees: Vec<usize> = (lo..=hi).collect();
    let rows = crate::par_map(&degrees, |&d| alpha_row(&s, d, opts)).into_iter().collect::<Result<Vec<_>>>()?;

    let usable: Vec<&AlphaRow> = rows.iter().filter(|r| r.max_count > 0).collect();
    let degenerate = usable.len() < 2;
    let (alpha_hat, a_hat) = if degenerate {
        (f64::NAN, f64::NAN)
    } else {
        let xs: Vec<f64> = usable.iter().map(|r| (r.degree as f64).ln()).collect();
        let ys: Vec<f64> = usable.iter().map(|r| (r.max_count as f64).ln()).collect();
        let (slope, icpt) = line_fit(&xs, &ys);
        (slope, icpt.exp())
    };
    let class = if degenerate {
        AlphaClass::Inconclusive
    } else if (0.75..=1.25).contains(&alpha_hat) {
        let cap = (2.0 * a_hat).powf(1.0 / (2.0 - alpha_hat)).floor().max(1.0) as usize;
        match min_degree_curve(&s, RANK_TOL, cap) {
            Ok(c) => AlphaClass::OnCurve { degree: c.degree },
            Err(_) => AlphaClass::Inconclusive,
        }
    } else if alpha_hat >= 1.75 {
        AlphaClass::AlphaAtLeast2
    } else {
        AlphaClass::Inconclusive
    };
    Ok(AlphaReport { rows, alpha_hat, a_hat, class, degenerate, gadget_count: None })
}

fn alpha_row(s: &PointSet2, d: usize, opts: &AlphaOptions) -> Result<AlphaRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (d as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let admissible = |x: &BivarPoly| {
        let i = intersect_count(s, x, opts.tol);
        if i.contains_all {
            0
        } else {
            i.count
        }
    };
    let random_max = (0..opts.trials).map(|_| admissible(&BivarPoly::random(d, &mut rng))).max().unwrap_or(0);

    let extra = (opts.trials / 25).max(2);
    let size = forcing_count(d).min(s.len() - 1);
    let mut subset_max = 0;
    for _ in 0..extra {
        let idx = rand::seq::index::sample(&mut rng, s.len(), size).into_vec();
        let (null, _) = null_space(s.subset(&idx).points(), d, RANK_TOL);
        if null.is_empty() {
            continue;
        }
        // random combination of the null vectors
        let mut v = vec![C64::new(0.0, 0.0); monomial_count(d)];
        for b in &null {
            let w = disk_point(&mut rng);
            for (o, c) in v.iter_mut().zip(b) {
                *o += w * c;
            }
        }
        if let Ok(x) = BivarPoly::new(v, d) {
            subset_max = subset_max.max(admissible(&x));
        }
    }

    let mut line_union_max = 0;
    for _ in 0..extra {
        let idx = rand::seq::index::sample(&mut rng, s.len(), d.min(s.len())).into_vec();
        let x = line_union(s, &idx, None, &mut rng)?;
        line_union_max = line_union_max.max(admissible(&x));
    }
    Ok(AlphaRow {
        degree: d,
        max_count: random_max.max(subset_max).max(line_union_max),
        random_max,
        subset_max,
        line_union_max,
    })
}

fn line_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn parabola(n: usize, rng: &mut impl Rng) -> PointSet2 {
        let pts = (0..n)
            .map(|_| {
                let x = disk_point(rng);
                (x, x * x)
            })
            .collect();
        PointSet2::new(pts, 1e-12).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(monomial_count(0), 1);
        assert_eq!(monomial_count(2), 6);
        assert_eq!(monomial_count(9), 55);
        assert_eq!(forcing_count(1), 2);
        assert_eq!(forcing_count(2), 5);
        assert_eq!(forcing_count(9), 54);
        for k in 0..50 {
            assert_eq!(forcing_count(k), monomial_count(k) - 1);
        }
    }

    #[test]
    fn graded_index_matches_row() {
        let (x, y) = (C64::new(2.0, 0.0), C64::new(3.0, 0.0));
        let row = monomial_row(x, y, 3);
        assert_eq!(row[index(2, 1)], c(12.0));
        assert_eq!(row[index(0, 3)], c(27.0));
        assert_eq!(row.len(), 10);
    }

    #[test]
    fn parabola_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = parabola(20, &mut rng);
        let m = min_degree_curve(&s, RANK_TOL, 6).unwrap();
        assert_eq!(m.degree, 2);
        // X is proportional to y - x^2
        let k = m.curve.coeff(0, 1);
        assert!((m.curve.coeff(2, 0) + k).norm() < 1e-8);
        for (i, j) in [(0, 0), (1, 0), (1, 1), (0, 2)] {
            assert!(m.curve.coeff(i, j).norm() < 1e-8);
        }
        assert!(m.residual < 10.0 * RANK_TOL);
    }

    #[test]
    fn generic_points_need_degree_nine() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = PointSet2::random(50, &mut rng).unwrap();
        assert_eq!(min_degree_curve(&s, RANK_TOL, 12).unwrap().degree, 9);
        let two = PointSet2::random(2, &mut rng).unwrap();
        assert_eq!(min_degree_curve(&two, RANK_TOL, 3).unwrap().degree, 1);
        assert!(matches!(min_degree_curve(&s, RANK_TOL, 4), Err(Error::NoCurveUpToCap { cap: 4, .. })));
    }

    #[test]
    fn bezout_on_parabola() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let gamma = BivarPoly::from_terms(&[(0, 1, c(1.0)), (2, 0, c(-1.0))]).unwrap();
        let s = gamma.sample_points(30, &mut rng).unwrap();
        assert!(intersect_count(&s, &gamma, COUNT_TOL).contains_all);
        let line = BivarPoly::from_terms(&[(0, 1, c(1.0)), (1, 0, c(-0.3)), (0, 0, c(0.1))]).unwrap();
        assert!(intersect_count(&s, &line, COUNT_TOL).count <= 2);
        for _ in 0..20 {
            let x = BivarPoly::random(3, &mut rng);
            assert!(bezout_check(&s, &gamma, &x, COUNT_TOL).unwrap().holds);
        }
        assert!(matches!(bezout_check(&s, &gamma, &gamma, COUNT_TOL), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn gadget_hits_all_but_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = PointSet2::random(7, &mut rng).unwrap();
        let g = line_union_gadget(&s, 3, &mut rng).unwrap();
        assert_eq!(g.degree(1e-12), 6);
        let i = intersect_count(&s, &g, COUNT_TOL);
        assert!(i.count >= 6 && !i.contains_all);
    }

    #[test]
    fn duplicates_rejected() {
        let p = (c(0.1), c(0.2));
        assert!(matches!(PointSet2::new(vec![p, p], 1e-12), Err(Error::DuplicateNode { .. })));
    }

    #[test]
    fn csv_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = PointSet2::random(5, &mut rng).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8_lossy(&buf).starts_with("re_x,im_x,re_y,im_y\n"));
        assert_eq!(PointSet2::read_csv(buf.as_slice(), 1e-12).unwrap(), s);
    }

    #[test]
    fn tiny_sets_are_finite() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let s = PointSet2::random(3, &mut rng).unwrap();
        let rep = alpha_exponent(&s, &AlphaOptions::default()).unwrap();
        assert_eq!(rep.class, AlphaClass::Finite);
        assert_eq!(rep.gadget_count, Some(2));
    }

    #[test]
    fn alpha_collinear_and_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (a, b) = (C64::new(0.3, -0.2), C64::new(0.5, 0.1));
        let line: Vec<(C64, C64)> = (0..60)
            .map(|_| {
                let t = disk_point(&mut rng);
                (t, a * t + b)
            })
            .collect();
        let s = PointSet2::new(line, 1e-12).unwrap();
        let rep = alpha_exponent(&s, &AlphaOptions::default()).unwrap();
        assert!((0.75..=1.25).contains(&rep.alpha_hat), "{rep:?}");
        assert_eq!(rep.class, AlphaClass::OnCurve { degree: 1 });

        let g = PointSet2::random(100, &mut rng).unwrap();
        let rep = alpha_exponent(&g, &AlphaOptions::default()).unwrap();
        assert!(rep.alpha_hat >= 1.75, "{rep:?}");
        assert_eq!(rep.class, AlphaClass::AlphaAtLeast2);
    }
}
