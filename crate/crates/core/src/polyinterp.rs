//! Interpolation at nodes in a closed disk, with the explicit remainder bound
//! `M(s, f - L_n f) <= M(R,f) R/(R-s) ((s+r)/(R-r))^{n+1}`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::numcore::{max_modulus, Analytic, CatalogFunction, ComplexPoly, C64};
use crate::{Error, Result};

/// Cap on the reported conditioning factor.
pub const KAPPA_CAP: f64 = 1e16;
/// Slack allowed when comparing measured remainders against the bound.
pub const REMAINDER_SLACK: f64 = 1e-8;
const MODULUS_TOL: f64 = 1e-10;

/// Interpolation nodes, all in the closed disk of radius `r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeSet {
    nodes: Vec<C64>,
    r: f64,
}

impl NodeSet {
    pub fn new(nodes: Vec<C64>, r: f64) -> Result<Self> {
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::Domain(format!("node radius {r} must be finite and nonnegative")));
        }
        if nodes.is_empty() {
            return Err(Error::Domain("empty node set".into()));
        }
        if let Some(z) = nodes.iter().find(|z| !(z.norm() <= r * (1.0 + 1e-12))) {
            return Err(Error::Domain(format!("node {z} lies outside the disk of radius {r}")));
        }
        Ok(NodeSet { nodes, r })
    }

    /// `n` nodes uniform in the disk of radius `r`.
    pub fn random_in_disk(n: usize, r: f64, rng: &mut impl Rng) -> Result<Self> {
        let nodes = (0..n)
            .map(|_| {
                let rad = r * rng.random::<f64>().sqrt();
                C64::from_polar(rad, rng.random_range(0.0..std::f64::consts::TAU))
            })
            .collect();
        Self::new(nodes, r)
    }

    /// `n` equispaced nodes on the circle `|z| = r`.
    pub fn equispaced_circle(n: usize, r: f64) -> Result<Self> {
        let nodes = (0..n).map(|j| C64::from_polar(r, std::f64::consts::TAU * j as f64 / n as f64)).collect();
        Self::new(nodes, r)
    }

    pub fn nodes(&self) -> &[C64] {
        &self.nodes
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `omega(z) = prod (z - z_j)`.
    pub fn omega(&self) -> ComplexPoly {
        ComplexPoly::from_roots(&self.nodes)
    }
}

/// `L_n f` in Newton form, with its monomial expansion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interpolant {
    /// Nodes in Newton order (repeated origin nodes first).
    nodes: Vec<C64>,
    divided: Vec<C64>,
    poly: ComplexPoly,
    kappa: f64,
}

impl Interpolant {
    pub fn poly(&self) -> &ComplexPoly {
        &self.poly
    }

    pub fn divided_differences(&self) -> &[C64] {
        &self.divided
    }

    /// `max_j prod_{i != j} max(1, 1/|z_i - z_j|)`, capped at [`KAPPA_CAP`].
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Nested Newton evaluation; avoids the monomial conversion.
    pub fn eval_newton(&self, z: C64) -> C64 {
        let n = self.divided.len();
        let mut acc = self.divided[n - 1];
        for k in (0..n - 1).rev() {
            acc = acc * (z - self.nodes[k]) + self.divided[k];
        }
        acc
    }
}

impl Analytic for Interpolant {
    fn eval(&self, z: C64) -> C64 {
        self.eval_newton(z)
    }
}

/// Lagrange interpolant of a catalog function. Nodes repeated at the origin
/// use Taylor coefficients (Hermite data); other repeats are rejected.
pub fn lagrange(f: &CatalogFunction, nodes: &NodeSet) -> Result<Interpolant> {
    let zero = nodes.nodes.iter().filter(|z| z.norm() == 0.0).count();
    let taylor = if zero > 1 { Some(f.taylor(zero)) } else { None };
    interpolate(|z| f.eval(z), taylor.as_ref().map(|s| s.coeffs()), nodes)
}

/// Lagrange interpolant from point values only; all nodes must be distinct.
pub fn lagrange_values<A: Analytic + ?Sized>(f: &A, nodes: &NodeSet) -> Result<Interpolant> {
    interpolate(|z| f.eval(z), None, nodes)
}

fn interpolate(f: impl Fn(C64) -> C64, taylor: Option<&[C64]>, nodes: &NodeSet) -> Result<Interpolant> {
    let mut ordered: Vec<C64> = nodes.nodes.iter().copied().filter(|z| z.norm() == 0.0).collect();
    let origin = ordered.len();
    ordered.extend(nodes.nodes.iter().copied().filter(|z| z.norm() != 0.0));
    for i in origin..ordered.len() {
        for j in i + 1..ordered.len() {
            if ordered[i] == ordered[j] {
                return Err(Error::DuplicateNode { node: ordered[i].to_string() });
            }
        }
    }
    if origin > 1 && taylor.is_none() {
        return Err(Error::DuplicateNode { node: "0".into() });
    }

    let n = ordered.len();
    let mut dd: Vec<C64> = ordered.iter().map(|&z| f(z)).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = if i < origin {
                // i - j < i < origin: a run of j+1 origin nodes
                taylor.expect("checked above")[j]
            } else {
                (dd[i] - dd[i - 1]) / (ordered[i] - ordered[i - j])
            };
        }
    }
    let min_gap = min_gap(&ordered, origin);
    if dd.iter().any(|c| !c.is_finite()) {
        return Err(Error::Conditioning { min_gap });
    }

    let mut poly = ComplexPoly::constant(dd[n - 1]);
    for k in (0..n - 1).rev() {
        poly = &(&poly * &ComplexPoly::new(vec![-ordered[k], C64::new(1.0, 0.0)])) + &ComplexPoly::constant(dd[k]);
    }
    if poly.coeffs().iter().any(|c| !c.is_finite()) {
        return Err(Error::Conditioning { min_gap });
    }

    Ok(Interpolant { kappa: kappa(&ordered, origin), nodes: ordered, divided: dd, poly })
}

fn min_gap(z: &[C64], origin: usize) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            if i < origin && j < origin {
                continue;
            }
            gap = gap.min((z[i] - z[j]).norm());
        }
    }
    gap
}

fn kappa(z: &[C64], origin: usize) -> f64 {
    let mut worst = 1.0f64;
    for j in 0..z.len() {
        let mut prod = 1.0f64;
        for i in 0..z.len() {
            if i == j || (i < origin && j < origin) {
                continue;
            }
            prod *= (1.0 / (z[i] - z[j]).norm()).max(1.0);
            if prod >= KAPPA_CAP {
                return KAPPA_CAP;
            }
        }
        worst = worst.max(prod);
    }
    worst.min(KAPPA_CAP)
}

/// Right-hand side of the remainder inequality, with its inputs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RemainderBound {
    pub r: f64,
    pub s: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub n: usize,
    pub mrf: f64,
    pub value: f64,
}

impl RemainderBound {
    pub fn recompute(&self) -> f64 {
        bound_value(self.r, self.s, self.big_r, self.n, self.mrf)
    }
}

fn bound_value(r: f64, s: f64, big_r: f64, n: usize, mrf: f64) -> f64 {
    let ratio = (s + r) / (big_r - r);
    mrf * big_r / (big_r - s) * ratio.powi(n as i32 + 1)
}

pub fn remainder_bound(r: f64, s: f64, big_r: f64, n: usize, mrf: f64) -> Result<RemainderBound> {
    let finite = [r, s, big_r, mrf].iter().all(|v| v.is_finite());
    if !finite || r < 0.0 || r >= big_r || s <= 0.0 || s >= big_r || mrf < 0.0 {
        return Err(Error::Domain(format!(
            "remainder bound needs 0 <= r < R, 0 < s < R, M >= 0 (r={r}, s={s}, R={big_r}, M={mrf})"
        )));
    }
    Ok(RemainderBound { r, s, big_r, n, mrf, value: bound_value(r, s, big_r, n, mrf) })
}

/// One evaluated instance of the remainder inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RemainderCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub bound: RemainderBound,
    pub kappa: f64,
    /// Rounding-error level of the measured side; violations under it are
    /// reported as [`Error::RoundingFloor`].
    pub rounding_floor: f64,
}

/// Measure `M(s, f - L_n f)` against the bound with `M(R, f)` measured.
pub fn verify_remainder(f: &CatalogFunction, nodes: &NodeSet, s: f64, big_r: f64) -> Result<RemainderCheck> {
    if let Some(rho) = f.rho_known() {
        if big_r >= rho {
            return Err(Error::Domain(format!(
                "{} is not analytic on the closed disk of radius {big_r} (rho = {rho})",
                f.id()
            )));
        }
    }
    let interp = lagrange(f, nodes)?;
    let n = nodes.len() - 1;
    let mrf = max_modulus(f, big_r, MODULUS_TOL)?.value;
    let bound = remainder_bound(nodes.r(), s, big_r, n, mrf)?;
    let err = crate::numcore::FnAnalytic::new(|z| f.eval(z) - interp.eval_newton(z));
    let lhs = max_modulus(&err, s, MODULUS_TOL)?.value;
    let holds = lhs <= bound.value * (1.0 + REMAINDER_SLACK);
    let floor = rounding_floor(f, nodes, s);
    if !holds && lhs <= floor {
        return Err(Error::RoundingFloor { measured: lhs, bound: bound.value, floor });
    }
    Ok(RemainderCheck { lhs, rhs: bound.value, holds, bound, kappa: interp.kappa(), rounding_floor: floor })
}

/// `4 (n+1) eps max_{|z|=s} sum_j |l_j(z) f(z_j)|`: the size of `L_n f` errors
/// caused by rounding the data, `l_j` the Lagrange basis. Computed in log form,
/// since `l_j` overflows for clustered nodes. Zero for confluent nodes.
fn rounding_floor(f: &CatalogFunction, nodes: &NodeSet, s: f64) -> f64 {
    const SAMPLES: usize = 256;
    let z = &nodes.nodes;
    if z.iter().filter(|w| w.norm() == 0.0).count() > 1 {
        return 0.0;
    }
    let log_w: Vec<f64> = (0..z.len())
        .map(|j| -(0..z.len()).filter(|&i| i != j).map(|i| (z[j] - z[i]).norm().ln()).sum::<f64>())
        .collect();
    let log_f: Vec<f64> = z.iter().map(|&w| f.eval(w).norm().ln()).collect();
    let mut worst = f64::NEG_INFINITY;
    for k in 0..SAMPLES {
        let x = C64::from_polar(s, std::f64::consts::TAU * k as f64 / SAMPLES as f64);
        let log_d: Vec<f64> = z.iter().map(|&w| (x - w).norm().ln()).collect();
        let total: f64 = log_d.iter().sum();
        let terms: Vec<f64> = (0..z.len()).map(|j| total - log_d[j] + log_w[j] + log_f[j]).collect();
        let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if top.is_finite() {
            worst = worst.max(top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln());
        }
    }
    4.0 * z.len() as f64 * f64::EPSILON * worst.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn square_reproduced() {
        let f = CatalogFunction::polynomial(ComplexPoly::from_real(&[0.0, 0.0, 1.0]));
        let nodes = NodeSet::new(vec![c(0.0), c(1.0), c(-1.0)], 1.0).unwrap();
        let l = lagrange(&f, &nodes).unwrap();
        let want = [0.0, 0.0, 1.0];
        for (k, w) in want.iter().enumerate() {
            assert!((l.poly().coeff(k) - c(*w)).norm() < 1e-12);
        }
    }

    #[test]
    fn single_node_is_constant() {
        let nodes = NodeSet::new(vec![c(0.0)], 0.0).unwrap();
        let l = lagrange(&CatalogFunction::exp(), &nodes).unwrap();
        assert_eq!(l.poly().degree(), Some(0));
        assert!((l.poly().coeff(0) - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn two_point_divided_difference() {
        let f = CatalogFunction::rational(ComplexPoly::one(), ComplexPoly::from_real(&[2.0, -1.0])).unwrap();
        let nodes = NodeSet::new(vec![c(0.0), c(0.25)], 0.25).unwrap();
        let l = lagrange(&f, &nodes).unwrap();
        assert!((l.poly().coeff(0) - c(0.5)).norm() < 1e-15);
        let slope = (1.0 / 1.75 - 0.5) / 0.25;
        assert!((l.poly().coeff(1) - c(slope)).norm() < 1e-14);
        assert!((slope - 0.2857143).abs() < 1e-7);
    }

    #[test]
    fn confluent_origin_gives_taylor_section() {
        let nodes = NodeSet::new(vec![c(0.0); 5], 0.0).unwrap();
        let l = lagrange(&CatalogFunction::exp(), &nodes).unwrap();
        let mut fact = 1.0;
        for k in 0..5 {
            if k > 0 {
                fact *= k as f64;
            }
            assert!((l.poly().coeff(k) - c(1.0 / fact)).norm() < 1e-15);
        }
    }

    #[test]
    fn mixed_confluent_and_simple_nodes() {
        // interpolate z^3 at 0 (triple) and 1: exact
        let f = CatalogFunction::polynomial(ComplexPoly::monomial(3, c(1.0)));
        let nodes = NodeSet::new(vec![c(1.0), c(0.0), c(0.0), c(0.0)], 1.0).unwrap();
        let l = lagrange(&f, &nodes).unwrap();
        assert!((l.poly().coeff(3) - c(1.0)).norm() < 1e-13);
        assert!(l.poly().coeff(0).norm() < 1e-13);
    }

    #[test]
    fn duplicates_away_from_origin_rejected() {
        let nodes = NodeSet::new(vec![c(0.5), c(0.5)], 0.5).unwrap();
        assert!(matches!(lagrange(&CatalogFunction::exp(), &nodes), Err(Error::DuplicateNode { .. })));
    }

    #[test]
    fn bound_examples() {
        let b = remainder_bound(0.3, 0.5, 0.9, 4, 1.0).unwrap();
        assert!((b.value - 2.25 * (0.8f64 / 0.6).powi(5)).abs() < 1e-12);
        assert!((b.value - 9.4815).abs() < 1e-4);
        assert_eq!(remainder_bound(0.5, 0.5, 1.0, 0, 2.0).unwrap().value, 8.0);
        assert!(remainder_bound(0.0, 1e-300, 1.0, 0, 1.0).unwrap().value < 1e-299);
        assert!(remainder_bound(0.9, 0.5, 0.9, 1, 1.0).is_err());
        assert!(remainder_bound(0.1, 0.0, 0.9, 1, 1.0).is_err());
        assert_eq!(b.recompute(), b.value);
    }

    #[test]
    fn remainder_examples_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let poly = CatalogFunction::polynomial(ComplexPoly::from_real(&[1.0, -2.0, 0.5]));
        let nodes = NodeSet::random_in_disk(3, 0.3, &mut rng).unwrap();
        let chk = verify_remainder(&poly, &nodes, 0.5, 0.9).unwrap();
        assert!(chk.holds && chk.lhs < 1e-12);

        let nodes = NodeSet::random_in_disk(5, 0.3, &mut rng).unwrap();
        assert!(verify_remainder(&CatalogFunction::exp(), &nodes, 0.5, 0.9).unwrap().holds);

        let f = CatalogFunction::rational(ComplexPoly::one(), ComplexPoly::from_real(&[2.0, -1.0])).unwrap();
        let nodes = NodeSet::random_in_disk(8, 0.25, &mut rng).unwrap();
        assert!(verify_remainder(&f, &nodes, 0.4, 1.5).unwrap().holds);
    }

    #[test]
    fn radius_beyond_singularity_rejected() {
        let nodes = NodeSet::new(vec![c(0.0)], 0.1).unwrap();
        assert!(verify_remainder(&CatalogFunction::geometric(), &nodes, 0.5, 1.0).is_err());
    }

    #[test]
    fn clustered_nodes_hit_the_rounding_floor() {
        // 13 nodes within 0.05 of the origin, error measured at radius 0.2:
        // the true error is ~1e-11, the data rounding amplification ~1e9 eps
        let nodes = NodeSet::equispaced_circle(13, 0.05).unwrap();
        match verify_remainder(&CatalogFunction::exp(), &nodes, 0.2, 2.0) {
            Ok(c) => assert!(c.holds && c.rounding_floor > 0.0),
            Err(Error::RoundingFloor { bound, floor, .. }) => assert!(bound < floor),
            Err(e) => panic!("{e}"),
        }
        let wide = NodeSet::equispaced_circle(8, 0.5).unwrap();
        let c = verify_remainder(&CatalogFunction::exp(), &wide, 0.8, 2.0).unwrap();
        assert!(c.holds && c.rounding_floor < 1e-3 * c.rhs);
    }
}
