use serde::{Deserialize, Serialize};

use super::{Normalization, RationalFn};
use crate::linalg::{project, right_singular};
use crate::numcore::{ComplexPoly, TaylorSeries, C64};
use crate::{Error, Result};

/// Relative size below which a coefficient of `Qf - P` counts as zero.
const VANISH_TOL: f64 = 1e-10;
/// Relative singular value treated as zero in the denominator system.
const NULL_TOL: f64 = 1e-12;
/// Cross-difference bound for a stable row.
pub const CROSS_TOL: f64 = 1e-9;

/// Order of vanishing at the origin; `saturated` means "at least `order`",
/// the truncation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishOrder {
    pub order: usize,
    pub saturated: bool,
}

impl VanishOrder {
    pub fn at_least(&self, k: usize) -> bool {
        self.order >= k
    }
}

/// First index with `|s_k| > tol max_j |s_j|`; saturates at the truncation order.
pub fn vanishing_order(s: &TaylorSeries, tol: f64) -> VanishOrder {
    let scale = s.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let scales = vec![scale; s.order()];
    vanishing_order_scaled(s.coeffs(), &scales, tol)
}

/// First index with `|c_k| > tol scale_k`, for caller-supplied per-index scales.
pub fn vanishing_order_scaled(c: &[C64], scales: &[f64], tol: f64) -> VanishOrder {
    match c.iter().zip(scales).position(|(v, &sc)| v.norm() > tol * sc) {
        Some(order) => VanishOrder { order, saturated: false },
        None => VanishOrder { order: c.len(), saturated: true },
    }
}

/// One Pade approximant with the measured order of contact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PadeEntry {
    pub n: usize,
    pub m: usize,
    /// Normalized to `Q(0) = 1`.
    pub r: RationalFn,
    /// Order of vanishing of `Qf - P` (equal to that of `f - P/Q`).
    pub vanish_order: VanishOrder,
}

/// Denominator coefficients: unit null vector of the `m x (m+1)` Toeplitz
/// system `sum_j q_j f_{k-j} = 0`, `k = n+1 ..= n+m`. With a null space of
/// dimension above one, the vector closest to `Q = 1` is used.
fn denominator(f: &[C64], n: usize, m: usize) -> Vec<C64> {
    let zero = C64::new(0.0, 0.0);
    let fk = |k: isize| if k >= 0 { f[k as usize] } else { zero };
    let mut entries = Vec::with_capacity(m * (m + 1));
    for k in n + 1..=n + m {
        for j in 0..=m {
            entries.push(fk(k as isize - j as isize));
        }
    }
    let svd = right_singular(m, m + 1, &entries);
    let dim = svd.null_dim(NULL_TOL).max(1);
    if dim == 1 {
        return svd.vectors[0].clone();
    }
    let mut e0 = vec![zero; m + 1];
    e0[0] = C64::new(1.0, 0.0);
    let q = project(&svd.vectors[..dim], &e0);
    if q[0].norm() > 1e-12 {
        q
    } else {
        svd.vectors[0].clone()
    }
}

/// `Qf - P` up to the truncation order, with per-index magnitude scales.
fn contact(f: &[C64], p: &ComplexPoly, q: &[C64]) -> (Vec<C64>, Vec<f64>) {
    let mut c = Vec::with_capacity(f.len());
    let mut sc = Vec::with_capacity(f.len());
    for k in 0..f.len() {
        let mut acc = -p.coeff(k);
        let mut mag = p.coeff(k).norm();
        for (j, &qj) in q.iter().enumerate().take(k + 1) {
            let t = qj * f[k - j];
            acc += t;
            mag += t.norm();
        }
        c.push(acc);
        sc.push(mag);
    }
    (c, sc)
}

/// Pade approximant of type `(n, m)`: `Qf - P` vanishes to order at least
/// `n + m + 1`. Errors with [`Error::Degenerate`] when `Q(0) = 0`.
pub fn pade(f: &TaylorSeries, n: usize, m: usize) -> Result<PadeEntry> {
    if f.order() < n + m + 2 {
        return Err(Error::TooFewCoefficients { needed: n + m + 2, found: f.order() });
    }
    let fc = f.coeffs();
    let q = if m == 0 { vec![C64::new(1.0, 0.0)] } else { denominator(fc, n, m) };
    let qn = q.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if q[0].norm() <= 1e-12 * qn {
        return Err(Error::Degenerate);
    }
    let q: Vec<C64> = q.iter().map(|&c| c / q[0]).collect();
    let p = ComplexPoly::new(
        (0..=n).map(|k| q.iter().enumerate().take(k + 1).map(|(j, &qj)| qj * fc[k - j]).sum()).collect(),
    );
    let (c, sc) = contact(fc, &p, &q);
    let vanish_order = vanishing_order_scaled(&c, &sc, VANISH_TOL);
    Ok(PadeEntry {
        n,
        m,
        r: RationalFn { p, q: ComplexPoly::new(q), normalization: Normalization::QAtZero },
        vanish_order,
    })
}

/// Diagnostics for one entry of a Pade row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowEntry {
    pub n: usize,
    pub vanish_order: Option<VanishOrder>,
    /// `||P_n Q_{n+1} - P_{n+1} Q_n||` for unit-normalized pairs; `None` on the last entry.
    pub cross_difference: Option<f64>,
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowStability {
    pub stable: bool,
    pub first_n: Option<usize>,
    pub rational: Option<RationalFn>,
    pub entries: Vec<RowEntry>,
}

/// Row `m` of the Pade table for `n = k ..= n_max`.
///
/// The row is stable from `n0` when for every `n0 <= n < n_max`, `f - R_n`
/// vanishes to order at least `n + m + 2` and the cross-difference of
/// consecutive unit-normalized entries is below 1e-9. Degenerate entries break
/// stability and are reported.
pub fn pade_row_stabilizes(f: &TaylorSeries, m: usize, k: usize, n_max: usize) -> Result<RowStability> {
    if n_max <= k {
        return Err(Error::Domain(format!("row needs n_max > k (k={k}, n_max={n_max})")));
    }
    if f.order() < n_max + m + 2 {
        return Err(Error::TooFewCoefficients { needed: n_max + m + 2, found: f.order() });
    }
    let row: Vec<Option<PadeEntry>> = (k..=n_max).map(|n| pade(f, n, m).ok()).collect();
    let mut entries = Vec::with_capacity(row.len());
    let mut good = Vec::with_capacity(row.len());
    for (i, e) in row.iter().enumerate() {
        let n = k + i;
        let cross = match (e, row.get(i + 1)) {
            (Some(a), Some(Some(b))) => Some(cross_difference(&a.r, &b.r)),
            (_, Some(_)) => Some(f64::INFINITY),
            (_, None) => None,
        };
        let vo = e.as_ref().map(|e| e.vanish_order);
        let ok = vo.is_some_and(|v| v.at_least(n + m + 2)) && cross.is_none_or(|c| c < CROSS_TOL);
        if n < n_max {
            good.push(ok);
        }
        entries.push(RowEntry { n, vanish_order: vo, cross_difference: cross, degenerate: e.is_none() });
    }
    // smallest n0 with every n in [n0, n_max) good
    let mut first = None;
    for i in (0..good.len()).rev() {
        if good[i] {
            first = Some(k + i);
        } else {
            break;
        }
    }
    let rational = first.and_then(|n0| row[n0 - k].as_ref().map(|e| e.r.clone()));
    Ok(RowStability { stable: first.is_some(), first_n: first, rational, entries })
}

fn cross_difference(a: &RationalFn, b: &RationalFn) -> f64 {
    let (a, b) = (a.unit_normalized(), b.unit_normalized());
    (&(&a.p * &b.q) - &(&b.p * &a.q)).norm()
}
