//! Argument-principle zero counting in closed disks.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::{Analytic, C64};
use crate::{Error, Result};

const FIRST_LEVEL: usize = 256;
const NODE_CAP: usize = 1 << 20;
/// Radii tried, as fractions of `tol` added to the requested radius.
const OUTWARD_STEPS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Result of [`count_zeros_in_disk`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroCount {
    /// Zeros in the closed disk, with multiplicity.
    pub count: usize,
    /// Radius actually integrated over (>= requested radius).
    pub radius: f64,
    /// Real part of the raw winding integral at the accepted level.
    pub raw: f64,
    /// Quadrature nodes at the accepted level.
    pub nodes: usize,
}

enum Attempt {
    Done(ZeroCount),
    NearBoundary,
    Unresolved(f64),
}

/// Count zeros of `g` in `|z| <= t` as the winding number of `g` along a circle.
///
/// The logarithmic derivative is integrated with the trapezoid rule on
/// `256, 512, ...` equispaced nodes (analytic derivative when `g` provides one,
/// a fourth-order central difference otherwise). A level is accepted when the
/// raw integral lies within 0.25 of the same integer at two successive levels
/// and the node count resolves the nearest zero (estimated by the smallest
/// Newton step `|g/g'|` on the circle). When a zero appears to sit within
/// `tol` of the circle the radius is pushed outward in steps of `tol/4`.
pub fn count_zeros_in_disk<A: Analytic + ?Sized>(g: &A, t: f64, tol: f64) -> Result<ZeroCount> {
    if !(t > 0.0) || !(tol > 0.0) {
        return Err(Error::Domain(format!("need t > 0 and tol > 0, got t={t}, tol={tol}")));
    }
    for step in OUTWARD_STEPS {
        let radius = t + step * tol;
        match winding(g, radius, tol) {
            Attempt::Done(c) => return Ok(c),
            Attempt::NearBoundary => continue,
            Attempt::Unresolved(raw) => return Err(Error::Unresolved { raw }),
        }
    }
    Err(Error::BoundaryZero { radius: t })
}

fn winding<A: Analytic + ?Sized>(g: &A, radius: f64, tol: f64) -> Attempt {
    let fd_step = 1e-4 * radius;
    let deriv = |z: C64| -> C64 {
        g.deriv(z).unwrap_or_else(|| {
            let h = C64::new(fd_step, 0.0);
            (g.eval(z - h * 2.0) - g.eval(z + h * 2.0) + (g.eval(z + h) - g.eval(z - h)) * 8.0) / (h * 12.0)
        })
    };

    let mut prev: Option<C64> = None;
    let mut n = FIRST_LEVEL;
    loop {
        let mut sum = C64::new(0.0, 0.0);
        let mut newton_min = f64::INFINITY;
        for j in 0..n {
            let z = C64::from_polar(radius, TAU * j as f64 / n as f64);
            let gz = g.eval(z);
            if gz.norm() == 0.0 || !gz.is_finite() {
                return Attempt::NearBoundary;
            }
            let dg = deriv(z);
            let q = dg / gz;
            newton_min = newton_min.min(1.0 / q.norm());
            sum += z * q;
        }
        let raw = sum / n as f64;
        if newton_min < tol / 8.0 {
            return Attempt::NearBoundary;
        }
        if let Some(p) = prev {
            let k = raw.re.round();
            let close = |w: C64| (w.re - k).abs() < 0.25 && w.im.abs() < 0.25;
            // trapezoid error decays like exp(-n d / radius) for a zero at distance d
            let resolved = n as f64 * newton_min / radius >= 7.0;
            if close(raw) && close(p) && p.re.round() == k && resolved {
                if k < 0.0 {
                    return Attempt::Unresolved(raw.re);
                }
                return Attempt::Done(ZeroCount { count: k as usize, radius, raw: raw.re, nodes: n });
            }
        }
        if n >= NODE_CAP {
            return Attempt::Unresolved(raw.re);
        }
        prev = Some(raw);
        n *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::{ComplexPoly, FnAnalytic};

    #[test]
    fn double_root_at_origin() {
        let g = ComplexPoly::monomial(2, C64::new(1.0, 0.0));
        assert_eq!(count_zeros_in_disk(&g, 1.0, 1e-6).unwrap().count, 2);
    }

    #[test]
    fn two_of_three_roots_inside() {
        let g = ComplexPoly::from_roots(&[0.0.into(), 0.25.into(), 3.0.into()]);
        assert_eq!(count_zeros_in_disk(&g, 0.5, 1e-6).unwrap().count, 2);
        // numerical-derivative path
        let h = FnAnalytic::new(move |z| g.eval(z));
        assert_eq!(count_zeros_in_disk(&h, 0.5, 1e-6).unwrap().count, 2);
    }

    #[test]
    fn exp_has_no_zeros() {
        let g = FnAnalytic::new(|z: C64| z.exp());
        assert_eq!(count_zeros_in_disk(&g, 1.0, 1e-6).unwrap().count, 0);
    }

    #[test]
    fn boundary_zero_pushes_radius_out() {
        // zero exactly on |z| = 0.5
        let g = ComplexPoly::from_roots(&[C64::new(0.5, 0.0), C64::new(0.1, 0.0)]);
        let c = count_zeros_in_disk(&g, 0.5, 1e-2).unwrap();
        assert_eq!(c.count, 2);
        assert!(c.radius > 0.5 && c.radius <= 0.51);
    }

    #[test]
    fn zero_on_every_candidate_circle() {
        // zeros at every radius in [0.5, 0.5 + tol]
        let roots: Vec<C64> = OUTWARD_STEPS.iter().map(|s| C64::new(0.5 + s * 1e-2, 0.0)).collect();
        let g = ComplexPoly::from_roots(&roots);
        assert!(matches!(count_zeros_in_disk(&g, 0.5, 1e-2), Err(Error::BoundaryZero { .. })));
    }
}
