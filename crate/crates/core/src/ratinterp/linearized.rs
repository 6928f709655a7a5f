use serde::{Deserialize, Serialize};

use super::{Normalization, RationalFn};
use crate::linalg::right_singular;
use crate::numcore::{Analytic, ComplexPoly, C64};
use crate::polyinterp::NodeSet;
use crate::{Error, Result};

/// Relative singular value treated as zero when sizing the null space.
const NULL_TOL: f64 = 1e-10;

/// Least-squares solution of `Q(z_j) f(z_j) - P(z_j) = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearizedFit {
    /// Unit-norm coefficient pair.
    pub r: RationalFn,
    /// Attained root-sum-square residual (the smallest singular value).
    pub residual: f64,
    /// `max(||f(z_j)||_2, sqrt N)`: scale for relative comparisons.
    pub scale: f64,
    pub null_dim: usize,
}

impl LinearizedFit {
    pub fn relative_residual(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            self.residual / self.scale
        }
    }
}

/// Unit `(P, Q)`, `deg P <= n`, `deg Q <= m`, minimizing the residual over
/// the nodes: the smallest right singular vector of the `N x (n+m+2)` matrix
/// with columns `f(z_j) z_j^i` (for `Q`) then `-z_j^i` (for `P`).
///
/// A null space larger than `max(1, n+m+2-N)` means `f` is rational of lower
/// type on the nodes and is reported as [`Error::MultipleSolutions`].
pub fn multipoint_linearized<A: Analytic + ?Sized>(
    f: &A,
    nodes: &NodeSet,
    n: usize,
    m: usize,
) -> Result<LinearizedFit> {
    let fit = solve(f, nodes, n, m)?;
    let expected = (n + m + 2).saturating_sub(nodes.len()).max(1);
    if fit.null_dim > expected {
        return Err(Error::MultipleSolutions { dim: fit.null_dim });
    }
    Ok(fit)
}

/// As [`multipoint_linearized`] without the uniqueness check.
///
/// The SVD runs in the scaled basis `(z/r)^i`, which keeps the columns of
/// comparable size for small `r`; coefficients are mapped back and
/// renormalized, and the residual is re-measured on the returned pair.
pub(crate) fn solve<A: Analytic + ?Sized>(f: &A, nodes: &NodeSet, n: usize, m: usize) -> Result<LinearizedFit> {
    let cols = n + m + 2;
    let rows = nodes.len();
    let rad = if nodes.r() > 0.0 { nodes.r() } else { 1.0 };
    let mut values = Vec::with_capacity(rows);
    let mut entries = Vec::with_capacity(rows * cols);
    for &z in nodes.nodes() {
        let fz = f.eval(z);
        if !fz.is_finite() {
            return Err(Error::Domain(format!("f is not finite at node {z}")));
        }
        values.push(fz);
        let w = z / rad;
        let mut pw = C64::new(1.0, 0.0);
        let mut pows = Vec::with_capacity(n.max(m) + 1);
        for _ in 0..=n.max(m) {
            pows.push(pw);
            pw *= w;
        }
        entries.extend(pows[..=m].iter().map(|&p| fz * p));
        entries.extend(pows[..=n].iter().map(|&p| -p));
    }
    let svd = right_singular(rows, cols, &entries);
    let v = &svd.vectors[0];
    let unscale = |c: &[C64]| -> Vec<C64> { c.iter().enumerate().map(|(i, &x)| x / rad.powi(i as i32)).collect() };
    let q = ComplexPoly::new(unscale(&v[..=m]));
    let p = ComplexPoly::new(unscale(&v[m + 1..]));
    if q.is_zero() {
        return Err(Error::Degenerate);
    }
    let r = RationalFn { p, q, normalization: Normalization::UnitNorm }.unit_normalized();
    let residual = nodes
        .nodes()
        .iter()
        .zip(&values)
        .map(|(&z, &fz)| (r.q.eval(z) * fz - r.p.eval(z)).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let scale =
        values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt().max((rows as f64).sqrt()).max(f64::MIN_POSITIVE);
    Ok(LinearizedFit { r, residual, scale, null_dim: svd.null_dim(NULL_TOL) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::CatalogFunction;
    use crate::ratinterp::Alpha;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn geometric_recovered() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let nodes = NodeSet::random_in_disk(5, 0.5, &mut rng).unwrap();
        let fit = multipoint_linearized(&CatalogFunction::geometric(), &nodes, 0, 1).unwrap();
        assert!(fit.residual < 1e-14);
        // Q = c(z - 1), P = -c
        let q = &fit.r.q;
        assert!((q.coeff(0) + q.coeff(1)).norm() < 1e-13);
        assert!((fit.r.p.coeff(0) - q.coeff(0)).norm() < 1e-13);
        assert!(Alpha::from_q(q).unwrap().distance(Alpha::Finite(C64::new(1.0, 0.0))) < 1e-12);
    }

    #[test]
    fn underdetermined_has_zero_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let nodes = NodeSet::random_in_disk(4, 0.5, &mut rng).unwrap();
        let fit = multipoint_linearized(&CatalogFunction::exp(), &nodes, 2, 1).unwrap();
        assert!(fit.residual < 1e-14);
    }

    #[test]
    fn exp_residual_decreases_with_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let nodes = NodeSet::random_in_disk(20, 0.5, &mut rng).unwrap();
        let res: Vec<f64> =
            (3..7).map(|n| multipoint_linearized(&CatalogFunction::exp(), &nodes, n, 1).unwrap().residual).collect();
        assert!(res[0] > 0.0);
        assert!(res.windows(2).all(|w| w[1] < w[0]), "{res:?}");
    }

    #[test]
    fn lower_type_is_multiple() {
        let nodes = NodeSet::equispaced_circle(12, 0.5).unwrap();
        let f = CatalogFunction::polynomial(ComplexPoly::from_real(&[1.0, 2.0]));
        assert!(matches!(multipoint_linearized(&f, &nodes, 4, 1), Err(Error::MultipleSolutions { .. })));
    }
}
