//! Dense SVD helpers for the homogeneous least-squares problems.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Right singular vectors ordered by increasing singular value.
pub(crate) struct RightSingular {
    /// Singular values, ascending. Padded rows contribute exact zeros.
    pub sigma: Vec<f64>,
    /// Unit right singular vectors matching `sigma`.
    pub vectors: Vec<Vec<Complex64>>,
}

impl RightSingular {
    pub fn largest(&self) -> f64 {
        self.sigma.last().copied().unwrap_or(0.0)
    }

    /// Number of singular values at or below `rel_tol * largest`.
    pub fn null_dim(&self, rel_tol: f64) -> usize {
        let cut = rel_tol * self.largest();
        self.sigma.iter().take_while(|&&s| s <= cut).count()
    }
}

/// SVD of a `rows x cols` matrix given row-major; rows are zero-padded up to
/// `cols` so that every right singular vector (including the null space of an
/// underdetermined system) is returned.
pub(crate) fn right_singular(rows: usize, cols: usize, entries: &[Complex64]) -> RightSingular {
    debug_assert_eq!(entries.len(), rows * cols);
    let padded = rows.max(cols);
    let mut m = DMatrix::<Complex64>::zeros(padded, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = entries[i * cols + j];
        }
    }
    if m.iter().all(|z| z.norm() == 0.0) {
        // nalgebra returns garbage directions for the zero matrix; use the canonical basis.
        let vectors = (0..cols)
            .map(|k| {
                let mut v = vec![Complex64::new(0.0, 0.0); cols];
                v[k] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
        return RightSingular { sigma: vec![0.0; cols], vectors };
    }
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let sigma = order.iter().map(|&i| svd.singular_values[i]).collect();
    let vectors = order.iter().map(|&i| (0..cols).map(|j| v_t[(i, j)].conj()).collect()).collect();
    RightSingular { sigma, vectors }
}

/// Orthogonal projection of `target` onto the span of orthonormal `basis`.
pub(crate) fn project(basis: &[Vec<Complex64>], target: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); target.len()];
    for v in basis {
        let c: Complex64 = v.iter().zip(target).map(|(a, b)| a.conj() * b).sum();
        for (o, a) in out.iter_mut().zip(v) {
            *o += c * a;
        }
    }
    out
}

pub(crate) fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_vector_of_rank_one_row() {
        // x + y = 0 has null direction (1, -1)/sqrt(2)
        let one = Complex64::new(1.0, 0.0);
        let rs = right_singular(1, 2, &[one, one]);
        assert_eq!(rs.null_dim(1e-12), 1);
        let v = &rs.vectors[0];
        assert!((v[0] + v[1]).norm() < 1e-12);
        assert!((norm(v) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_matrix_is_all_null() {
        let rs = right_singular(2, 3, &[Complex64::new(0.0, 0.0); 6]);
        assert_eq!(rs.null_dim(1e-12), 3);
    }
}
