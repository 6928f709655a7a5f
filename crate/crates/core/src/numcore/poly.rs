use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{Analytic, C64};

/// Dense complex polynomial; `coeffs[k]` multiplies `z^k`.
///
/// Trailing exact zeros are stripped on construction, so the last stored
/// coefficient is nonzero unless the polynomial is zero (empty storage).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<C64>", into = "Vec<C64>")]
pub struct ComplexPoly {
    coeffs: Vec<C64>,
}

impl From<Vec<C64>> for ComplexPoly {
    fn from(coeffs: Vec<C64>) -> Self {
        ComplexPoly::new(coeffs)
    }
}

impl From<ComplexPoly> for Vec<C64> {
    fn from(p: ComplexPoly) -> Self {
        p.coeffs
    }
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == C64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        ComplexPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        ComplexPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    /// `c z^k`
    pub fn monomial(k: usize, c: C64) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Monic polynomial with exactly the given roots (with multiplicity).
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut coeffs = Vec::with_capacity(roots.len() + 1);
        coeffs.push(C64::new(1.0, 0.0));
        for &root in roots {
            coeffs.push(C64::new(0.0, 0.0));
            for k in (1..coeffs.len()).rev() {
                coeffs[k] = coeffs[k - 1] - root * coeffs[k];
            }
            coeffs[0] = -root * coeffs[0];
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Coefficient of `z^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect())
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// `p(rho z)`
    pub fn rescale_argument(&self, rho: C64) -> Self {
        let mut pow = C64::new(1.0, 0.0);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            out.push(c * pow);
            pow *= rho;
        }
        Self::new(out)
    }

    /// Roots with multiplicity: companion-matrix eigenvalues, Newton-polished.
    pub fn roots(&self) -> Vec<C64> {
        let Some(d) = self.degree() else {
            return Vec::new();
        };
        if d == 0 {
            return Vec::new();
        }
        let lead = self.coeffs[d];
        let mut comp = nalgebra::DMatrix::<C64>::zeros(d, d);
        for i in 1..d {
            comp[(i, i - 1)] = C64::new(1.0, 0.0);
        }
        for i in 0..d {
            comp[(i, d - 1)] = -self.coeffs[i] / lead;
        }
        let eig = comp.schur().eigenvalues().map(|v| v.iter().copied().collect::<Vec<_>>());
        let mut roots = eig.unwrap_or_default();
        let dp = self.derivative();
        for z in roots.iter_mut() {
            for _ in 0..3 {
                let dz = dp.eval(*z);
                if dz.norm() == 0.0 {
                    break;
                }
                let step = self.eval(*z) / dz;
                if !step.is_finite() {
                    break;
                }
                *z -= step;
            }
        }
        roots
    }

    /// Euclidean 2-norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        // fold from +0 so the zero polynomial has norm +0, not -0
        self.coeffs.iter().fold(0.0, |acc, c| acc + c.norm_sqr()).sqrt()
    }

    /// Zero out coefficients below `rel_tol * max|c_k|` and re-trim.
    pub fn trimmed(&self, rel_tol: f64) -> Self {
        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        Self::new(
            self.coeffs.iter().map(|&c| if c.norm() <= rel_tol * scale { C64::new(0.0, 0.0) } else { c }).collect(),
        )
    }

    /// Polynomial long division: `self = q * divisor + r` with `deg r < deg divisor`.
    ///
    /// Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &ComplexPoly) -> (ComplexPoly, ComplexPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (ComplexPoly::zero(), self.clone());
        }
        let mut quot = vec![C64::new(0.0, 0.0); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] / lead;
            quot[k] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
        rem.truncate(dd);
        (ComplexPoly::new(quot), ComplexPoly::new(rem))
    }
}

impl Analytic for ComplexPoly {
    fn eval(&self, z: C64) -> C64 {
        ComplexPoly::eval(self, z)
    }

    fn deriv(&self, z: C64) -> Option<C64> {
        // Horner for p and p' together.
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        Some(dp)
    }
}

fn zip_with(a: &ComplexPoly, b: &ComplexPoly, op: impl Fn(C64, C64) -> C64) -> ComplexPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    ComplexPoly::new((0..n).map(|k| op(a.coeff(k), b.coeff(k))).collect())
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, rhs: &ComplexPoly) -> ComplexPoly {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, rhs: &ComplexPoly) -> ComplexPoly {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Neg for &ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, rhs: &ComplexPoly) -> ComplexPoly {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPoly::zero();
        }
        let mut out = vec![C64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new(out)
    }
}
