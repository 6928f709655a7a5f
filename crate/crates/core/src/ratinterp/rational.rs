use serde::{Deserialize, Serialize};

use crate::numcore::{Analytic, ComplexPoly, C64};
use crate::{Error, Result};

/// Which representative of `(P, Q)` up to a common factor is stored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// `Q(0) = 1`.
    QAtZero,
    /// `||(P, Q)||_2 = 1` on the coefficient vectors.
    UnitNorm,
    /// `Q = alpha z - 1`, or `Q = z`.
    Projective,
}

/// `P / Q` with `Q != 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalFn {
    pub p: ComplexPoly,
    pub q: ComplexPoly,
    pub normalization: Normalization,
}

impl RationalFn {
    pub fn new(p: ComplexPoly, q: ComplexPoly, normalization: Normalization) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        Ok(RationalFn { p, q, normalization })
    }

    /// Joint coefficient 2-norm of `(P, Q)`.
    pub fn norm(&self) -> f64 {
        self.p.norm().hypot(self.q.norm())
    }

    pub fn unit_normalized(&self) -> Self {
        let c = C64::new(1.0 / self.norm(), 0.0);
        RationalFn { p: self.p.scale(c), q: self.q.scale(c), normalization: Normalization::UnitNorm }
    }

    /// Representative with `Q(0) = 1`; `None` when `Q(0) = 0`.
    pub fn q_at_zero_normalized(&self) -> Option<Self> {
        let q0 = self.q.coeff(0);
        if q0.norm() <= 1e-14 * self.q.norm() {
            return None;
        }
        let c = 1.0 / q0;
        Some(RationalFn { p: self.p.scale(c), q: self.q.scale(c), normalization: Normalization::QAtZero })
    }

    /// `P(z/rho) / Q(z/rho)`.
    pub fn rescale_argument(&self, inv_rho: f64) -> Self {
        let s = C64::new(inv_rho, 0.0);
        RationalFn { p: self.p.rescale_argument(s), q: self.q.rescale_argument(s), normalization: self.normalization }
    }
}

impl Analytic for RationalFn {
    fn eval(&self, z: C64) -> C64 {
        self.p.eval(z) / self.q.eval(z)
    }
}

/// Degree-one denominator as a point of the projective line:
/// `Q = alpha z - 1` or, for `alpha = infinity`, `Q = z`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Alpha {
    Finite(C64),
    Infinity,
}

impl Alpha {
    /// Reads `alpha` off `Q = q0 + q1 z` (degree at most one, `Q != 0`).
    pub fn from_q(q: &ComplexPoly) -> Result<Self> {
        match q.degree() {
            None => Err(Error::Domain("zero denominator has no projective point".into())),
            Some(d) if d > 1 => Err(Error::Domain(format!("denominator degree {d} exceeds one"))),
            _ => {
                let (q0, q1) = (q.coeff(0), q.coeff(1));
                if q0.norm() <= 1e-14 * q1.norm() {
                    Ok(Alpha::Infinity)
                } else {
                    Ok(Alpha::Finite(-q1 / q0))
                }
            }
        }
    }

    pub fn to_q(self) -> ComplexPoly {
        match self {
            Alpha::Finite(a) => ComplexPoly::new(vec![C64::new(-1.0, 0.0), a]),
            Alpha::Infinity => ComplexPoly::monomial(1, C64::new(1.0, 0.0)),
        }
    }

    pub fn modulus(self) -> f64 {
        match self {
            Alpha::Finite(a) => a.norm(),
            Alpha::Infinity => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<C64> {
        match self {
            Alpha::Finite(a) => Some(a),
            Alpha::Infinity => None,
        }
    }

    /// Distance in the plane; infinite against a finite point, zero between two infinities.
    pub fn distance(self, other: Alpha) -> f64 {
        match (self, other) {
            (Alpha::Finite(a), Alpha::Finite(b)) => (a - b).norm(),
            (Alpha::Infinity, Alpha::Infinity) => 0.0,
            _ => f64::INFINITY,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_round_trip() {
        for a in [
            Alpha::Finite(C64::new(0.0, 0.0)),
            Alpha::Finite(C64::new(1.0, 0.0)),
            Alpha::Finite(C64::new(-0.3, 2.5)),
            Alpha::Infinity,
        ] {
            assert_eq!(Alpha::from_q(&a.to_q()).unwrap(), a);
        }
        // 1 - z is alpha = 1 after rescaling by -1
        let q = ComplexPoly::from_real(&[1.0, -1.0]);
        assert_eq!(Alpha::from_q(&q).unwrap(), Alpha::Finite(C64::new(1.0, 0.0)));
        assert!(Alpha::from_q(&ComplexPoly::zero()).is_err());
    }
}
