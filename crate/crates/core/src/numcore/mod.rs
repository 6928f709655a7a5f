//! Complex polynomials, truncated power series, circle extremes, radius
//! estimation and zero counting.

mod catalog;
mod circle;
mod poly;
mod radius;
mod series;
mod zeros;

pub use catalog::CatalogFunction;
pub use circle::{max_modulus, min_modulus, CircleSample};
pub use poly::ComplexPoly;
pub use radius::{degree_detect, radius_of_convergence, Confidence, DegreeVerdict, RadiusEstimate};
pub use series::TaylorSeries;
pub use zeros::{count_zeros_in_disk, ZeroCount};

pub type C64 = num_complex::Complex64;

/// A function that can be evaluated on (part of) the complex plane.
pub trait Analytic {
    fn eval(&self, z: C64) -> C64;

    /// Analytic derivative when cheaply available.
    fn deriv(&self, _z: C64) -> Option<C64> {
        None
    }
}

impl<T: Analytic + ?Sized> Analytic for &T {
    fn eval(&self, z: C64) -> C64 {
        (**self).eval(z)
    }
    fn deriv(&self, z: C64) -> Option<C64> {
        (**self).deriv(z)
    }
}

impl<T: Analytic + ?Sized> Analytic for Box<T> {
    fn eval(&self, z: C64) -> C64 {
        (**self).eval(z)
    }
    fn deriv(&self, z: C64) -> Option<C64> {
        (**self).deriv(z)
    }
}

/// Closure wrapper without derivative information.
#[derive(Clone, Copy)]
pub struct FnAnalytic<F>(F);

impl<F: Fn(C64) -> C64> FnAnalytic<F> {
    pub fn new(f: F) -> Self {
        FnAnalytic(f)
    }
}

impl<F: Fn(C64) -> C64> Analytic for FnAnalytic<F> {
    fn eval(&self, z: C64) -> C64 {
        (self.0)(z)
    }
}

/// `a - b`, with a derivative when both sides have one.
#[derive(Clone, Copy)]
pub struct Difference<A, B>(pub A, pub B);

impl<A: Analytic, B: Analytic> Analytic for Difference<A, B> {
    fn eval(&self, z: C64) -> C64 {
        self.0.eval(z) - self.1.eval(z)
    }
    fn deriv(&self, z: C64) -> Option<C64> {
        Some(self.0.deriv(z)? - self.1.deriv(z)?)
    }
}

/// One evaluated inequality `lhs <= rhs (1 + slack)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl InequalityCheck {
    pub fn new(lhs: f64, rhs: f64, slack: f64) -> Self {
        InequalityCheck { lhs, rhs, holds: lhs <= rhs * (1.0 + slack) }
    }
}

/// Monic polynomial `prod (z - root)`, multiplicities kept.
pub fn poly_from_roots(roots: &[C64]) -> ComplexPoly {
    ComplexPoly::from_roots(roots)
}
