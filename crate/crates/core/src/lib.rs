//! Numerical laboratory for overinterpolation.
//!
//! The crate is organised by subsystem:
//!
//! * [`numcore`]: complex polynomials, truncated power series, circle maxima,
//!   radius-of-convergence estimation and argument-principle zero counting.
//! * [`polyinterp`]: Newton-form interpolation at nodes in a closed disk and
//!   the explicit interpolation remainder bound.
//! * [`taylorbounds`]: the disk constant system, coefficient-decay
//!   certificates, the zero-decrement inequality and the doubling constant.
//! * [`ratinterp`]: Pade rows, linearized multipoint rational interpolation,
//!   the projective denominator trace and the rational classifier.
//! * [`overconv`]: circle selection, the circle error bound and
//!   overconvergence-rate reports.
//! * [`algcurves`]: minimal-degree curves through planar point sets, Bezout
//!   counts and the growth-exponent trichotomy.
//! * [`harness`]: function catalog, JSON experiment configs, CSV reports.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algcurves;
pub mod error;
pub mod harness;
mod linalg;
pub mod numcore;
pub mod overconv;
pub mod polyinterp;
pub mod ratinterp;
pub mod taylorbounds;

pub use error::{Error, Result};
pub use numcore::{Analytic, CatalogFunction, ComplexPoly, TaylorSeries, C64};

/// Order-preserving map, parallel when the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}
