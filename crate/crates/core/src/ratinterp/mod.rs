//! Rational interpolation with denominators of low degree: Pade rows,
//! linearized multipoint fits, the projective denominator trace and the
//! classifier for functions overinterpolated by `R_{n,1}`.

mod alpha;
mod classify;
mod linearized;
mod pade;
mod rational;

pub use alpha::{alpha_trace, AlphaEntry, AlphaTrace, ModulusClass, NodePolicy, ALPHA_UNIT_TOL};
pub use classify::{classify_rational_overinterp, Classification, DecayRow, Schedule, Verdict};
pub use linearized::{multipoint_linearized, LinearizedFit};
pub use pade::{
    pade, pade_row_stabilizes, vanishing_order, vanishing_order_scaled, PadeEntry, RowEntry, RowStability, VanishOrder,
};
pub use rational::{Alpha, Normalization, RationalFn};
