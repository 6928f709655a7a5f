use serde::{Deserialize, Serialize};

use super::linearized::solve;
use super::Alpha;
use crate::numcore::{max_modulus, CatalogFunction, InequalityCheck, C64};
use crate::polyinterp::NodeSet;
use crate::taylorbounds::disk_constants;
use crate::{Error, Result};

/// `|alpha| = 1` is declared when `||alpha| - 1| <= ALPHA_UNIT_TOL`.
pub const ALPHA_UNIT_TOL: f64 = 5e-3;
/// Relative slack of the `limsup |alpha_n| >= 1/rho` floor.
const FLOOR_SLACK: f64 = 0.05;

/// Where the `N(n)` nodes go.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "seed")]
pub enum NodePolicy {
    /// Equispaced on the circle `|z| = r`.
    Equispaced,
    /// Uniform in the closed disk, from a seeded generator.
    SeededRandom(u64),
}

impl NodePolicy {
    fn nodes(self, count: usize, r: f64, n: usize) -> Result<NodeSet> {
        match self {
            NodePolicy::Equispaced => NodeSet::equispaced_circle(count, r),
            NodePolicy::SeededRandom(seed) => {
                use rand::SeedableRng;
                let mut rng =
                    rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                NodeSet::random_in_disk(count, r, &mut rng)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModulusClass {
    /// `|alpha| > 1` (or `alpha = infinity`).
    Outside,
    Unit,
    Inside,
    /// No usable limit.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaEntry {
    pub n: usize,
    #[serde(rename = "N")]
    pub big_n: usize,
    /// `None` for degenerate entries.
    pub alpha: Option<Alpha>,
    pub residual: f64,
    pub relative_residual: f64,
    pub null_dim: usize,
    pub degenerate: bool,
}

/// The sequence `alpha_n` for `Q_n = alpha_n z - 1` from linearized fits of
/// type `(n, 1)` at `N(n)` nodes in the closed `r`-disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaTrace {
    pub r: f64,
    pub entries: Vec<AlphaEntry>,
    /// `|alpha_m - alpha_{m+1}|` between consecutive non-degenerate entries.
    pub drifts: Vec<f64>,
    pub alpha_limit: Option<Alpha>,
    /// `log2 B`, `B = 2^13 M sum_j 2^{3j} a^{N(j)/2}` over the schedule (diagnostic).
    pub log2_b: Option<f64>,
    pub modulus_class: ModulusClass,
    /// `max |alpha_n| >= (1 - 0.05) / rho` when `rho` is known and finite.
    pub limsup_floor: Option<InequalityCheck>,
}

impl AlphaTrace {
    pub fn drift_sum(&self) -> f64 {
        self.drifts.iter().sum()
    }

    pub fn alphas(&self) -> impl Iterator<Item = Alpha> + '_ {
        self.entries.iter().filter_map(|e| e.alpha)
    }
}

pub fn alpha_trace(
    f: &CatalogFunction,
    r: f64,
    schedule: &[usize],
    zero_counts: &[usize],
    policy: NodePolicy,
) -> Result<AlphaTrace> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("trace radius {r} must be positive")));
    }
    if schedule.len() != zero_counts.len() || schedule.is_empty() {
        return Err(Error::Config("schedule and zero counts must be nonempty and of equal length".into()));
    }
    for i in 0..schedule.len() {
        if zero_counts[i] < schedule[i] + 2 {
            return Err(Error::Config(format!("N({}) = {} is below n + 2", schedule[i], zero_counts[i])));
        }
        if i > 0 && (schedule[i] <= schedule[i - 1] || zero_counts[i] < zero_counts[i - 1]) {
            return Err(Error::Config("schedule and zero counts must increase".into()));
        }
    }

    let jobs: Vec<(usize, usize)> = schedule.iter().copied().zip(zero_counts.iter().copied()).collect();
    let entries = crate::par_map(&jobs, |&(n, big_n)| trace_entry(f, r, n, big_n, policy))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let alphas: Vec<Alpha> = entries.iter().filter_map(|e| e.alpha).collect();
    let drifts: Vec<f64> = alphas.windows(2).map(|w| w[0].distance(w[1])).collect();
    let alpha_limit = extrapolate(&alphas, drifts.iter().sum());
    let modulus_class = match alpha_limit {
        None => ModulusClass::Undetermined,
        Some(Alpha::Infinity) => ModulusClass::Outside,
        Some(Alpha::Finite(a)) => {
            let d = a.norm() - 1.0;
            if d.abs() <= ALPHA_UNIT_TOL {
                ModulusClass::Unit
            } else if d > 0.0 {
                ModulusClass::Outside
            } else {
                ModulusClass::Inside
            }
        }
    };
    let limsup_floor = match f.rho_known() {
        Some(rho) if rho.is_finite() && !alphas.is_empty() => {
            let top = alphas.iter().map(|a| a.modulus()).fold(0.0, f64::max);
            Some(InequalityCheck::new((1.0 - FLOOR_SLACK) / rho, top, 0.0))
        }
        _ => None,
    };
    let log2_b = b_constant(f, r, &jobs);
    Ok(AlphaTrace { r, entries, drifts, alpha_limit, log2_b, modulus_class, limsup_floor })
}

fn trace_entry(f: &CatalogFunction, r: f64, n: usize, big_n: usize, policy: NodePolicy) -> Result<AlphaEntry> {
    let nodes = policy.nodes(big_n, r, n)?;
    let degenerate_entry = |residual: f64, relative: f64, null_dim: usize| AlphaEntry {
        n,
        big_n,
        alpha: None,
        residual,
        relative_residual: relative,
        null_dim,
        degenerate: true,
    };
    let fit = match solve(f, &nodes, n, 1) {
        Ok(fit) => fit,
        Err(Error::Degenerate) => return Ok(degenerate_entry(f64::NAN, f64::NAN, 0)),
        Err(e) => return Err(e),
    };
    let expected = (n + 3).saturating_sub(big_n).max(1);
    if fit.null_dim > expected {
        return Ok(degenerate_entry(fit.residual, fit.relative_residual(), fit.null_dim));
    }
    let alpha = Alpha::from_q(&fit.r.q)?;
    Ok(AlphaEntry {
        n,
        big_n,
        alpha: Some(alpha),
        residual: fit.residual,
        relative_residual: fit.relative_residual(),
        null_dim: fit.null_dim,
        degenerate: false,
    })
}

/// Aitken extrapolation of the last three finite values, falling back to the
/// last value when the step is unstable or leaves the drift budget.
fn extrapolate(alphas: &[Alpha], drift_sum: f64) -> Option<Alpha> {
    let last = *alphas.last()?;
    let tail: Vec<C64> = alphas.iter().rev().take(3).filter_map(|a| a.finite()).collect();
    if tail.len() < 3 || !drift_sum.is_finite() {
        return Some(last);
    }
    let (a2, a1, a0) = (tail[0], tail[1], tail[2]);
    let denom = (a2 - a1) - (a1 - a0);
    if denom.norm() <= 1e-14 * (1.0 + a2.norm()) {
        return Some(last);
    }
    let lim = a2 - (a2 - a1) * (a2 - a1) / denom;
    if !lim.is_finite() || (lim - a2).norm() > drift_sum {
        return Some(last);
    }
    Some(Alpha::Finite(lim))
}

fn b_constant(f: &CatalogFunction, r: f64, jobs: &[(usize, usize)]) -> Option<f64> {
    let dc = disk_constants(r).ok()?;
    let big_r = dc.min_radius();
    if f.rho_known().is_some_and(|rho| rho <= big_r) {
        return None;
    }
    let m = max_modulus(f, big_r, 1e-8).ok()?.value;
    let terms: Vec<f64> = jobs.iter().map(|&(j, big_n)| 3.0 * j as f64 + 0.5 * big_n as f64 * dc.a.log2()).collect();
    let top = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lse = top + terms.iter().map(|t| (t - top).exp2()).sum::<f64>().log2();
    Some(13.0 + m.log2() + lse)
}
