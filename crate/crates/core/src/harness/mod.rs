//! Function catalog, JSON experiment configs and report emission.
//!
//! A run is fully determined by its config (including the seed): trials are
//! seeded per index and reduced in index order, so CSV tables are
//! byte-identical across runs and thread counts.

mod catalog;
mod config;
mod report;
mod run;

pub use catalog::{catalog_lookup, CATALOG_IDS};
pub use config::{
    Approximants, Coef, Degrees, ExperimentConfig, Family, FunctionSpec, Kind, PointsSpec, Radii, ScheduleSpec, Shape,
    Tolerances, SCHEMA_VERSION,
};
pub use report::{InequalityRow, RowError, RunReport, Table, Tally};
pub use run::{default_catalog, run};

/// Environment variable overriding the worker-thread count.
pub const THREADS_ENV: &str = "OVERINTERP_THREADS";

/// Size the global thread pool from [`THREADS_ENV`]; a no-op when unset or
/// when the pool already exists.
#[cfg(feature = "parallel")]
pub fn init_threads() -> crate::Result<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v.parse().map_err(|_| crate::Error::Config(format!("{THREADS_ENV}={v:?} is not a thread count")))?;
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

#[cfg(not(feature = "parallel"))]
pub fn init_threads() -> crate::Result<()> {
    Ok(())
}
