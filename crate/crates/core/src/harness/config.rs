//! JSON experiment configuration, schema version 1.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ratinterp::Schedule;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    LagrangeBound,
    CoeffDecay,
    PadeRow,
    ClassifyRational,
    CircleSelect,
    OverconvRate,
    CurveFit,
    AlphaExponent,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::LagrangeBound,
        Kind::CoeffDecay,
        Kind::PadeRow,
        Kind::ClassifyRational,
        Kind::CircleSelect,
        Kind::OverconvRate,
        Kind::CurveFit,
        Kind::AlphaExponent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::LagrangeBound => "lagrange-bound",
            Kind::CoeffDecay => "coeff-decay",
            Kind::PadeRow => "pade-row",
            Kind::ClassifyRational => "classify-rational",
            Kind::CircleSelect => "circle-select",
            Kind::OverconvRate => "overconv-rate",
            Kind::CurveFit => "curve-fit",
            Kind::AlphaExponent => "alpha-exponent",
        }
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A complex coefficient: a bare number or `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coef {
    Real(f64),
    Complex([f64; 2]),
}

/// Catalog entry and its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    pub id: String,
    /// Numerator (or the polynomial), ascending powers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<Coef>>,
    /// Denominator, ascending powers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<Coef>>,
    /// Seed of `random-radius-one`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Replace `f(z)` by `f(rho z)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rescale: Option<f64>,
}

impl FunctionSpec {
    pub fn id(id: &str) -> Self {
        FunctionSpec { id: id.into(), p: None, q: None, seed: None, rescale: None }
    }
}

/// Degree schedule with zero counts `N(n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ScheduleSpec {
    /// `N(n) = n^2`.
    Squares {
        lo: usize,
        hi: usize,
    },
    /// `N(n) = ceil(c n ceil(ln n))`.
    NLogN {
        lo: usize,
        hi: usize,
        c: f64,
    },
    Custom {
        degrees: Vec<usize>,
        counts: Vec<usize>,
    },
}

impl ScheduleSpec {
    pub fn build(&self) -> Result<Schedule> {
        match self {
            ScheduleSpec::Squares { lo, hi } => Schedule::squares(*lo, *hi),
            ScheduleSpec::NLogN { lo, hi, c } => Schedule::n_log_n(*lo, *hi, *c),
            ScheduleSpec::Custom { degrees, counts } => Schedule::new(degrees.clone(), counts.clone()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Radii {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(default, rename = "R", skip_serializing_if = "Option::is_none")]
    pub big_r: Option<f64>,
    /// Circle radius for overconvergence rates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
}

/// Inclusive degree range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Degrees {
    pub lo: usize,
    pub hi: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Parabola,
    Line,
    Random,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum PointsSpec {
    /// CSV with columns `re_x, im_x, re_y, im_y`.
    Csv(PathBuf),
    Generate {
        shape: Shape,
        count: usize,
    },
}

/// Approximants whose errors are measured by `overconv-rate`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Approximants {
    #[default]
    TaylorSections,
    PadeRow,
}

/// Denominator family for `circle-select`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Linear `Q_n` whose roots sweep the band at golden-ratio steps.
    #[default]
    Sweep,
    /// Denominators of the Pade row of the configured function.
    PadeRow,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Rank cut for minimal-degree curves.
    #[serde(default = "default_rank_tol")]
    pub rank: f64,
    /// Vanishing tolerance for intersection counts.
    #[serde(default = "default_count_tol")]
    pub count: f64,
    /// Duplicate-point tolerance for ingested point sets.
    #[serde(default = "default_dedup_tol")]
    pub dedup: f64,
}

fn default_rank_tol() -> f64 {
    crate::algcurves::RANK_TOL
}
fn default_count_tol() -> f64 {
    crate::algcurves::COUNT_TOL
}
fn default_dedup_tol() -> f64 {
    1e-12
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { rank: default_rank_tol(), count: default_count_tol(), dedup: default_dedup_tol() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub kind: Kind,
    /// Absent for `lagrange-bound` means "cycle through the catalog".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<FunctionSpec>,
    #[serde(default)]
    pub radii: Radii,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<ScheduleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Degrees>,
    /// Denominator degree of Pade rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Requested zero count for witnesses; raised to `ceil(A(n+1))` when lower.
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub big_n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<PointsSpec>,
    #[serde(default)]
    pub approximants: Approximants,
    #[serde(default)]
    pub family: Family,
    /// For `overconv-rate`: also classify the function and report both verdicts.
    #[serde(default)]
    pub pair_classify: bool,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Directory for report and tables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Defaults for `kind`: everything optional left empty.
    pub fn new(kind: Kind) -> Self {
        ExperimentConfig {
            schema_version: SCHEMA_VERSION,
            kind,
            function: None,
            radii: Radii::default(),
            schedule: None,
            degrees: None,
            m: None,
            big_n: None,
            trials: None,
            points: None,
            approximants: Approximants::default(),
            family: Family::default(),
            pair_classify: false,
            seed: 0,
            tolerances: Tolerances::default(),
            out: None,
        }
    }

    pub fn with_function(mut self, f: FunctionSpec) -> Self {
        self.function = Some(f);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "schema_version {} unsupported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let Radii { r, s, big_r, t } = self.radii;
        for (name, v) in [("r", r), ("s", s), ("R", big_r), ("t", t)] {
            if let Some(v) = v {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::Config(format!("radius {name} = {v} must be positive")));
                }
            }
        }
        if let (Some(r), Some(big_r)) = (r, big_r) {
            if r >= big_r {
                return Err(Error::Config(format!("need r < R (r = {r}, R = {big_r})")));
            }
        }
        if let Some(d) = self.degrees {
            if d.lo > d.hi {
                return Err(Error::Config(format!("empty degree range {}..={}", d.lo, d.hi)));
            }
        }
        if let Some(s) = &self.schedule {
            s.build()?;
        }
        if self.trials == Some(0) {
            return Err(Error::Config("trials must be positive".into()));
        }
        if let Some(f) = &self.function {
            super::catalog_lookup(f)?;
        }
        Ok(())
    }
}
