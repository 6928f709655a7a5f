use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::numcore::InequalityCheck;
use crate::{Error, Result};

/// One asserted inequality `lhs <= rhs (1 + slack)` with its provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityRow {
    /// Where in the run the check was made, e.g. `trial=17`.
    pub context: String,
    pub module: String,
    pub anchor: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
}

impl InequalityRow {
    pub fn new(context: impl Into<String>, module: &str, anchor: &str, check: InequalityCheck, slack: f64) -> Self {
        InequalityRow {
            context: context.into(),
            module: module.into(),
            anchor: anchor.into(),
            lhs: check.lhs,
            rhs: check.rhs,
            slack,
            holds: check.holds,
        }
    }
}

/// Module error captured for one unit of work.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowError {
    pub context: String,
    pub message: String,
    pub unresolved: bool,
}

impl RowError {
    pub fn new(context: impl Into<String>, err: &Error) -> Self {
        RowError {
            context: context.into(),
            message: err.to_string(),
            unresolved: matches!(err, Error::Unresolved { .. } | Error::RoundingFloor { .. }),
        }
    }
}

/// Plain table written as CSV with a fixed column order.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Table { name: name.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.into_inner().map_err(|e| Error::Io(e.to_string()))
    }
}

/// Shorthand for table cells.
pub(crate) fn cell(v: impl ToString) -> String {
    v.to_string()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checked: usize,
    pub violations: usize,
    pub errors: usize,
    pub unresolved: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ExperimentConfig,
    /// `(label, verdict)` pairs, e.g. `("classify-rational", "NoOverinterpolation")`.
    pub verdicts: Vec<(String, String)>,
    pub rows: Vec<InequalityRow>,
    pub tables: Vec<Table>,
    pub errors: Vec<RowError>,
    pub tally: Tally,
    pub wall_clock_ms: u128,
    pub version: String,
}

impl RunReport {
    pub(crate) fn new(config: ExperimentConfig) -> Self {
        RunReport {
            config,
            verdicts: Vec::new(),
            rows: Vec::new(),
            tables: Vec::new(),
            errors: Vec::new(),
            tally: Tally::default(),
            wall_clock_ms: 0,
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }

    pub(crate) fn verdict(&mut self, label: &str, v: impl Into<String>) {
        self.verdicts.push((label.into(), v.into()));
    }

    pub(crate) fn capture<T>(&mut self, context: impl Into<String>, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.errors.push(RowError::new(context, &e));
                None
            }
        }
    }

    pub(crate) fn finish(&mut self) {
        self.tally = Tally {
            checked: self.rows.len(),
            violations: self.rows.iter().filter(|r| !r.holds).count(),
            errors: self.errors.len(),
            unresolved: self.errors.iter().filter(|e| e.unresolved).count(),
        };
    }

    pub fn verdict_of(&self, label: &str) -> Option<&str> {
        self.verdicts.iter().find(|(l, _)| l == label).map(|(_, v)| v.as_str())
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    /// Zero violations and no unresolved winding integrals.
    pub fn success(&self) -> bool {
        self.tally.violations == 0 && self.tally.unresolved == 0
    }

    /// Inequality rows as a table.
    pub fn rows_table(&self) -> Table {
        let mut t = Table::new("inequalities", &["context", "module", "anchor", "lhs", "rhs", "slack", "holds"]);
        for r in &self.rows {
            t.push(vec![
                r.context.clone(),
                r.module.clone(),
                r.anchor.clone(),
                cell(r.lhs),
                cell(r.rhs),
                cell(r.slack),
                cell(r.holds),
            ]);
        }
        t
    }

    /// Writes `report.json`, `inequalities.csv`, `errors.csv` and one CSV per table.
    /// Only `report.json` carries run-dependent data (wall clock).
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(self)?)?;
        std::fs::write(dir.join("inequalities.csv"), self.rows_table().to_csv()?)?;
        let mut errs = Table::new("errors", &["context", "message", "unresolved"]);
        for e in &self.errors {
            errs.push(vec![e.context.clone(), e.message.clone(), cell(e.unresolved)]);
        }
        std::fs::write(dir.join("errors.csv"), errs.to_csv()?)?;
        for t in &self.tables {
            std::fs::write(dir.join(format!("{}.csv", t.name)), t.to_csv()?)?;
        }
        Ok(())
    }
}
