use std::collections::BTreeMap;
use std::io::Write;

use semi_hilbert::catalog::CheckResult;
use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub trial: usize,
    pub check_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
    pub skipped: bool,
    /// Child seed of the trial.
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Row {
    pub fn from_result(trial: usize, seed: u64, r: &CheckResult) -> Self {
        Row {
            trial,
            check_id: r.check_id.clone(),
            lhs: r.lhs,
            rhs: r.rhs,
            slack: r.slack,
            pass: r.pass,
            skipped: r.is_skipped(),
            seed,
            error: r.error.clone(),
        }
    }

    pub fn is_violation(&self) -> bool {
        !self.pass && !self.skipped
    }

    /// `(rhs − lhs) / (1 + |rhs|)`.
    pub fn relative_slack(&self) -> f64 {
        self.slack / (1.0 + self.rhs.abs())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpCase {
    pub trial: usize,
    pub seed: u64,
    pub relative_slack: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub evaluated: usize,
    pub skipped: usize,
    pub violations: usize,
    pub errors: usize,
    pub min_slack: Option<f64>,
    pub min_relative_slack: Option<f64>,
    pub sharpest_trial: Option<usize>,
    pub sharpest_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub top: Vec<SharpCase>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub violations: usize,
    pub skipped: usize,
    pub errors: usize,
    pub checks: BTreeMap<String, CheckSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub master_seed: u64,
    pub trials: usize,
    pub rows: Vec<Row>,
    pub summary: Summary,
}

impl Report {
    /// Sorts rows by `(trial, check_id)` and builds the summary; `top` keeps
    /// that many sharpest cases per check.
    pub fn assemble(master_seed: u64, trials: usize, mut rows: Vec<Row>, top: usize) -> Self {
        rows.sort_by(|a, b| (a.trial, &a.check_id).cmp(&(b.trial, &b.check_id)));
        let mut summary = Summary::default();
        let mut ranked: BTreeMap<String, Vec<SharpCase>> = BTreeMap::new();
        for row in &rows {
            let s = summary.checks.entry(row.check_id.clone()).or_default();
            if row.error.is_some() && !row.skipped {
                s.errors += 1;
                summary.errors += 1;
            }
            if row.skipped {
                s.skipped += 1;
                summary.skipped += 1;
                continue;
            }
            if row.is_violation() {
                s.violations += 1;
                summary.violations += 1;
            }
            if row.error.is_some() {
                continue;
            }
            s.evaluated += 1;
            let rel = row.relative_slack();
            s.min_slack = Some(s.min_slack.map_or(row.slack, |m| m.min(row.slack)));
            if s.min_relative_slack.map_or(true, |m| rel < m) {
                s.min_relative_slack = Some(rel);
                s.sharpest_trial = Some(row.trial);
                s.sharpest_seed = Some(row.seed);
            }
            if top > 0 {
                ranked.entry(row.check_id.clone()).or_default().push(SharpCase {
                    trial: row.trial,
                    seed: row.seed,
                    relative_slack: rel,
                });
            }
        }
        for (id, mut cases) in ranked {
            cases.sort_by(|a, b| a.relative_slack.total_cmp(&b.relative_slack).then(a.trial.cmp(&b.trial)));
            cases.truncate(top);
            summary.checks.get_mut(&id).expect("summarized").top = cases;
        }
        Report { tool_version: TOOL_VERSION.to_string(), master_seed, trials, rows, summary }
    }

    pub fn violations(&self) -> usize {
        self.summary.violations
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Columns `trial,check_id,lhs,rhs,slack,pass,skipped`.
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["trial", "check_id", "lhs", "rhs", "slack", "pass", "skipped"])?;
        for r in &self.rows {
            w.write_record([
                r.trial.to_string(),
                r.check_id.clone(),
                r.lhs.to_string(),
                r.rhs.to_string(),
                r.slack.to_string(),
                r.pass.to_string(),
                r.skipped.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}
