//! The hard-coded worked examples.

use semi_hilbert::adjoint::{admits_a_adjoint, sharp};
use semi_hilbert::catalog::{run_check, CheckParams, Operands};
use semi_hilbert::gauges::{a_numerical_radius, a_seminorm};
use semi_hilbert::{AFrame, CMat, SweepConfig, DEFAULT_CHECK_TOL, DEFAULT_RANK_TOL};
use serde::Serialize;

use crate::error::{HarnessError, Result};

pub const REPRO_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReproItem {
    pub example: &'static str,
    pub quantity: &'static str,
    pub expected: f64,
    pub actual: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReproReport {
    pub tool_version: &'static str,
    pub items: Vec<ReproItem>,
}

impl ReproReport {
    pub fn first_mismatch(&self) -> Option<&ReproItem> {
        self.items.iter().find(|i| !i.ok)
    }

    pub fn into_result(self) -> Result<Self> {
        match self.first_mismatch() {
            Some(i) => Err(HarnessError::ReproMismatch {
                quantity: format!("{}: {}", i.example, i.quantity),
                expected: i.expected,
                actual: i.actual,
            }),
            None => Ok(self),
        }
    }
}

fn item(example: &'static str, quantity: &'static str, expected: f64, actual: f64) -> ReproItem {
    ReproItem { example, quantity, expected, actual, ok: (expected - actual).abs() <= REPRO_TOL }
}

fn real(rows: &[[f64; 3]]) -> CMat {
    CMat::from_real_rows(rows).expect("static example")
}

/// Evaluates the three examples without failing on mismatches.
pub fn evaluate_examples() -> Result<ReproReport> {
    let cfg = SweepConfig::default();
    let mut items = Vec::new();

    let a = CMat::diag_real(&[0.0, 1.0]);
    let swap = CMat::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])?;
    let f = AFrame::new(&a, DEFAULT_RANK_TOL)?;
    let admits = admits_a_adjoint(&f, &swap)?;
    items.push(ReproItem {
        example: "a",
        quantity: "admits_a_adjoint",
        expected: 0.0,
        actual: if admits { 1.0 } else { 0.0 },
        ok: !admits,
    });

    let id3 = AFrame::identity(3);
    let t = real(&[[0.0, 1.0, 0.0], [0.0, 0.0, 2.0], [0.0, 0.0, 0.0]]);
    let r = run_check(
        "thm_refined_fourth",
        &id3,
        &Operands::new(t),
        &CheckParams::default(),
        &cfg,
        DEFAULT_CHECK_TOL,
    )?;
    let refined = r.sub("upper").map_or(r.rhs, |(_, rhs)| rhs);
    items.push(item("b", "refined fourth-power bound", 39.0 / 16.0, refined));
    items.push(item("b", "squared Zamani bound", 49.0 / 16.0, r.metadata.get("zamani_rhs").copied().unwrap_or(f64::NAN)));

    let t = real(&[[0.0, 2.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
    let ts = sharp(&id3, &t)?;
    let p = &(&t * &ts) + &(&ts * &t);
    items.push(item("c", "w_A(T)", 1.0, a_numerical_radius(&id3, &t, &cfg)?));
    items.push(item("c", "half root of the Kittaneh operator norm", 1.0, 0.5 * a_seminorm(&id3, &p)?.sqrt()));
    items.push(item("c", "Frobenius norm of T^2", 1.0, t.pow(2).frobenius_norm()));

    Ok(ReproReport { tool_version: crate::report::TOOL_VERSION, items })
}

/// Reproduces the examples, failing with the first mismatching quantity.
pub fn repro_paper() -> Result<ReproReport> {
    evaluate_examples()?.into_result()
}
