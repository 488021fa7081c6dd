//! JSON representation: complex numbers are `[re, im]`, matrices are
//! row-major nested arrays.

use std::collections::BTreeMap;
use std::path::Path;

use semi_hilbert::adjoint::admits_a_adjoint;
use semi_hilbert::catalog::Operands;
use semi_hilbert::{AFrame, CMat, C64, DEFAULT_RANK_TOL};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

pub type WireMatrix = Vec<Vec<[f64; 2]>>;

pub fn to_wire(m: &CMat) -> WireMatrix {
    (0..m.rows()).map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect()).collect()
}

pub fn from_wire(w: &WireMatrix) -> Result<CMat> {
    let rows: Vec<Vec<C64>> = w.iter().map(|r| r.iter().map(|[re, im]| C64::new(*re, *im)).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(HarnessError::InvalidInstance("ragged matrix rows".into()));
    }
    Ok(CMat::from_rows(&rows)?)
}

pub const OPERATOR_ROLES: [&str; 5] = ["T", "X", "Y", "P", "Q"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct RawInstance {
    dim: usize,
    #[serde(rename = "A")]
    a: WireMatrix,
    operators: BTreeMap<String, WireMatrix>,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    note: String,
}

/// A metric and named operators on `C^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub dim: usize,
    pub a: CMat,
    pub operators: BTreeMap<String, CMat>,
    pub seed: u64,
    pub note: String,
}

impl Instance {
    /// Checks the metric, operator roles and shapes, and the range condition.
    pub fn validate(&self) -> Result<AFrame> {
        self.a
            .ensure_shape(self.dim, self.dim)
            .map_err(|e| HarnessError::InvalidInstance(format!("A: {e}")))?;
        let f = AFrame::new(&self.a, DEFAULT_RANK_TOL)?;
        if !self.operators.contains_key("T") {
            return Err(HarnessError::InvalidInstance("operator T is required".into()));
        }
        for (name, m) in &self.operators {
            if !OPERATOR_ROLES.contains(&name.as_str()) {
                return Err(HarnessError::InvalidInstance(format!("unknown operator role {name:?}")));
            }
            m.ensure_shape(self.dim, self.dim)
                .map_err(|e| HarnessError::InvalidInstance(format!("{name}: {e}")))?;
            if !admits_a_adjoint(&f, m)? {
                return Err(HarnessError::InvalidInstance(format!("{name} admits no A-adjoint")));
            }
        }
        Ok(f)
    }

    pub fn operands(&self) -> Result<Operands> {
        let t = self.operators.get("T").ok_or(HarnessError::InvalidInstance("operator T is required".into()))?;
        let mut ops = Operands::new(t.clone());
        for (name, m) in &self.operators {
            ops = ops.with(name, m.clone())?;
        }
        Ok(ops)
    }

    pub fn to_json(&self) -> Result<String> {
        let raw = RawInstance {
            dim: self.dim,
            a: to_wire(&self.a),
            operators: self.operators.iter().map(|(k, v)| (k.clone(), to_wire(v))).collect(),
            seed: self.seed,
            note: self.note.clone(),
        };
        Ok(serde_json::to_string_pretty(&raw)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawInstance = serde_json::from_str(s)?;
        let operators =
            raw.operators.iter().map(|(k, v)| Ok((k.clone(), from_wire(v)?))).collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Instance { dim: raw.dim, a: from_wire(&raw.a)?, operators, seed: raw.seed, note: raw.note })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}
