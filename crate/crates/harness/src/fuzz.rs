//! Seeded fuzzing of the catalog and sharpness scanning.

use std::collections::BTreeMap;

use rand::{Rng, RngCore};
use semi_hilbert::catalog::{find, registry, run_selected, CheckParams, CheckResult};
use semi_hilbert::{AFrame, CMat, Error, SweepConfig, DEFAULT_CHECK_TOL, DEFAULT_RANK_TOL};

use crate::error::{HarnessError, Result};
use crate::generate::{gen_biased, gen_compatible, gen_psd, rng_from, Bias};
use crate::report::{Report, Row};
use crate::wire::Instance;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum RankPolicy {
    /// `rank = n`.
    Full,
    /// `rank` uniform in `1..=n`.
    #[default]
    Mixed,
    /// `rank` uniform in `1..=max(1, n/2)`.
    DegenerateHeavy,
}

impl RankPolicy {
    fn draw(self, rng: &mut impl Rng, n: usize) -> usize {
        match self {
            RankPolicy::Full => n,
            RankPolicy::Mixed => rng.random_range(1..=n),
            RankPolicy::DegenerateHeavy => rng.random_range(1..=(n / 2).max(1)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub rank_policy: RankPolicy,
    pub trials: usize,
    pub master_seed: u64,
    pub tol: f64,
    /// `None` runs the full registry.
    pub checks: Option<Vec<String>>,
    pub bias: Bias,
    /// Forces `A = I`.
    pub identity_metric: bool,
    pub sweep: SweepConfig,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            n_min: 2,
            n_max: 6,
            rank_policy: RankPolicy::Mixed,
            trials: 100,
            master_seed: 0,
            tol: DEFAULT_CHECK_TOL,
            checks: None,
            bias: Bias::None,
            identity_metric: false,
            sweep: SweepConfig::default(),
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(HarnessError::InvalidConfig(format!("bad dimension range {}..={}", self.n_min, self.n_max)));
        }
        if !self.tol.is_finite() {
            return Err(HarnessError::InvalidConfig(format!("bad tolerance {}", self.tol)));
        }
        self.sweep.validate()?;
        for id in self.check_ids() {
            find(id).ok_or_else(|| Error::UnknownCheckId(id.to_string()))?;
        }
        Ok(())
    }

    pub fn check_ids(&self) -> Vec<&str> {
        match &self.checks {
            Some(ids) => ids.iter().map(String::as_str).collect(),
            None => registry().iter().map(|d| d.id).collect(),
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `i`: `splitmix64(master_seed ^ splitmix64(i))`.
pub fn child_seed(master_seed: u64, i: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(i))
}

/// Exponents tried by `thm_power_r`; non-integers only for `A > 0`.
pub const R_STRICT: [f64; 4] = [1.0, 1.5, 2.0, 3.0];
pub const R_SINGULAR: [f64; 3] = [1.0, 2.0, 3.0];

#[derive(Clone, Debug)]
pub struct Trial {
    pub index: usize,
    pub seed: u64,
    pub instance: Instance,
    pub frame: AFrame,
    pub params: CheckParams,
}

/// Everything trial `i` needs, derived from its child seed alone.
pub fn generate_trial(cfg: &FuzzConfig, i: usize) -> Result<Trial> {
    let seed = child_seed(cfg.master_seed, i as u64);
    let mut rng = rng_from(seed);
    let n = rng.random_range(cfg.n_min..=cfg.n_max);
    let rank = if cfg.identity_metric { n } else { cfg.rank_policy.draw(&mut rng, n) };
    let a_seed = rng.next_u64();
    let a = if cfg.identity_metric { CMat::identity(n) } else { gen_psd(n, rank, a_seed)? };
    let frame = AFrame::new(&a, DEFAULT_RANK_TOL)?;
    let mut operators = BTreeMap::new();
    operators.insert("T".to_string(), gen_biased(&frame, cfg.bias, rng.next_u64())?);
    for role in ["X", "Y", "P", "Q"] {
        operators.insert(role.to_string(), gen_compatible(&frame, rng.next_u64()));
    }
    let choices: &[f64] = if frame.strictly_positive() { &R_STRICT } else { &R_SINGULAR };
    let r = choices[rng.random_range(0..choices.len())];
    let params = CheckParams { r, sample_seed: seed, ..CheckParams::default() };
    let instance = Instance { dim: n, a, operators, seed, note: format!("trial {i}, rank {}, r {r}", frame.rank()) };
    Ok(Trial { index: i, seed, instance, frame, params })
}

pub fn run_trial(cfg: &FuzzConfig, i: usize) -> Vec<Row> {
    let ids = cfg.check_ids();
    let seed = child_seed(cfg.master_seed, i as u64);
    let results = generate_trial(cfg, i).and_then(|t| {
        let ops = t.instance.operands()?;
        Ok(run_selected(&ids, &t.frame, &ops, &t.params, &cfg.sweep, cfg.tol))
    });
    match results {
        Ok(rs) => rs.iter().map(|r| Row::from_result(i, seed, r)).collect(),
        Err(e) => ids
            .iter()
            .map(|id| {
                let mut r = CheckResult::new(id, 0.0, 0.0, 0.0);
                r.pass = false;
                r.error = Some(e.to_string());
                Row::from_result(i, seed, &r)
            })
            .collect(),
    }
}

fn run(cfg: &FuzzConfig, top: usize) -> Result<Report> {
    cfg.validate()?;
    let rows = (0..cfg.trials).flat_map(|i| run_trial(cfg, i)).collect();
    Ok(Report::assemble(cfg.master_seed, cfg.trials, rows, top))
}

/// Runs `cfg.trials` seeded trials. Per-trial failures are recorded as
/// errored rows.
pub fn fuzz(cfg: &FuzzConfig) -> Result<Report> {
    if cfg.trials == 0 {
        return Err(HarnessError::InvalidConfig("fuzz needs at least one trial".into()));
    }
    run(cfg, 0)
}

/// [`fuzz`] with the `top` smallest relative slacks kept per check.
pub fn scan_sharpness(cfg: &FuzzConfig, top: usize) -> Result<Report> {
    run(cfg, top)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(trials: usize) -> FuzzConfig {
        FuzzConfig { trials, n_max: 4, master_seed: 5, ..FuzzConfig::default() }
    }

    #[test]
    fn child_seeds_differ() {
        let s: std::collections::BTreeSet<u64> = (0..1000).map(|i| child_seed(1, i)).collect();
        assert_eq!(s.len(), 1000);
        assert_ne!(child_seed(1, 0), child_seed(2, 0));
    }

    #[test]
    fn report_shape_and_determinism() {
        let cfg = small(3);
        let a = fuzz(&cfg).unwrap();
        assert_eq!(a.rows.len(), 3 * registry().len());
        assert_eq!(a.violations(), a.rows.iter().filter(|r| !r.pass && !r.skipped).count());
        assert_eq!(a.violations(), 0);
        assert_eq!(a.to_json().unwrap(), fuzz(&cfg).unwrap().to_json().unwrap());
    }

    #[test]
    fn generated_instances_are_valid() {
        let cfg = FuzzConfig { rank_policy: RankPolicy::DegenerateHeavy, ..small(20) };
        for i in 0..cfg.trials {
            let t = generate_trial(&cfg, i).unwrap();
            t.instance.validate().unwrap();
            assert!(t.frame.rank() <= (t.instance.dim / 2).max(1));
            if !t.frame.strictly_positive() {
                assert_eq!(t.params.r.fract(), 0.0);
            }
        }
    }

    #[test]
    fn filter_and_empty_scan() {
        let cfg = FuzzConfig { checks: Some(vec!["cor_kittaneh_A".into()]), identity_metric: true, ..small(4) };
        let r = fuzz(&cfg).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert!(r.rows.iter().all(|r| r.check_id == "cor_kittaneh_A" && !r.skipped));
        let empty = scan_sharpness(&FuzzConfig { trials: 0, ..cfg.clone() }, 5).unwrap();
        assert!(empty.rows.is_empty() && empty.summary.checks.is_empty());
        assert!(fuzz(&FuzzConfig { trials: 0, ..cfg.clone() }).is_err());
        assert!(fuzz(&FuzzConfig { checks: Some(vec!["nope".into()]), ..cfg }).is_err());
    }
}
