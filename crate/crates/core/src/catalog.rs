//! Every inequality as a named check.
//!
//! A check evaluates one or more one-sided comparisons `lhs ≤ rhs` (its
//! sub-results). The reported `lhs`/`rhs` are those of the binding
//! sub-result, the one with the smallest normalized slack
//! `(rhs − lhs)/(1 + |rhs|)`; every sub-result is kept in the metadata as
//! `sub.<name>.lhs` / `sub.<name>.rhs`. Equalities are two opposite
//! sub-results, except the nilpotent equalities of `thm_cubic`, which compare
//! the absolute gap against [`NILPOTENT_EQ_TOL`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::adjoint::{is_a_positive, is_a_selfadjoint, re_a, sharp};
use crate::blocks::BlockOp;
use crate::error::{Error, Result};
use crate::frame::AFrame;
use crate::gauges::{
    a_crawford, a_crawford_c, a_min_modulus, a_numerical_radius, a_positive_power, a_seminorm, spectral_norm,
    sup_over_period, SweepConfig,
};
use crate::matrix::{cis, dot, CMat, C64};

/// Absolute tolerance of the `T² = 0` / `T³ = 0` equalities.
pub const NILPOTENT_EQ_TOL: f64 = 1e-7;

/// Grid size of the sampled sup-over-θ formula.
pub const SUP_THETA_GRID: usize = 64;

/// Hypothesis under which a check is claimed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    /// Any `T ∈ B_A` with `rank A ≥ 1`.
    None,
    /// `A > 0`.
    StrictlyPositive,
    /// `A > 0` and `‖T‖_A ≠ 0`.
    StrictlyPositiveNonzero,
    /// `A > 0` in full; only the `+` form when `A` is singular.
    PlusFormOnSingular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckDef {
    pub id: &'static str,
    /// Operand roles read by the check.
    pub operands: &'static [&'static str],
    pub hypothesis: Hypothesis,
    pub uses_r: bool,
    pub lhs: &'static str,
    pub rhs: &'static str,
}

const fn def(
    id: &'static str,
    operands: &'static [&'static str],
    hypothesis: Hypothesis,
    lhs: &'static str,
    rhs: &'static str,
) -> CheckDef {
    CheckDef { id, operands, hypothesis, uses_r: false, lhs, rhs }
}

use Hypothesis::{None as Any, PlusFormOnSingular, StrictlyPositive as Pos, StrictlyPositiveNonzero};

static REGISTRY: [CheckDef; 19] = [
    def("cor_commutator", &["T", "Q"], Pos, "w(TQ# ± QT)", "2 w(T) ‖Q‖"),
    def("cor_fourth", &["T"], Pos, "1/16 ‖P² + 4 Re(T²)²‖ | w⁴", "w⁴ | ⅛‖P‖² + ½w²(T²)"),
    def("cor_kittaneh_A", &["T"], Pos, "¼‖P‖ | w²", "w² | ½‖P‖"),
    def("cor_prod_improved", &["X", "Y"], Pos, "w(XY)", "2w(X)‖Y‖ − c(Y#X) | 2w(Y)‖X‖ − c(YX#)"),
    def("equiv_half", &["T"], Any, "½‖T‖ | w(T)", "w(T) | ‖T‖"),
    def("lem_pointwise", &["X", "T", "Y"], Pos, "|⟨X#TYx,x⟩| + |⟨Y#TXx,x⟩|", "2w(T)‖Xx‖‖Yx‖"),
    def("lem_positivity_mono", &["X", "Y"], Any, "‖Y‖", "‖X‖"),
    def("lem_selfadj_eq", &["T"], Any, "w(S) | ‖S‖", "‖S‖ | w(S)"),
    def("lem_sup_theta", &["T"], Any, "sup_θ ‖Re(e^{iθ}T)‖ | sup_θ ‖Im(e^{iθ}T)‖", "w(T)"),
    def("thm_antidiag_bounds", &["X", "Y"], Any, "¼ max{‖XX#+Y#Y‖, ‖X#X+YY#‖} | w_B²", "w_B² | ½ max{…}"),
    def("thm_block_lower", &["X", "Y"], Pos, "‖X‖² + c(YX) | m²(X) + w(YX) | …", "2 w_B ‖X‖ | 2 w_B ‖Y‖"),
    def("thm_crawford_prod", &["X", "T", "Y"], Pos, "c(X#TY) + w(Y#TX) | w(X#TY) + c(Y#TX)", "2w(T)‖X‖‖Y‖"),
    def("thm_cubic", &["T"], Pos, "w³", "¼w(T³) + ¼w(T²T# + T#T² + TT#T)"),
    def("thm_fourth_antidiag", &["X", "Y"], Any, "1/16 max{‖P‖, ‖Q‖} | w_B⁴", "w_B⁴ | ⅛ max{…}"),
    def("thm_lower_fourth", &["T"], Pos, "¼C²(T²) + ⅛c(T²P+PT²) + 1/16‖P‖²", "w⁴"),
    CheckDef {
        id: "thm_power_r",
        operands: &["T"],
        hypothesis: Any,
        uses_r: true,
        lhs: "w^{2r}",
        rhs: "½w^r(T²) + ¼‖(T#T)^r + (TT#)^r‖",
    },
    def("thm_prod_pm", &["P", "Q", "X", "Y"], PlusFormOnSingular, "w(PXQ# ± QYP#)", "2‖P‖‖Q‖ w_B(antidiag(X,Y))"),
    def("thm_refined_fourth", &["T"], Pos, "w⁴", "¼w²(T²) + ⅛w(T²P+PT²) + 1/16‖P‖²"),
    def("thm_wa_lower", &["T"], StrictlyPositiveNonzero, "‖T‖/2 + c(T²)/(2‖T‖) | (m² + w(T²))/(2‖T‖)", "w(T)"),
];

/// The registry, sorted by id.
pub fn registry() -> &'static [CheckDef] {
    &REGISTRY
}

pub fn find(id: &str) -> Option<&'static CheckDef> {
    REGISTRY.iter().find(|d| d.id == id)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckParams {
    /// Exponent of `thm_power_r`.
    pub r: f64,
    /// Extra angle probed by `lem_sup_theta`.
    pub theta: Option<f64>,
    /// Seed of the vectors sampled by `lem_pointwise`.
    pub sample_seed: u64,
    pub pointwise_samples: usize,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams { r: 1.0, theta: None, sample_seed: 0, pointwise_samples: 50 }
    }
}

/// Operands by role. `X` and `Y` default to `T`; `P` and `Q` to `I`.
#[derive(Clone, Debug, PartialEq)]
pub struct Operands {
    pub t: CMat,
    pub x: Option<CMat>,
    pub y: Option<CMat>,
    pub p: Option<CMat>,
    pub q: Option<CMat>,
}

impl Operands {
    pub fn new(t: CMat) -> Self {
        Operands { t, x: None, y: None, p: None, q: None }
    }

    pub fn with(mut self, role: &str, m: CMat) -> Result<Self> {
        match role {
            "T" => self.t = m,
            "X" => self.x = Some(m),
            "Y" => self.y = Some(m),
            "P" => self.p = Some(m),
            "Q" => self.q = Some(m),
            _ => return Err(Error::InvalidConfig("operand role must be one of T, X, Y, P, Q")),
        }
        Ok(self)
    }

    pub fn x(&self) -> &CMat {
        self.x.as_ref().unwrap_or(&self.t)
    }

    pub fn y(&self) -> &CMat {
        self.y.as_ref().unwrap_or(&self.t)
    }

    fn p_or_identity(&self) -> CMat {
        self.p.clone().unwrap_or_else(|| CMat::identity(self.t.rows()))
    }

    fn q_or_identity(&self) -> CMat {
        self.q.clone().unwrap_or_else(|| CMat::identity(self.t.rows()))
    }

    fn iter(&self) -> impl Iterator<Item = &CMat> {
        [Some(&self.t), self.x.as_ref(), self.y.as_ref(), self.p.as_ref(), self.q.as_ref()].into_iter().flatten()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub check_id: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
    pub hypothesis_met: bool,
    pub metadata: BTreeMap<String, f64>,
    pub skip_reason: Option<String>,
    pub error: Option<String>,
}

/// `rhs − lhs ≥ −tol·(1 + |rhs|)`.
pub fn passes(lhs: f64, rhs: f64, tol: f64) -> bool {
    rhs - lhs >= -tol * (1.0 + libm::fabs(rhs))
}

impl CheckResult {
    pub fn new(check_id: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        CheckResult {
            check_id: check_id.to_string(),
            lhs,
            rhs,
            slack: rhs - lhs,
            pass: passes(lhs, rhs, tol),
            hypothesis_met: true,
            metadata: BTreeMap::new(),
            skip_reason: None,
            error: None,
        }
    }

    pub fn skipped(check_id: &str, reason: &str) -> Self {
        CheckResult {
            hypothesis_met: false,
            skip_reason: Some(reason.to_string()),
            ..CheckResult::new(check_id, 0.0, 0.0, 0.0)
        }
    }

    pub fn errored(check_id: &str, err: &Error) -> Self {
        CheckResult { pass: false, error: Some(err.to_string()), ..CheckResult::new(check_id, 0.0, 0.0, 0.0) }
    }

    pub fn is_skipped(&self) -> bool {
        !self.hypothesis_met
    }

    pub fn is_violation(&self) -> bool {
        self.hypothesis_met && !self.pass
    }

    /// `slack / (1 + |rhs|)`.
    pub fn normalized_slack(&self) -> f64 {
        self.slack / (1.0 + libm::fabs(self.rhs))
    }

    /// A sub-result recorded in the metadata.
    pub fn sub(&self, name: &str) -> Option<(f64, f64)> {
        let l = self.metadata.get(&format!("sub.{name}.lhs"))?;
        let r = self.metadata.get(&format!("sub.{name}.rhs"))?;
        Some((*l, *r))
    }
}

/// Gauges already computed for the current operands, shared across checks.
pub type GaugeMemo = BTreeMap<String, f64>;

struct Eval<'a> {
    f: &'a AFrame,
    cfg: &'a SweepConfig,
    memo: &'a mut GaugeMemo,
    meta: BTreeMap<String, f64>,
    subs: Vec<(&'static str, f64, f64)>,
    doubled: Option<AFrame>,
}

#[derive(Clone, Copy)]
enum G {
    W,
    Crawford,
    BigC,
    Norm,
    MinMod,
}

impl<'a> Eval<'a> {
    fn new(f: &'a AFrame, cfg: &'a SweepConfig, memo: &'a mut GaugeMemo) -> Self {
        Eval { f, cfg, memo, meta: BTreeMap::new(), subs: Vec::new(), doubled: None }
    }

    fn gauge(&mut self, g: G, label: &str, m: impl FnOnce() -> Result<CMat>) -> Result<f64> {
        let prefix = match g {
            G::W => "w",
            G::Crawford => "c",
            G::BigC => "C",
            G::Norm => "norm",
            G::MinMod => "m",
        };
        let key = format!("{prefix}({label})");
        let v = match self.memo.get(&key) {
            Some(v) => *v,
            None => {
                let m = m()?;
                let v = match g {
                    G::W => a_numerical_radius(self.f, &m, self.cfg)?,
                    G::Crawford => a_crawford(self.f, &m, self.cfg)?,
                    G::BigC => a_crawford_c(self.f, &m, self.cfg)?,
                    G::Norm => a_seminorm(self.f, &m)?,
                    G::MinMod => a_min_modulus(self.f, &m)?,
                };
                self.memo.insert(key.clone(), v);
                v
            }
        };
        self.meta.insert(key, v);
        Ok(v)
    }

    fn w(&mut self, label: &str, m: impl FnOnce() -> Result<CMat>) -> Result<f64> {
        self.gauge(G::W, label, m)
    }

    fn c(&mut self, label: &str, m: impl FnOnce() -> Result<CMat>) -> Result<f64> {
        self.gauge(G::Crawford, label, m)
    }

    fn norm(&mut self, label: &str, m: impl FnOnce() -> Result<CMat>) -> Result<f64> {
        self.gauge(G::Norm, label, m)
    }

    /// `w_B([[O, X], [Y, O]])` on the doubled frame.
    fn w_antidiag(&mut self, label: &str, x: &CMat, y: &CMat) -> Result<f64> {
        let key = format!("w_B(antidiag({label}))");
        let v = match self.memo.get(&key) {
            Some(v) => *v,
            None => {
                let b = self.doubled.get_or_insert_with(|| self.f.direct_sum());
                let v = a_numerical_radius(b, BlockOp::antidiag(x, y)?.assembled(), self.cfg)?;
                self.memo.insert(key.clone(), v);
                v
            }
        };
        self.meta.insert(key, v);
        Ok(v)
    }

    fn note(&mut self, key: &str, v: f64) {
        self.meta.insert(key.to_string(), v);
    }

    fn le(&mut self, name: &'static str, lhs: f64, rhs: f64) {
        self.subs.push((name, lhs, rhs));
    }

    /// `|a − b| ≤ NILPOTENT_EQ_TOL`.
    fn abs_eq(&mut self, name: &'static str, a: f64, b: f64) {
        self.subs.push((name, libm::fabs(a - b), NILPOTENT_EQ_TOL));
    }

    fn finish(self, id: &str, tol: f64) -> CheckResult {
        let mut meta = self.meta;
        let mut binding: Option<(f64, f64, f64)> = None;
        for (name, l, r) in &self.subs {
            meta.insert(format!("sub.{name}.lhs"), *l);
            meta.insert(format!("sub.{name}.rhs"), *r);
            let ns = (r - l) / (1.0 + libm::fabs(*r));
            if binding.map_or(true, |(b, _, _)| ns < b || ns.is_nan()) {
                binding = Some((ns, *l, *r));
            }
        }
        let (_, lhs, rhs) = binding.expect("every check records a sub-result");
        let mut res = CheckResult::new(id, lhs, rhs, tol);
        res.metadata = meta;
        res
    }
}

fn mul(a: &CMat, b: &CMat) -> CMat {
    a * b
}

/// `K = T♯T + TT♯`.
fn kittaneh_p(t: &CMat, ts: &CMat) -> CMat {
    &mul(ts, t) + &mul(t, ts)
}

fn check_equiv_half(e: &mut Eval, t: &CMat) -> Result<()> {
    let w = e.w("T", || Ok(t.clone()))?;
    let n = e.norm("T", || Ok(t.clone()))?;
    e.le("lower", 0.5 * n, w);
    e.le("upper", w, n);
    Ok(())
}

fn check_lem_selfadj_eq(e: &mut Eval, t: &CMat) -> Result<()> {
    let selfadj = is_a_selfadjoint(e.f, t)?;
    e.note("used_real_part", if selfadj { 0.0 } else { 1.0 });
    let (label, s) = if selfadj { ("T", t.clone()) } else { ("Re_A(T)", re_a(e.f, t)?) };
    let w = e.w(label, || Ok(s.clone()))?;
    let n = e.norm(label, || Ok(s.clone()))?;
    e.le("w_le_norm", w, n);
    e.le("norm_le_w", n, w);
    Ok(())
}

fn check_lem_sup_theta(e: &mut Eval, t: &CMat, theta: Option<f64>) -> Result<()> {
    let w = e.w("T", || Ok(t.clone()))?;
    let ts = sharp(e.f, t)?;
    let f = e.f;
    let half = |theta: f64, imaginary: bool| -> CMat {
        let u = cis(theta);
        let a = t.scale(u);
        let b = ts.scale(u.conj());
        if imaginary {
            (&a - &b).scale(C64::new(0.0, -0.5))
        } else {
            (&a + &b).scale_real(0.5)
        }
    };
    let lip = e.norm("T", || Ok(t.clone()))?;
    let (re_grid, re_refined) =
        sup_over_period(SUP_THETA_GRID, TAU, lip, e.cfg, |th| a_seminorm(f, &half(th, false)))?;
    let (im_grid, im_refined) =
        sup_over_period(SUP_THETA_GRID, TAU, lip, e.cfg, |th| a_seminorm(f, &half(th, true)))?;
    e.note("sup_re_grid", re_grid);
    e.note("sup_im_grid", im_grid);
    e.note("sup_re_refined", re_refined);
    e.note("sup_im_refined", im_refined);
    e.note("refined_gap", libm::fabs(w - re_refined).max(libm::fabs(w - im_refined)));
    e.le("re_grid", re_grid, w);
    e.le("im_grid", im_grid, w);
    if let Some(th) = theta {
        let v = a_seminorm(f, &half(th, false))?;
        e.note("re_at_theta", v);
        e.le("re_at_theta", v, w);
    }
    Ok(())
}

fn check_lem_positivity_mono(e: &mut Eval, x: &CMat, y: &CMat) -> Result<()> {
    let f = e.f;
    let direct = is_a_positive(f, x)? && is_a_positive(f, y)? && is_a_positive(f, &(x - y))?;
    e.note("direct", if direct { 1.0 } else { 0.0 });
    let (big, small) = if direct {
        (x.clone(), y.clone())
    } else {
        // Y' = Y♯Y and X' = Y' + X♯X are A-positive with A-positive difference.
        let small = mul(&sharp(f, y)?, y);
        (&small + &mul(&sharp(f, x)?, x), small)
    };
    let nx = e.norm("X'", || Ok(big))?;
    let ny = e.norm("Y'", || Ok(small))?;
    e.le("mono", ny, nx);
    Ok(())
}

fn check_thm_antidiag_bounds(e: &mut Eval, x: &CMat, y: &CMat) -> Result<()> {
    let (xs, ys) = (sharp(e.f, x)?, sharp(e.f, y)?);
    let wb = e.w_antidiag("X,Y", x, y)?;
    let n1 = e.norm("XX#+Y#Y", || Ok(&mul(x, &xs) + &mul(&ys, y)))?;
    let n2 = e.norm("X#X+YY#", || Ok(&mul(&xs, x) + &mul(y, &ys)))?;
    let m = n1.max(n2);
    e.le("lower", 0.25 * m, wb * wb);
    e.le("upper", wb * wb, 0.5 * m);
    Ok(())
}

fn check_cor_kittaneh(e: &mut Eval, t: &CMat) -> Result<()> {
    let ts = sharp(e.f, t)?;
    let w = e.w("T", || Ok(t.clone()))?;
    let np = e.norm("K", || Ok(kittaneh_p(t, &ts)))?;
    e.le("lower", 0.25 * np, w * w);
    e.le("upper", w * w, 0.5 * np);
    Ok(())
}

fn check_thm_fourth_antidiag(e: &mut Eval, x: &CMat, y: &CMat) -> Result<()> {
    let f = e.f;
    let (xs, ys) = (sharp(f, x)?, sharp(f, y)?);
    let s1 = &mul(x, &xs) + &mul(&ys, y);
    let s2 = &mul(&xs, x) + &mul(y, &ys);
    let xy = mul(x, y);
    let yx = mul(y, x);
    let wb = e.w_antidiag("X,Y", x, y)?;
    let np = e.norm("(XX#+Y#Y)^2+4Re(XY)^2", || {
        let r = re_a(f, &xy)?;
        Ok(&mul(&s1, &s1) + &mul(&r, &r).scale_real(4.0))
    })?;
    let nq = e.norm("(X#X+YY#)^2+4Re(YX)^2", || {
        let r = re_a(f, &yx)?;
        Ok(&mul(&s2, &s2) + &mul(&r, &r).scale_real(4.0))
    })?;
    let n1 = e.norm("XX#+Y#Y", || Ok(s1.clone()))?;
    let n2 = e.norm("X#X+YY#", || Ok(s2.clone()))?;
    let wxy = e.w("XY", || Ok(xy.clone()))?;
    let wyx = e.w("YX", || Ok(yx.clone()))?;
    let wb4 = wb * wb * wb * wb;
    e.le("lower", np.max(nq) / 16.0, wb4);
    e.le("upper", wb4, 0.125 * (n1 * n1 + 4.0 * wxy * wxy).max(n2 * n2 + 4.0 * wyx * wyx));
    Ok(())
}

fn check_cor_fourth(e: &mut Eval, t: &CMat) -> Result<()> {
    let f = e.f;
    let ts = sharp(f, t)?;
    let p = kittaneh_p(t, &ts);
    let t2 = mul(t, t);
    let w = e.w("T", || Ok(t.clone()))?;
    let np = e.norm("K", || Ok(p.clone()))?;
    let w2 = e.w("T^2", || Ok(t2.clone()))?;
    let nl = e.norm("K^2+4Re(T^2)^2", || {
        let r = re_a(f, &t2)?;
        Ok(&mul(&p, &p) + &mul(&r, &r).scale_real(4.0))
    })?;
    let w4 = w * w * w * w;
    e.le("lower", nl / 16.0, w4);
    e.le("upper", w4, 0.125 * np * np + 0.5 * w2 * w2);
    Ok(())
}

fn check_thm_refined_fourth(e: &mut Eval, t: &CMat) -> Result<()> {
    let ts = sharp(e.f, t)?;
    let p = kittaneh_p(t, &ts);
    let t2 = mul(t, t);
    let w = e.w("T", || Ok(t.clone()))?;
    let np = e.norm("K", || Ok(p.clone()))?;
    let w2 = e.w("T^2", || Ok(t2.clone()))?;
    let wm = e.w("T^2K+KT^2", || Ok(&mul(&t2, &p) + &mul(&p, &t2)))?;
    let rhs = 0.25 * w2 * w2 + 0.125 * wm + np * np / 16.0;
    let zamani = (np + 2.0 * w2) * (np + 2.0 * w2) / 16.0;
    e.note("zamani_rhs", zamani);
    e.le("upper", w * w * w * w, rhs);
    Ok(())
}

fn check_thm_cubic(e: &mut Eval, t: &CMat) -> Result<()> {
    let ts = sharp(e.f, t)?;
    let t2 = mul(t, t);
    let t3 = mul(&t2, t);
    let k = &(&mul(&t2, &ts) + &mul(&ts, &t2)) + &mul(&mul(t, &ts), t);
    let w = e.w("T", || Ok(t.clone()))?;
    let nt = e.norm("T", || Ok(t.clone()))?;
    let w3 = e.w("T^3", || Ok(t3.clone()))?;
    let wk = e.w("T^2T#+T#T^2+TT#T", || Ok(k.clone()))?;
    let np = e.norm("K", || Ok(kittaneh_p(t, &ts)))?;
    let n2 = e.norm("T^2", || Ok(t2.clone()))?;
    let n3 = e.norm("T^3", || Ok(t3.clone()))?;
    e.le("upper", w * w * w, 0.25 * w3 + 0.25 * wk);

    let scale = 1.0 + nt * nt * nt;
    let t2_zero = n2 <= 1e-10 * (1.0 + nt * nt);
    let t3_zero = n3 <= 1e-10 * scale;
    let half_sqrt_p = 0.5 * libm::sqrt(np);
    let kitt_eq = libm::fabs(w - half_sqrt_p) <= 1e-9 * (1.0 + w);
    e.note("half_sqrt_norm_P", half_sqrt_p);
    e.note("t2_zero", t2_zero as u8 as f64);
    e.note("t3_zero", t3_zero as u8 as f64);
    e.note("equality_without_nilpotency", (kitt_eq && !t2_zero) as u8 as f64);
    if t2_zero {
        e.abs_eq("eq_t2_zero", w, half_sqrt_p);
    }
    if t3_zero {
        e.abs_eq("eq_t3_zero", w * w * w, 0.25 * wk);
    }
    Ok(())
}

fn check_thm_power_r(e: &mut Eval, t: &CMat, r: f64) -> Result<()> {
    let f = e.f;
    let ts = sharp(f, t)?;
    let w = e.w("T", || Ok(t.clone()))?;
    let w2 = e.w("T^2", || Ok(mul(t, t)))?;
    let a = a_positive_power(f, &mul(&ts, t), r)?;
    let b = a_positive_power(f, &mul(t, &ts), r)?;
    let n = spectral_norm(&(&a.mat + &b.mat))?;
    e.note("r", r);
    e.note("norm((T#T)^r+(TT#)^r)", n);
    e.le("upper", libm::pow(w, 2.0 * r), 0.5 * libm::pow(w2, r) + 0.25 * n);
    Ok(())
}

fn check_thm_lower_fourth(e: &mut Eval, t: &CMat) -> Result<()> {
    let ts = sharp(e.f, t)?;
    let p = kittaneh_p(t, &ts);
    let t2 = mul(t, t);
    let w = e.w("T", || Ok(t.clone()))?;
    let nt = e.norm("T", || Ok(t.clone()))?;
    let np = e.norm("K", || Ok(p.clone()))?;
    let big_c = e.gauge(G::BigC, "T^2", || Ok(t2.clone()))?;
    let cm = e.c("T^2K+KT^2", || Ok(&mul(&t2, &p) + &mul(&p, &t2)))?;
    let lhs = 0.25 * big_c * big_c + 0.125 * cm + np * np / 16.0;
    e.note("kittaneh_fourth", np * np / 16.0);
    e.note("norm_fourth", nt * nt * nt * nt / 16.0);
    e.le("lower", lhs, w * w * w * w);
    Ok(())
}

fn check_thm_prod_pm(e: &mut Eval, ops: &Operands, full: bool) -> Result<()> {
    let f = e.f;
    let (x, y) = (ops.x(), ops.y());
    let (p, q) = (ops.p_or_identity(), ops.q_or_identity());
    let (ps, qs) = (sharp(f, &p)?, sharp(f, &q)?);
    let np = e.norm("P", || Ok(p.clone()))?;
    let nq = e.norm("Q", || Ok(q.clone()))?;
    let wb = e.w_antidiag("X,Y", x, y)?;
    let bound = 2.0 * np * nq * wb;
    let a = mul(&mul(&p, x), &qs);
    let b = mul(&mul(&q, y), &ps);
    let plus = e.w("PXQ#+QYP#", || Ok(&a + &b))?;
    e.le("plus", plus, bound);
    e.note("plus_only", (!full) as u8 as f64);
    if full {
        let minus = e.w("PXQ#-QYP#", || Ok(&a - &b))?;
        e.le("minus", minus, bound);
        let wx = e.w("X", || Ok(x.clone()))?;
        let c = mul(&mul(&q, x), &ps);
        let pplus = e.w("PXQ#+QXP#", || Ok(&a + &c))?;
        let pminus = e.w("PXQ#-QXP#", || Ok(&a - &c))?;
        e.le("particular_plus", pplus, 2.0 * np * nq * wx);
        e.le("particular_minus", pminus, 2.0 * np * nq * wx);
    }
    Ok(())
}

fn check_cor_commutator(e: &mut Eval, t: &CMat, q: &CMat) -> Result<()> {
    let qs = sharp(e.f, q)?;
    let a = mul(t, &qs);
    let b = mul(q, t);
    let w = e.w("T", || Ok(t.clone()))?;
    let nq = e.norm("Q", || Ok(q.clone()))?;
    let plus = e.w("TQ#+QT", || Ok(&a + &b))?;
    let minus = e.w("TQ#-QT", || Ok(&a - &b))?;
    e.le("plus", plus, 2.0 * w * nq);
    e.le("minus", minus, 2.0 * w * nq);
    Ok(())
}

fn check_lem_pointwise(e: &mut Eval, ops: &Operands, params: &CheckParams) -> Result<()> {
    let f = e.f;
    let (x, t, y) = (ops.x(), &ops.t, ops.y());
    let (xs, ys) = (sharp(f, x)?, sharp(f, y)?);
    let l1 = mul(&mul(&xs, t), y);
    let l2 = mul(&mul(&ys, t), x);
    let w = e.w("T", || Ok(t.clone()))?;
    let a = f.a();
    let ip = |u: &[C64], v: &[C64]| dot(&a.mul_vec(u), v);
    let n = f.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(params.sample_seed);
    let mut worst: Option<(f64, f64, f64)> = None;
    for _ in 0..params.pointwise_samples {
        let v: Vec<C64> = (0..n)
            .map(|_| C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal)))
            .collect();
        let scale = ip(&v, &v).re;
        if !(scale > 0.0) {
            continue;
        }
        let lhs = (ip(&l1.mul_vec(&v), &v).norm() + ip(&l2.mul_vec(&v), &v).norm()) / scale;
        let xv = x.mul_vec(&v);
        let yv = y.mul_vec(&v);
        let rhs = 2.0 * w * libm::sqrt(ip(&xv, &xv).re.max(0.0) * ip(&yv, &yv).re.max(0.0)) / scale;
        let ns = (rhs - lhs) / (1.0 + libm::fabs(rhs));
        if worst.map_or(true, |(b, _, _)| ns < b) {
            worst = Some((ns, lhs, rhs));
        }
    }
    e.note("samples", params.pointwise_samples as f64);
    let (_, lhs, rhs) = worst.unwrap_or((0.0, 0.0, 0.0));
    e.le("worst_sample", lhs, rhs);
    Ok(())
}

fn check_thm_crawford_prod(e: &mut Eval, ops: &Operands) -> Result<()> {
    let f = e.f;
    let (x, t, y) = (ops.x(), &ops.t, ops.y());
    let (xs, ys) = (sharp(f, x)?, sharp(f, y)?);
    let l1 = mul(&mul(&xs, t), y);
    let l2 = mul(&mul(&ys, t), x);
    let w = e.w("T", || Ok(t.clone()))?;
    let nx = e.norm("X", || Ok(x.clone()))?;
    let ny = e.norm("Y", || Ok(y.clone()))?;
    let c1 = e.c("X#TY", || Ok(l1.clone()))?;
    let w1 = e.w("X#TY", || Ok(l1.clone()))?;
    let c2 = e.c("Y#TX", || Ok(l2.clone()))?;
    let w2 = e.w("Y#TX", || Ok(l2.clone()))?;
    let bound = 2.0 * w * nx * ny;
    e.le("first", c1 + w2, bound);
    e.le("mirrored", w1 + c2, bound);
    Ok(())
}

fn check_cor_prod_improved(e: &mut Eval, x: &CMat, y: &CMat) -> Result<()> {
    let f = e.f;
    let (xs, ys) = (sharp(f, x)?, sharp(f, y)?);
    let wxy = e.w("XY", || Ok(mul(x, y)))?;
    let wx = e.w("X", || Ok(x.clone()))?;
    let wy = e.w("Y", || Ok(y.clone()))?;
    let nx = e.norm("X", || Ok(x.clone()))?;
    let ny = e.norm("Y", || Ok(y.clone()))?;
    let c1 = e.c("Y#X", || Ok(mul(&ys, x)))?;
    let c2 = e.c("YX#", || Ok(mul(y, &xs)))?;
    e.note("classical_rhs_1", 2.0 * wx * ny);
    e.note("classical_rhs_2", 2.0 * wy * nx);
    e.le("first", wxy, 2.0 * wx * ny - c1);
    e.le("second", wxy, 2.0 * wy * nx - c2);
    Ok(())
}

fn check_thm_block_lower(e: &mut Eval, x: &CMat, y: &CMat) -> Result<()> {
    let wb = e.w_antidiag("X,Y", x, y)?;
    let nx = e.norm("X", || Ok(x.clone()))?;
    let ny = e.norm("Y", || Ok(y.clone()))?;
    let mx = e.gauge(G::MinMod, "X", || Ok(x.clone()))?;
    let my = e.gauge(G::MinMod, "Y", || Ok(y.clone()))?;
    let yx = mul(y, x);
    let xy = mul(x, y);
    let cyx = e.c("YX", || Ok(yx.clone()))?;
    let wyx = e.w("YX", || Ok(yx.clone()))?;
    let cxy = e.c("XY", || Ok(xy.clone()))?;
    let wxy = e.w("XY", || Ok(xy.clone()))?;
    e.le("i", nx * nx + cyx, 2.0 * wb * nx);
    e.le("ii", mx * mx + wyx, 2.0 * wb * nx);
    e.le("iii", ny * ny + cxy, 2.0 * wb * ny);
    e.le("iv", my * my + wxy, 2.0 * wb * ny);
    Ok(())
}

fn check_thm_wa_lower(e: &mut Eval, t: &CMat, nt: f64) -> Result<()> {
    let t2 = mul(t, t);
    let w = e.w("T", || Ok(t.clone()))?;
    let m = e.gauge(G::MinMod, "T", || Ok(t.clone()))?;
    let c2 = e.c("T^2", || Ok(t2.clone()))?;
    let w2 = e.w("T^2", || Ok(t2.clone()))?;
    let first = nt / 2.0 + c2 / (2.0 * nt);
    let second = (m * m + w2) / (2.0 * nt);
    e.note("combined_lhs", first.max(second));
    e.le("first", first, w);
    e.le("second", second, w);
    e.le("combined", first.max(second), w);
    Ok(())
}

fn hypothesis_skip(def: &CheckDef, f: &AFrame) -> Option<&'static str> {
    if f.rank() == 0 {
        return Some("A = 0");
    }
    match def.hypothesis {
        Hypothesis::StrictlyPositive | Hypothesis::StrictlyPositiveNonzero if !f.strictly_positive() => {
            Some("requires A > 0")
        }
        _ => None,
    }
}

/// Runs one check. `memo` caches gauges across checks on the same operands.
pub fn run_check_with_memo(
    check_id: &str,
    f: &AFrame,
    ops: &Operands,
    params: &CheckParams,
    cfg: &SweepConfig,
    tol: f64,
    memo: &mut GaugeMemo,
) -> Result<CheckResult> {
    let def = find(check_id).ok_or_else(|| Error::UnknownCheckId(check_id.to_string()))?;
    cfg.validate()?;
    for m in ops.iter() {
        m.ensure_shape(f.dim(), f.dim())?;
    }
    if let Some(reason) = hypothesis_skip(def, f) {
        return Ok(CheckResult::skipped(def.id, reason));
    }
    let mut e = Eval::new(f, cfg, memo);
    let t = &ops.t;
    match def.id {
        "cor_commutator" => check_cor_commutator(&mut e, t, &ops.q_or_identity())?,
        "cor_fourth" => check_cor_fourth(&mut e, t)?,
        "cor_kittaneh_A" => check_cor_kittaneh(&mut e, t)?,
        "cor_prod_improved" => check_cor_prod_improved(&mut e, ops.x(), ops.y())?,
        "equiv_half" => check_equiv_half(&mut e, t)?,
        "lem_pointwise" => check_lem_pointwise(&mut e, ops, params)?,
        "lem_positivity_mono" => check_lem_positivity_mono(&mut e, ops.x(), ops.y())?,
        "lem_selfadj_eq" => check_lem_selfadj_eq(&mut e, t)?,
        "lem_sup_theta" => check_lem_sup_theta(&mut e, t, params.theta)?,
        "thm_antidiag_bounds" => check_thm_antidiag_bounds(&mut e, ops.x(), ops.y())?,
        "thm_block_lower" => check_thm_block_lower(&mut e, ops.x(), ops.y())?,
        "thm_crawford_prod" => check_thm_crawford_prod(&mut e, ops)?,
        "thm_cubic" => check_thm_cubic(&mut e, t)?,
        "thm_fourth_antidiag" => check_thm_fourth_antidiag(&mut e, ops.x(), ops.y())?,
        "thm_lower_fourth" => check_thm_lower_fourth(&mut e, t)?,
        "thm_power_r" => check_thm_power_r(&mut e, t, params.r)?,
        "thm_prod_pm" => check_thm_prod_pm(&mut e, ops, f.strictly_positive())?,
        "thm_refined_fourth" => check_thm_refined_fourth(&mut e, t)?,
        "thm_wa_lower" => {
            let nt = e.norm("T", || Ok(t.clone()))?;
            if nt <= 1e-13 * (1.0 + t.frobenius_norm()) {
                return Ok(CheckResult::skipped(def.id, "requires ‖T‖_A ≠ 0"));
            }
            check_thm_wa_lower(&mut e, t, nt)?
        }
        _ => unreachable!("registry and dispatch agree"),
    }
    Ok(e.finish(def.id, tol))
}

pub fn run_check(
    check_id: &str,
    f: &AFrame,
    ops: &Operands,
    params: &CheckParams,
    cfg: &SweepConfig,
    tol: f64,
) -> Result<CheckResult> {
    run_check_with_memo(check_id, f, ops, params, cfg, tol, &mut GaugeMemo::new())
}

/// Every registry check in id order. Errors become failed results, except
/// [`Error::UnsupportedExponent`], which is reported as skipped.
pub fn run_all(f: &AFrame, ops: &Operands, params: &CheckParams, cfg: &SweepConfig, tol: f64) -> Vec<CheckResult> {
    let ids: Vec<&str> = REGISTRY.iter().map(|d| d.id).collect();
    run_selected(&ids, f, ops, params, cfg, tol)
}

/// [`run_all`] restricted to `ids`, in the given order.
pub fn run_selected(
    ids: &[&str],
    f: &AFrame,
    ops: &Operands,
    params: &CheckParams,
    cfg: &SweepConfig,
    tol: f64,
) -> Vec<CheckResult> {
    let mut memo = GaugeMemo::new();
    ids.iter()
        .map(|&id| match run_check_with_memo(id, f, ops, params, cfg, tol, &mut memo) {
            Ok(r) => r,
            Err(err @ Error::UnsupportedExponent { .. }) => {
                let mut r = CheckResult::skipped(id, "unsupported exponent");
                r.error = Some(err.to_string());
                r
            }
            Err(err) => CheckResult::errored(id, &err),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{DEFAULT_CHECK_TOL, DEFAULT_RANK_TOL};
    use approx::assert_abs_diff_eq;

    fn run(id: &str, f: &AFrame, t: &CMat) -> CheckResult {
        run_check(id, f, &Operands::new(t.clone()), &CheckParams::default(), &SweepConfig::default(), DEFAULT_CHECK_TOL)
            .unwrap()
    }

    fn remark_t() -> CMat {
        CMat::from_real_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 2.0], [0.0, 0.0, 0.0]]).unwrap()
    }

    #[test]
    fn shared_memo_matches_isolated_runs() {
        let f = AFrame::new(&CMat::diag_real(&[3.0, 1.0, 0.5]), DEFAULT_RANK_TOL).unwrap();
        let ops = Operands::new(remark_t())
            .with("P", CMat::diag_real(&[4.0, -1.0, 2.0]))
            .unwrap()
            .with("Q", CMat::from_real_rows(&[[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [3.0, 0.0, 1.0]]).unwrap())
            .unwrap()
            .with("X", CMat::diag_real(&[1.0, 2.0, 3.0]))
            .unwrap();
        let (params, cfg) = (CheckParams::default(), SweepConfig::default());
        for r in run_all(&f, &ops, &params, &cfg, DEFAULT_CHECK_TOL) {
            let alone = run_check(&r.check_id, &f, &ops, &params, &cfg, DEFAULT_CHECK_TOL).unwrap();
            assert_eq!((r.lhs, r.rhs), (alone.lhs, alone.rhs), "{}", r.check_id);
        }
    }

    #[test]
    fn registry_is_sorted_and_unique() {
        let ids: Vec<_> = registry().iter().map(|d| d.id).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(ids, sorted);
        assert_eq!(ids.len(), 19);
    }

    #[test]
    fn unknown_id() {
        let f = AFrame::identity(2);
        let r = run_check("nope", &f, &Operands::new(CMat::identity(2)), &CheckParams::default(), &SweepConfig::default(), 1e-8);
        assert_eq!(r, Err(Error::UnknownCheckId("nope".into())));
    }

    #[test]
    fn refined_fourth_remark_example() {
        let r = run("thm_refined_fourth", &AFrame::identity(3), &remark_t());
        assert_abs_diff_eq!(r.rhs, 39.0 / 16.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.metadata["w(T^2)"], 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.metadata["w(T^2K+KT^2)"], 5.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.metadata["norm(K)"], 5.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.metadata["zamani_rhs"], 49.0 / 16.0, epsilon = 1e-9);
        assert!(r.pass);
    }

    #[test]
    fn cubic_equality_without_nilpotency() {
        let t = CMat::from_real_rows(&[[0.0, 2.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        let r = run("thm_cubic", &AFrame::identity(3), &t);
        assert_abs_diff_eq!(r.metadata["w(T)"], 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.metadata["half_sqrt_norm_P"], 1.0, epsilon = 1e-9);
        assert_eq!(r.metadata["t2_zero"], 0.0);
        assert_eq!(r.metadata["equality_without_nilpotency"], 1.0);
    }

    #[test]
    fn kittaneh_weighted_example() {
        let f = AFrame::new(&CMat::diag_real(&[4.0, 1.0]), DEFAULT_RANK_TOL).unwrap();
        let t = CMat::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        let r = run("cor_kittaneh_A", &f, &t);
        assert!(r.pass);
        assert_eq!(r.sub("lower").map(|(l, _)| (l * 1e9).round()), Some(1e9));
        let (l, rr) = r.sub("upper").unwrap();
        assert_abs_diff_eq!(l, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(rr, 2.0, epsilon = 1e-10);
    }

    #[test]
    fn zero_operator() {
        let res = run_all(&AFrame::identity(3), &Operands::new(CMat::zeros(3, 3)), &CheckParams::default(), &SweepConfig::default(), 1e-8);
        for r in &res {
            assert!(r.error.is_none(), "{}: {:?}", r.check_id, r.error);
            if r.check_id == "thm_wa_lower" {
                assert!(r.is_skipped());
            } else {
                assert!(r.pass && r.hypothesis_met, "{}", r.check_id);
                assert_eq!((r.lhs, r.rhs), (0.0, 0.0), "{}", r.check_id);
            }
        }
    }

    #[test]
    fn singular_metric_gating() {
        let f = AFrame::new(&CMat::diag_real(&[0.0, 1.0, 2.0]), DEFAULT_RANK_TOL).unwrap();
        let t = CMat::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 1.0, 2.0], [0.0, -1.0, 0.5]]).unwrap();
        let res = run_all(&f, &Operands::new(t), &CheckParams::default(), &SweepConfig::default(), 1e-8);
        assert_eq!(res.len(), 19);
        for r in &res {
            let d = find(&r.check_id).unwrap();
            let strict = matches!(d.hypothesis, Hypothesis::StrictlyPositive | Hypothesis::StrictlyPositiveNonzero);
            assert_eq!(r.is_skipped(), strict, "{}", r.check_id);
            assert!(!r.is_violation(), "{}: {:?}", r.check_id, r);
        }
        let prod = res.iter().find(|r| r.check_id == "thm_prod_pm").unwrap();
        assert_eq!(prod.metadata["plus_only"], 1.0);
    }

    #[test]
    fn non_integer_r_on_singular_metric() {
        let f = AFrame::new(&CMat::diag_real(&[0.0, 1.0]), DEFAULT_RANK_TOL).unwrap();
        let ops = Operands::new(CMat::diag_real(&[1.0, 2.0]));
        let params = CheckParams { r: 1.5, ..CheckParams::default() };
        let cfg = SweepConfig::default();
        assert!(matches!(run_check("thm_power_r", &f, &ops, &params, &cfg, 1e-8), Err(Error::UnsupportedExponent { .. })));
        let all = run_all(&f, &ops, &params, &cfg, 1e-8);
        let r = all.iter().find(|r| r.check_id == "thm_power_r").unwrap();
        assert!(r.is_skipped() && r.error.is_some());
    }

    #[test]
    fn missing_adjoint_is_an_error_result() {
        let f = AFrame::new(&CMat::diag_real(&[0.0, 1.0]), DEFAULT_RANK_TOL).unwrap();
        let swap = CMat::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let res = run_all(&f, &Operands::new(swap), &CheckParams::default(), &SweepConfig::default(), 1e-8);
        let eq = res.iter().find(|r| r.check_id == "equiv_half").unwrap();
        assert!(eq.is_violation() && eq.error.is_some());
    }

    #[test]
    fn power_r_at_one_matches_zamani_square_root() {
        let t = remark_t();
        let r = run("thm_power_r", &AFrame::identity(3), &t);
        let z = run("thm_refined_fourth", &AFrame::identity(3), &t);
        assert_abs_diff_eq!(r.rhs, libm::sqrt(z.metadata["zamani_rhs"]), epsilon = 1e-10);
    }
}
