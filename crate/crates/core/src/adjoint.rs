//! A-adjoints and the reduced operator.
//!
//! For `T` admitting an A-adjoint, `T` leaves `N(A)` invariant, so the
//! quotient of `(Cⁿ, ‖·‖_A)` by `N(A)` is isometric to `R(A)` with the
//! Euclidean norm via `x ↦ A^{1/2}x`. Under that isometry `T` becomes the
//! r×r matrix `Ũ*·A^{1/2}·T·(A^{1/2})†·Ũ`, and every A-gauge of `T` is the
//! classical gauge of that matrix. `reduced(T♯) = reduced(T)*` and
//! `reduced(ST) = reduced(S)·reduced(T)`.

use crate::error::{Error, Result};
use crate::frame::AFrame;
use crate::linalg::herm_eigvals;
use crate::matrix::{CMat, C64};

/// The compression of an operator onto the range of the metric.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedOp {
    pub mat: CMat,
    pub source_dim: usize,
}

impl ReducedOp {
    pub fn rank(&self) -> usize {
        self.mat.rows()
    }
}

fn check_operator(f: &AFrame, t: &CMat) -> Result<()> {
    t.ensure_shape(f.dim(), f.dim())
}

/// Residual `‖(I − P_A)·T*·A‖_F` of the range condition `R(T*A) ⊆ R(A)`.
pub fn adjoint_residual(f: &AFrame, t: &CMat) -> Result<f64> {
    check_operator(f, t)?;
    let tsa = &t.adjoint() * f.a();
    let outside = &tsa - &(f.projector() * &tsa);
    Ok(outside.frobenius_norm())
}

/// Whether `T` admits an A-adjoint, i.e. `R(T*A) ⊆ R(A)` within
/// `rank_tol·(1 + ‖T‖_F·‖A‖_F)`.
pub fn admits_a_adjoint(f: &AFrame, t: &CMat) -> Result<bool> {
    let residual = adjoint_residual(f, t)?;
    Ok(residual <= f.rank_tol() * (1.0 + t.frobenius_norm() * f.a().frobenius_norm()))
}

pub(crate) fn require_adjoint(f: &AFrame, t: &CMat) -> Result<()> {
    let residual = adjoint_residual(f, t)?;
    if residual <= f.rank_tol() * (1.0 + t.frobenius_norm() * f.a().frobenius_norm()) {
        Ok(())
    } else {
        Err(Error::NoAdjoint { residual })
    }
}

/// The distinguished A-adjoint `T♯ = A†·T*·A`.
pub fn sharp(f: &AFrame, t: &CMat) -> Result<CMat> {
    require_adjoint(f, t)?;
    Ok(sharp_unchecked(f, t))
}

/// `A†·T*·A` without the range test; callers guarantee `T ∈ B_A`.
pub(crate) fn sharp_unchecked(f: &AFrame, t: &CMat) -> CMat {
    &(f.pinv_a() * &t.adjoint()) * f.a()
}

/// `Re_A(T) = (T + T♯)/2`.
pub fn re_a(f: &AFrame, t: &CMat) -> Result<CMat> {
    let s = sharp(f, t)?;
    Ok((t + &s).scale_real(0.5))
}

/// `Im_A(T) = (T − T♯)/(2i)`.
pub fn im_a(f: &AFrame, t: &CMat) -> Result<CMat> {
    let s = sharp(f, t)?;
    Ok((t - &s).scale(C64::new(0.0, -0.5)))
}

/// `AT` is Hermitian: `‖AT − T*A‖_F ≤ tol·(1 + ‖AT‖_F)`.
pub fn is_a_selfadjoint(f: &AFrame, t: &CMat) -> Result<bool> {
    check_operator(f, t)?;
    let at = f.a() * t;
    Ok(at.hermitian_residual() <= f.tol() * (1.0 + at.frobenius_norm()))
}

/// `AT` is Hermitian and positive semidefinite:
/// `λ_min(AT) ≥ −tol·(1 + ‖AT‖)`.
pub fn is_a_positive(f: &AFrame, t: &CMat) -> Result<bool> {
    if !is_a_selfadjoint(f, t)? {
        return Ok(false);
    }
    let at = (f.a() * t).hermitian_part();
    let eig = herm_eigvals(&at)?;
    let lmin = eig.first().copied().unwrap_or(0.0);
    let norm = eig.iter().fold(0.0f64, |m, l| m.max(libm::fabs(*l)));
    Ok(lmin >= -f.tol() * (1.0 + norm))
}

pub(crate) fn require_positive(f: &AFrame, t: &CMat) -> Result<()> {
    if is_a_positive(f, t)? {
        Ok(())
    } else {
        Err(Error::NotAPositive)
    }
}

/// `U♯U = (U♯)♯U♯ = P_A`.
pub fn is_a_unitary(f: &AFrame, u: &CMat) -> Result<bool> {
    let us = sharp(f, u)?;
    let uss = sharp(f, &us)?;
    let p = f.projector();
    let bound = f.tol() * (1.0 + p.frobenius_norm());
    Ok((&us * u).dist(p) <= bound && (&uss * &us).dist(p) <= bound)
}

/// `Ũ*·A^{1/2}·T·(A^{1/2})†·Ũ`.
pub fn reduced(f: &AFrame, t: &CMat) -> Result<ReducedOp> {
    require_adjoint(f, t)?;
    Ok(reduced_unchecked(f, t))
}

pub(crate) fn reduced_unchecked(f: &AFrame, t: &CMat) -> ReducedOp {
    ReducedOp { mat: &(f.reduce_left() * t) * f.reduce_right(), source_dim: f.dim() }
}

/// Inverse of the reduction: the operator `(A^{1/2})†·Ũ·M·Ũ*·A^{1/2}`, which
/// annihilates `N(A)` and has reduced form `M`.
pub fn lift(f: &AFrame, m: &CMat) -> Result<CMat> {
    m.ensure_shape(f.rank(), f.rank())?;
    Ok(&(f.reduce_right() * m) * f.reduce_left())
}
