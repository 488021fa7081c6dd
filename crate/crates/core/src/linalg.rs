//! Spectral primitives for small dense complex matrices.
//!
//! Hermitian eigendecompositions use the cyclic Jacobi method, which is
//! unconditionally stable and deterministic. Eigenvalue-only requests (the
//! hot path of the θ-sweeps) go through Householder tridiagonalization and
//! implicit QL instead. Singular value decompositions use one-sided Jacobi
//! so that small singular values keep full relative accuracy.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{dot, norm2, CMat, C64, ONE, ZERO};

const MAX_SWEEPS: usize = 100;
const MAX_QL_ITER: usize = 60;

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct EigDecomp {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl EigDecomp {
    /// `V·diag(f(λ))·V*`.
    pub fn reassemble(&self, f: impl Fn(f64) -> f64) -> CMat {
        let n = self.values.len();
        let fv: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        CMat::from_fn(n, n, |i, j| {
            let mut acc = ZERO;
            for k in 0..n {
                acc += v[(i, k)] * fv[k] * v[(j, k)].conj();
            }
            acc
        })
    }
}

/// Thin singular value decomposition `M = U·diag(σ)·V*` with `σ` descending.
/// `U` is `m×k`, `V` is `n×k`, `k = min(m, n)`.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: CMat,
    pub sigma: Vec<f64>,
    pub v: CMat,
}

/// Rotation `G = [[c, s], [−s·e^{−iφ}, c·e^{−iφ}]]` that annihilates the
/// off-diagonal entry of the Hermitian 2×2 block `[[a, h], [h̄, b]]` under
/// `G*·(·)·G`. Returns `(c, s, e^{−iφ})`.
#[inline]
fn jacobi_rotation(a: f64, b: f64, h: C64) -> (f64, f64, C64) {
    let habs = h.norm();
    let phase = if habs > 0.0 { h.conj() / habs } else { ONE };
    let theta = (b - a) / (2.0 * habs);
    let t = if theta.is_infinite() {
        0.0
    } else {
        let t = 1.0 / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0));
        if theta < 0.0 { -t } else { t }
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    (c, t * c, phase)
}

fn check_hermitian(h: &CMat, tol: f64) -> Result<usize> {
    let n = h.ensure_square()?;
    let scale = 1.0 + h.frobenius_norm();
    let residual = h.hermitian_residual();
    if residual > tol * scale {
        return Err(Error::NotHermitian { residual: residual / scale });
    }
    Ok(n)
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// `tol` bounds the accepted asymmetry `‖H − H*‖_F ≤ tol·(1 + ‖H‖_F)`; the
/// input is symmetrized before iterating.
pub fn herm_eig(h: &CMat, tol: f64) -> Result<EigDecomp> {
    let n = check_hermitian(h, tol)?;
    let mut a = h.hermitian_part();
    let mut v = CMat::identity(n);
    let scale = a.frobenius_norm();
    let target = f64::EPSILON * scale;

    let mut converged = n <= 1 || scale == 0.0;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>();
        if libm::sqrt(off) <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let h_pq = a[(p, q)];
                if h_pq.norm() <= f64::MIN_POSITIVE {
                    continue;
                }
                let (c, s, ph) = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, h_pq);
                // columns: A ← A·G
                for k in 0..n {
                    let (ap, aq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = ap * c - aq * ph * s;
                    a[(k, q)] = ap * s + aq * ph * c;
                    let (vp, vq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vp * c - vq * ph * s;
                    v[(k, q)] = vp * s + vq * ph * c;
                }
                // rows: A ← G*·A
                let phc = ph.conj();
                for k in 0..n {
                    let (ap, aq) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = ap * c - aq * phc * s;
                    a[(q, k)] = ap * s + aq * phc * c;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { routine: "jacobi eigensolver" });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMat::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(EigDecomp { values, vectors })
}

/// Eigenvalues (ascending) of a Hermitian matrix, without eigenvectors.
///
/// Only the lower triangle is read and no symmetry check is made; callers
/// pass matrices that are Hermitian by construction.
pub fn herm_eigvals(h: &CMat) -> Result<Vec<f64>> {
    let n = h.ensure_square()?;
    let (mut d, mut e) = tridiagonalize(h);
    if n > 1 {
        tql(&mut d, &mut e)?;
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Householder reduction of a Hermitian matrix to a real symmetric
/// tridiagonal one with the same spectrum. Returns `(diagonal, offdiagonal)`
/// where `offdiagonal[i]` couples `i` and `i+1` (last entry zero).
fn tridiagonalize(h: &CMat) -> (Vec<f64>, Vec<f64>) {
    let n = h.rows();
    let mut a = CMat::from_fn(n, n, |i, j| if i >= j { h[(i, j)] } else { h[(j, i)].conj() });
    let mut v = vec![ZERO; n];
    let mut w = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let m = k + 1;
        let xnorm = libm::sqrt((m..n).map(|i| a[(i, k)].norm_sqr()).sum());
        if xnorm == 0.0 {
            continue;
        }
        let x0 = a[(m, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        let alpha = -phase * xnorm;
        for i in m..n {
            v[i] = a[(i, k)];
        }
        v[m] -= alpha;
        let vnorm = libm::sqrt((m..n).map(|i| v[i].norm_sqr()).sum());
        if vnorm == 0.0 {
            continue;
        }
        for vi in v.iter_mut().take(n).skip(m) {
            *vi /= vnorm;
        }
        // w = A₂₂·v, K = v*·w, q = w − K·v; A₂₂ ← A₂₂ − 2(v q* + q v*)
        for i in m..n {
            w[i] = (m..n).fold(ZERO, |acc, j| acc + a[(i, j)] * v[j]);
        }
        let kappa: f64 = (m..n).map(|i| (v[i].conj() * w[i]).re).sum();
        for i in m..n {
            w[i] -= v[i] * kappa;
        }
        for i in m..n {
            for j in m..n {
                a[(i, j)] -= (v[i] * w[j].conj() + w[i] * v[j].conj()) * 2.0;
            }
        }
        a[(m, k)] = alpha;
        a[(k, m)] = alpha.conj();
        for i in m + 1..n {
            a[(i, k)] = ZERO;
            a[(k, i)] = ZERO;
        }
    }
    let d = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e: Vec<f64> = (0..n.saturating_sub(1)).map(|i| a[(i + 1, i)].norm()).collect();
    e.push(0.0);
    (d, e)
}

/// Implicit QL iteration with Wilkinson shifts on a symmetric tridiagonal
/// matrix; eigenvalues are left (unsorted) in `d`.
fn tql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = libm::fabs(d[m]) + libm::fabs(d[m + 1]);
                if libm::fabs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITER {
                return Err(Error::NoConvergence { routine: "tridiagonal QL" });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + libm::copysign(r, g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Largest eigenvalue of a Hermitian matrix (fast path).
pub fn lambda_max(h: &CMat) -> Result<f64> {
    Ok(herm_eigvals(h)?.last().copied().unwrap_or(0.0))
}

/// One-sided Jacobi SVD.
pub fn svd(m: &CMat) -> Result<Svd> {
    if m.rows() < m.cols() {
        let t = svd(&m.adjoint())?;
        return Ok(Svd { u: t.v, sigma: t.sigma, v: t.u });
    }
    let (rows, n) = m.shape();
    // Work on columns.
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n).map(|j| (0..n).map(|i| if i == j { ONE } else { ZERO }).collect()).collect();

    let thresh = f64::EPSILON * rows as f64;
    let negligible = {
        let fro = m.frobenius_norm();
        (f64::EPSILON * fro) * (f64::EPSILON * fro)
    };
    let mut converged = n <= 1;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                // γ = w_p*·w_q
                let gamma = dot(&cols[q], &cols[p]);
                if gamma.norm() <= thresh * libm::sqrt(alpha * beta) || alpha.min(beta) <= negligible {
                    continue;
                }
                rotated = true;
                let (c, s, ph) = jacobi_rotation(alpha, beta, gamma);
                let (wp, wq) = split_pair(&mut cols, p, q);
                rotate_pair(wp, wq, c, s, ph);
                let (vp, vq) = split_pair(&mut v, p, q);
                rotate_pair(vp, vq, c, s, ph);
            }
        }
        if !rotated {
            converged = true;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { routine: "one-sided jacobi svd" });
    }

    let sig: Vec<f64> = cols.iter().map(|c| norm2(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sig[j].total_cmp(&sig[i]));
    let sigma: Vec<f64> = order.iter().map(|&i| sig[i]).collect();
    let smax = sigma.first().copied().unwrap_or(0.0);

    let mut ucols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for &i in &order {
        if sig[i] > smax * f64::EPSILON * (rows as f64) && sig[i] > 0.0 {
            ucols.push(cols[i].iter().map(|z| z / sig[i]).collect());
        } else {
            ucols.push(vec![ZERO; rows]);
        }
    }
    complete_orthonormal(&mut ucols, rows);
    let u = CMat::from_columns(rows, &ucols);
    let vm = CMat::from_fn(n, n, |i, j| v[order[j]][i]);
    Ok(Svd { u, sigma, v: vm })
}

fn split_pair<T>(cols: &mut [T], p: usize, q: usize) -> (&mut T, &mut T) {
    debug_assert!(p < q);
    let (lo, hi) = cols.split_at_mut(q);
    (&mut lo[p], &mut hi[0])
}

#[inline]
fn rotate_pair(wp: &mut [C64], wq: &mut [C64], c: f64, s: f64, ph: C64) {
    for (x, y) in wp.iter_mut().zip(wq.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = a * c - b * ph * s;
        *y = a * s + b * ph * c;
    }
}

/// Replaces zero columns by unit vectors orthogonal to all others
/// (modified Gram–Schmidt against the standard basis).
fn complete_orthonormal(cols: &mut [Vec<C64>], rows: usize) {
    let mut candidate = 0;
    for j in 0..cols.len() {
        if norm2(&cols[j]) > 0.5 {
            continue;
        }
        while candidate < rows {
            let mut e = vec![ZERO; rows];
            e[candidate] = ONE;
            candidate += 1;
            for _ in 0..2 {
                for (k, c) in cols.iter().enumerate() {
                    if k == j || norm2(c) < 0.5 {
                        continue;
                    }
                    let proj = dot(&e, c);
                    for (ei, ci) in e.iter_mut().zip(c) {
                        *ei -= proj * ci;
                    }
                }
            }
            let nrm = norm2(&e);
            if nrm > 1e-8 {
                cols[j] = e.into_iter().map(|z| z / nrm).collect();
                break;
            }
        }
    }
}

/// Singular values in descending order.
pub fn singular_values(m: &CMat) -> Result<Vec<f64>> {
    Ok(svd(m)?.sigma)
}

/// Moore–Penrose pseudoinverse; singular values at or below
/// `rel_rank_tol·σ_max` are treated as zero.
pub fn pinv(m: &CMat, rel_rank_tol: f64) -> Result<CMat> {
    if !(rel_rank_tol > 0.0) {
        return Err(Error::InvalidConfig("rel_rank_tol must be positive"));
    }
    let s = svd(m)?;
    let cut = rel_rank_tol * s.sigma.first().copied().unwrap_or(0.0);
    let inv: Vec<f64> = s.sigma.iter().map(|&x| if x > cut { 1.0 / x } else { 0.0 }).collect();
    Ok(CMat::from_fn(m.cols(), m.rows(), |i, j| {
        let mut acc = ZERO;
        for (t, &it) in inv.iter().enumerate() {
            if it != 0.0 {
                acc += s.v[(i, t)] * it * s.u[(j, t)].conj();
            }
        }
        acc
    }))
}

/// Eigendecomposition of a positive semidefinite matrix. Eigenvalues below
/// `−tol·‖A‖` are rejected; the remaining negative dust is clamped to zero.
pub fn psd_eig(a: &CMat, tol: f64) -> Result<EigDecomp> {
    let mut eig = herm_eig(a, tol)?;
    let norm = eig.values.iter().fold(0.0f64, |m, l| m.max(libm::fabs(*l)));
    if let Some(&lmin) = eig.values.first() {
        if lmin < -tol * norm {
            return Err(Error::NotPsd { min_eigenvalue: lmin });
        }
    }
    for l in &mut eig.values {
        if *l < 0.0 {
            *l = 0.0;
        }
    }
    Ok(eig)
}

/// Principal square root of a positive semidefinite matrix.
pub fn psd_sqrt(a: &CMat, rel_rank_tol: f64) -> Result<CMat> {
    let eig = psd_eig(a, rel_rank_tol.max(crate::DEFAULT_PREDICATE_TOL))?;
    Ok(eig.reassemble(libm::sqrt).hermitian_part())
}

/// `(S^p)` for Hermitian positive semidefinite `S` via functional calculus.
pub fn psd_power(s: &CMat, p: f64, tol: f64) -> Result<CMat> {
    let eig = psd_eig(s, tol)?;
    Ok(eig.reassemble(|l| if l > 0.0 { libm::pow(l, p) } else { 0.0 }).hermitian_part())
}

/// Orthonormal basis of the numerical range of a Hermitian PSD matrix:
/// eigenvectors whose eigenvalue exceeds `rel_rank_tol·λ_max`.
pub fn range_basis(a: &CMat, rel_rank_tol: f64) -> Result<(CMat, usize)> {
    let eig = psd_eig(a, rel_rank_tol.max(crate::DEFAULT_PREDICATE_TOL))?;
    let n = a.rows();
    let lmax = eig.values.last().copied().unwrap_or(0.0);
    let keep: Vec<usize> = (0..n).filter(|&i| eig.values[i] > rel_rank_tol * lmax && lmax > 0.0).collect();
    let u = CMat::from_fn(n, keep.len(), |i, j| eig.vectors[(i, keep[j])]);
    Ok((u, keep.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn residual(h: &CMat, e: &EigDecomp) -> f64 {
        let hv = h * &e.vectors;
        let vl = &e.vectors * &CMat::diag_real(&e.values);
        hv.dist(&vl)
    }

    #[test]
    fn identity_eigenvalues() {
        let e = herm_eig(&CMat::identity(3), 1e-12).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn diagonal_eigenvalues_sorted() {
        let e = herm_eig(&CMat::diag_real(&[5.0, -2.0, 0.0]), 1e-12).unwrap();
        assert_eq!(e.values, vec![-2.0, 0.0, 5.0]);
        assert_eq!(herm_eigvals(&CMat::diag_real(&[5.0, -2.0, 0.0])).unwrap(), vec![-2.0, 0.0, 5.0]);
    }

    #[test]
    fn tridiagonal_example_matches_characteristic_root() {
        // ½·[[0,1,0],[1,0,2],[0,2,0]]: λ(λ² − 5/4) = 0
        let h = CMat::from_real_rows(&[[0.0, 0.5, 0.0], [0.5, 0.0, 1.0], [0.0, 1.0, 0.0]]).unwrap();
        let root = libm::sqrt(5.0) / 2.0;
        let e = herm_eig(&h, 1e-12).unwrap();
        assert_abs_diff_eq!(e.values[2], root, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[0], -root, epsilon = 1e-14);
        let fast = herm_eigvals(&h).unwrap();
        assert_abs_diff_eq!(fast[2], root, epsilon = 1e-14);
        assert!(residual(&h, &e) < 1e-13);
    }

    #[test]
    fn complex_hermitian_reconstruction() {
        let h = CMat::from_rows(&[
            [C64::new(2.0, 0.0), C64::new(1.0, 1.0), C64::new(0.0, -0.5)],
            [C64::new(1.0, -1.0), C64::new(-1.0, 0.0), C64::new(0.3, 0.2)],
            [C64::new(0.0, 0.5), C64::new(0.3, -0.2), C64::new(0.5, 0.0)],
        ])
        .unwrap();
        let e = herm_eig(&h, 1e-12).unwrap();
        assert!(residual(&h, &e) < 1e-13);
        let vv = &e.vectors.adjoint() * &e.vectors;
        assert!(vv.dist(&CMat::identity(3)) < 1e-13);
        let fast = herm_eigvals(&h).unwrap();
        for (a, b) in fast.iter().zip(&e.values) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-13);
        }
        // trace is preserved
        assert_abs_diff_eq!(e.values.iter().sum::<f64>(), 1.5, epsilon = 1e-13);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMat::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(matches!(herm_eig(&m, 1e-9), Err(Error::NotHermitian { .. })));
        assert!(matches!(herm_eig(&CMat::zeros(2, 3), 1e-9), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn svd_examples() {
        assert_eq!(singular_values(&CMat::zeros(3, 3)).unwrap(), vec![0.0; 3]);
        assert_eq!(singular_values(&CMat::from_real_rows(&[[0.0, 2.0], [0.0, 0.0]]).unwrap()).unwrap(), vec![2.0, 0.0]);
        assert_eq!(singular_values(&CMat::diag_real(&[3.0, 4.0])).unwrap(), vec![4.0, 3.0]);
    }

    #[test]
    fn svd_reconstructs_rectangular() {
        let m = CMat::from_rows(&[
            [C64::new(1.0, 0.5), C64::new(-2.0, 0.0), C64::new(0.0, 1.0)],
            [C64::new(0.2, 0.0), C64::new(0.7, -0.3), C64::new(1.0, 1.0)],
        ])
        .unwrap();
        for mm in [m.clone(), m.adjoint()] {
            let s = svd(&mm).unwrap();
            let rec = &(&s.u * &CMat::diag_real(&s.sigma)) * &s.v.adjoint();
            assert!(rec.dist(&mm) < 1e-13);
            assert!(s.sigma.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn pinv_examples() {
        let p = pinv(&CMat::diag_real(&[2.0, 0.0]), 1e-10).unwrap();
        assert!(p.dist(&CMat::diag_real(&[0.5, 0.0])) < 1e-15);
        let a = CMat::from_real_rows(&[[0.0, 0.0], [0.0, 1.0]]).unwrap();
        assert!(pinv(&a, 1e-10).unwrap().dist(&a) < 1e-15);
        let m = CMat::from_rows(&[[C64::new(1.0, 1.0), C64::new(2.0, 0.0)], [C64::new(0.0, -1.0), C64::new(1.0, 0.0)]])
            .unwrap();
        let mi = pinv(&m, 1e-10).unwrap();
        assert!((&mi * &m).dist(&CMat::identity(2)) < 1e-14);
        assert!(pinv(&CMat::zeros(2, 2), 1e-10).unwrap().is_zero());
        assert!(pinv(&m, 0.0).is_err());
    }

    #[test]
    fn psd_sqrt_examples() {
        assert!(psd_sqrt(&CMat::diag_real(&[4.0, 1.0]), 1e-10).unwrap().dist(&CMat::diag_real(&[2.0, 1.0])) < 1e-15);
        assert!(psd_sqrt(&CMat::identity(3), 1e-10).unwrap().dist(&CMat::identity(3)) < 1e-15);
        assert!(psd_sqrt(&CMat::diag_real(&[0.0, 9.0]), 1e-10).unwrap().dist(&CMat::diag_real(&[0.0, 3.0])) < 1e-15);
        assert!(matches!(psd_sqrt(&CMat::diag_real(&[1.0, -0.5]), 1e-10), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn range_basis_examples() {
        let (u, r) = range_basis(&CMat::diag_real(&[0.0, 1.0]), 1e-10).unwrap();
        assert_eq!(r, 1);
        assert_abs_diff_eq!(u[(1, 0)].norm(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(u[(0, 0)].norm(), 0.0, epsilon = 1e-15);
        assert_eq!(range_basis(&CMat::identity(4), 1e-10).unwrap().1, 4);
        let (u0, r0) = range_basis(&CMat::zeros(3, 3), 1e-10).unwrap();
        assert_eq!((r0, u0.shape()), (0, (3, 0)));
    }

    #[test]
    fn psd_power_of_diagonal() {
        let s = CMat::diag_real(&[4.0, 9.0]);
        assert!(psd_power(&s, 2.0, 1e-9).unwrap().dist(&CMat::diag_real(&[16.0, 81.0])) < 1e-12);
        assert!(psd_power(&s, 1.5, 1e-9).unwrap().dist(&CMat::diag_real(&[8.0, 27.0])) < 1e-12);
    }
}
