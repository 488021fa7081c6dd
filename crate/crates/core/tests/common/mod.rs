#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use semi_hilbert::linalg::herm_eig;
use semi_hilbert::{AFrame, CMat, C64, DEFAULT_RANK_TOL};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gauss(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn rand_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| gauss(rng))
}

pub fn rand_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| gauss(rng)).collect()
}

pub fn rand_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    rand_mat(rng, n, n).hermitian_part()
}

pub fn rand_unitary(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    herm_eig(&rand_hermitian(rng, n), 1e-9).unwrap().vectors
}

/// `Q·diag(λ)·Q*` with `rank` eigenvalues in `[0.25, 4]`, the rest zero.
pub fn rand_psd(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> CMat {
    let q = rand_unitary(rng, n);
    let d: Vec<f64> = (0..n).map(|i| if i < rank { rng.random_range(0.25..4.0) } else { 0.0 }).collect();
    &(&q * &CMat::diag_real(&d)) * &q.adjoint()
}

pub fn rand_frame(rng: &mut ChaCha8Rng, n: usize, rank: usize) -> AFrame {
    AFrame::new(&rand_psd(rng, n, rank), DEFAULT_RANK_TOL).unwrap()
}

/// Random operator leaving `N(A)` invariant.
pub fn rand_compatible(rng: &mut ChaCha8Rng, f: &AFrame) -> CMat {
    let n = f.dim();
    let r = f.rank();
    let w = CMat::hstack(&[f.range_basis(), f.null_basis()]);
    let mut b = rand_mat(rng, n, n);
    for i in 0..r {
        for j in r..n {
            b[(i, j)] = C64::new(0.0, 0.0);
        }
    }
    &(&w * &b) * &w.adjoint()
}

/// `T` with `T² = 0`: reduced form `V·[[O, B], [O, O]]·V*`.
pub fn rand_square_zero(rng: &mut ChaCha8Rng, f: &AFrame) -> CMat {
    let r = f.rank();
    let k = r / 2;
    let v = rand_unitary(rng, r);
    let m = CMat::from_fn(r, r, |i, j| if i < k && j >= k { gauss(rng) } else { C64::new(0.0, 0.0) });
    semi_hilbert::adjoint::lift(f, &(&(&v * &m) * &v.adjoint())).unwrap()
}

/// `T` whose reduced form is strictly upper triangular (so `T^r = 0`).
pub fn rand_strict_upper(rng: &mut ChaCha8Rng, f: &AFrame) -> CMat {
    let r = f.rank();
    let m = CMat::from_fn(r, r, |i, j| if j > i { gauss(rng) } else { C64::new(0.0, 0.0) });
    semi_hilbert::adjoint::lift(f, &m).unwrap()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

pub fn norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
