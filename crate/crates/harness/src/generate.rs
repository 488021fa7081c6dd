//! Seeded random metrics and A-adjoint-compatible operators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use semi_hilbert::adjoint::lift;
use semi_hilbert::linalg::herm_eig;
use semi_hilbert::{AFrame, CMat, C64};

use crate::error::{HarnessError, Result};

pub const MIN_EIGENVALUE: f64 = 1e-3;
pub const MAX_EIGENVALUE: f64 = 1e3;

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gauss(rng: &mut impl Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * core::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| gauss(rng))
}

/// Haar-distributed unitary via Gram-Schmidt on a Gaussian matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> CMat {
    let g = gaussian_matrix(rng, n, n);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        for _ in 0..2 {
            for q in &cols {
                let p = semi_hilbert::matrix::dot(&v, q);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= p * qi;
                }
            }
        }
        let nv = semi_hilbert::matrix::norm2(&v);
        v.iter_mut().for_each(|x| *x /= nv);
        cols.push(v);
    }
    CMat::from_columns(n, &cols)
}

/// `G·G*` for an `n×rank` complex Gaussian `G`, with the nonzero spectrum
/// rescaled into `[1e-3, 1e3]` and its spread capped at `1e3`.
pub fn gen_psd(n: usize, rank: usize, seed: u64) -> Result<CMat> {
    if rank > n {
        return Err(HarnessError::BadRank { rank, n });
    }
    if rank == 0 {
        return Ok(CMat::zeros(n, n));
    }
    let mut rng = rng_from(seed);
    let g = gaussian_matrix(&mut rng, n, rank);
    let gram = &g * &g.adjoint();
    let eig = herm_eig(&gram, 1e-14)?;
    let top = eig.values[n - 1];
    let floor = (top * MIN_EIGENVALUE).max(MIN_EIGENVALUE);
    let cutoff = n - rank;
    let values: Vec<f64> = eig
        .values
        .iter()
        .enumerate()
        .map(|(k, &l)| if k < cutoff { 0.0 } else { l.clamp(floor, MAX_EIGENVALUE.max(floor)) })
        .collect();
    let v = &eig.vectors;
    let a = CMat::from_fn(n, n, |i, j| {
        (cutoff..n).map(|k| v[(i, k)] * values[k] * v[(j, k)].conj()).sum()
    });
    Ok(a.hermitian_part())
}

/// `W·B·W*` with `W = [range | null]` orthonormal and the (range-row,
/// null-column) block of `B` zeroed, so `T` leaves `N(A)` invariant.
pub fn gen_compatible(f: &AFrame, seed: u64) -> CMat {
    let mut rng = rng_from(seed);
    let n = f.dim();
    let r = f.rank();
    if r == 0 || r == n {
        return gaussian_matrix(&mut rng, n, n);
    }
    let w = CMat::hstack(&[f.range_basis(), f.null_basis()]);
    let mut b = gaussian_matrix(&mut rng, n, n);
    b.set_block(0, r, &CMat::zeros(r, n - r));
    &(&w * &b) * &w.adjoint()
}

/// Bias applied to the generated `T`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Bias {
    #[default]
    None,
    /// `T² = 0` on the range of `A`.
    Nilpotent,
    /// A-normal `T` whose eigenvalues share one argument.
    Normal,
}

/// `T` with `T² = 0`: the lift of `V·[[O, B], [O, O]]·V*`.
pub fn gen_square_zero(f: &AFrame, seed: u64) -> Result<CMat> {
    let mut rng = rng_from(seed);
    let r = f.rank();
    if r == 0 {
        return Ok(CMat::zeros(f.dim(), f.dim()));
    }
    let k = r / 2;
    let mut m = CMat::zeros(r, r);
    if k > 0 {
        m.set_block(0, r - k, &gaussian_matrix(&mut rng, k, k));
    }
    let v = random_unitary(&mut rng, r);
    Ok(lift(f, &(&(&v * &m) * &v.adjoint()))?)
}

/// A-normal `T` with spectrum on a single ray from the origin.
pub fn gen_collinear_normal(f: &AFrame, seed: u64) -> Result<CMat> {
    let mut rng = rng_from(seed);
    let r = f.rank();
    if r == 0 {
        return Ok(CMat::zeros(f.dim(), f.dim()));
    }
    let phase = semi_hilbert::matrix::cis(rng.random_range(0.0..core::f64::consts::TAU));
    let base: f64 = rng.random_range(0.5..2.0);
    let spread = 0.1 * rng.random_range(0.0f64..1.0).powi(3);
    let d: Vec<C64> = (0..r).map(|_| phase * base * (1.0 - rng.random_range(0.0..=spread))).collect();
    let v = random_unitary(&mut rng, r);
    Ok(lift(f, &(&(&v * &CMat::diag(&d)) * &v.adjoint()))?)
}

pub fn gen_biased(f: &AFrame, bias: Bias, seed: u64) -> Result<CMat> {
    match bias {
        Bias::None => Ok(gen_compatible(f, seed)),
        Bias::Nilpotent => gen_square_zero(f, seed),
        Bias::Normal => gen_collinear_normal(f, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use semi_hilbert::adjoint::admits_a_adjoint;
    use semi_hilbert::DEFAULT_RANK_TOL;

    #[test]
    fn psd_rank_and_spread() {
        for n in 1..=6 {
            for rank in 0..=n {
                let a = gen_psd(n, rank, 7 * n as u64 + rank as u64).unwrap();
                assert!(a.hermitian_residual() == 0.0);
                let f = AFrame::new(&a, DEFAULT_RANK_TOL).unwrap();
                assert_eq!(f.rank(), rank);
                assert_eq!(f.strictly_positive(), rank == n);
                for &l in f.range_eigenvalues() {
                    assert!((MIN_EIGENVALUE * 0.999..=MAX_EIGENVALUE * 1.001).contains(&l), "{l}");
                }
            }
        }
        assert!(gen_psd(3, 0, 1).unwrap().is_zero());
        assert!(matches!(gen_psd(2, 3, 1), Err(HarnessError::BadRank { rank: 3, n: 2 })));
    }

    #[test]
    fn psd_is_deterministic() {
        assert_eq!(gen_psd(5, 3, 42).unwrap(), gen_psd(5, 3, 42).unwrap());
        assert_ne!(gen_psd(5, 3, 42).unwrap(), gen_psd(5, 3, 43).unwrap());
    }

    #[test]
    fn compatible_on_diag_metric() {
        let f = AFrame::new(&CMat::diag_real(&[0.0, 1.0]), DEFAULT_RANK_TOL).unwrap();
        for seed in 0..20 {
            let t = gen_compatible(&f, seed);
            assert!(t[(1, 0)].norm() <= 1e-15);
            assert!(admits_a_adjoint(&f, &t).unwrap());
        }
        let zero = AFrame::new(&CMat::zeros(3, 3), DEFAULT_RANK_TOL).unwrap();
        assert!(!gen_compatible(&zero, 1).is_zero());
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = rng_from(3);
        let u = random_unitary(&mut rng, 5);
        assert!((&u.adjoint() * &u).dist(&CMat::identity(5)) <= 1e-12);
    }
}
