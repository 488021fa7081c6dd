//! The metric operator `A` and everything derived from it.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{psd_eig, EigDecomp};
use crate::matrix::{dot, CMat, C64};
use crate::{DEFAULT_PREDICATE_TOL, DEFAULT_RANK_TOL};

/// A validated positive semidefinite metric `A` on `Cⁿ` with its cached
/// derived operators.
///
/// With `A = Σ λᵢ uᵢuᵢ*` and `Ũ = [uᵢ : λᵢ > rank_tol·λ_max]`:
/// `A^{1/2} = Ũ diag(√λ) Ũ*`, `(A^{1/2})† = Ũ diag(1/√λ) Ũ*`,
/// `A† = Ũ diag(1/λ) Ũ*`, `P_A = ŨŨ*`.
#[derive(Clone, Debug)]
pub struct AFrame {
    dim: usize,
    a: CMat,
    sqrt_a: CMat,
    pinv_sqrt_a: CMat,
    pinv_a: CMat,
    range_u: CMat,
    null_u: CMat,
    projector: CMat,
    /// `diag(√λ)·Ũ*`, the left factor of the reduced operator.
    reduce_left: CMat,
    /// `Ũ·diag(1/√λ)`, the right factor of the reduced operator.
    reduce_right: CMat,
    range_eigenvalues: Vec<f64>,
    rank_tol: f64,
    tol: f64,
}

impl AFrame {
    /// Validates `a` (Hermitian, PSD within `DEFAULT_PREDICATE_TOL`) and
    /// caches the derived operators. Eigenvalues at or below
    /// `rank_tol·λ_max` count as zero.
    pub fn new(a: &CMat, rank_tol: f64) -> Result<Self> {
        Self::with_tolerances(a, rank_tol, DEFAULT_PREDICATE_TOL)
    }

    /// Like [`AFrame::new`] with an explicit tolerance for the Hermitian/PSD
    /// validation and for the structural predicates built on this frame.
    pub fn with_tolerances(a: &CMat, rank_tol: f64, tol: f64) -> Result<Self> {
        if !(rank_tol > 0.0) || !(tol > 0.0) {
            return Err(Error::InvalidConfig("tolerances must be positive"));
        }
        a.ensure_square()?;
        let eig = psd_eig(a, tol)?;
        Ok(Self::from_eig(a.hermitian_part(), &eig, rank_tol, tol))
    }

    /// `A = I_n`.
    pub fn identity(n: usize) -> Self {
        Self::new(&CMat::identity(n), DEFAULT_RANK_TOL).expect("identity is a valid metric")
    }

    fn from_eig(a: CMat, eig: &EigDecomp, rank_tol: f64, tol: f64) -> Self {
        let n = a.rows();
        let lmax = eig.values.last().copied().unwrap_or(0.0);
        let (range, null): (Vec<usize>, Vec<usize>) =
            (0..n).partition(|&i| lmax > 0.0 && eig.values[i] > rank_tol * lmax);
        // Largest eigenvalues first; ties keep their original order.
        let mut range = range;
        range.sort_by(|&i, &j| eig.values[j].total_cmp(&eig.values[i]));
        let v = &eig.vectors;
        let range_u = CMat::from_fn(n, range.len(), |i, j| v[(i, range[j])]);
        let null_u = CMat::from_fn(n, null.len(), |i, j| v[(i, null[j])]);
        let lam: Vec<f64> = range.iter().map(|&i| eig.values[i]).collect();
        let r = lam.len();

        let weighted = |f: &dyn Fn(f64) -> f64| {
            CMat::from_fn(n, n, |i, j| {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..r {
                    acc += range_u[(i, k)] * f(lam[k]) * range_u[(j, k)].conj();
                }
                acc
            })
            .hermitian_part()
        };
        let sqrt_a = weighted(&|l| libm::sqrt(l));
        let pinv_sqrt_a = weighted(&|l| 1.0 / libm::sqrt(l));
        let pinv_a = weighted(&|l| 1.0 / l);
        let projector = weighted(&|_| 1.0);
        let reduce_left = CMat::from_fn(r, n, |i, j| range_u[(j, i)].conj() * libm::sqrt(lam[i]));
        let reduce_right = CMat::from_fn(n, r, |i, j| range_u[(i, j)] / libm::sqrt(lam[j]));

        AFrame {
            dim: n,
            a,
            sqrt_a,
            pinv_sqrt_a,
            pinv_a,
            range_u,
            null_u,
            projector,
            reduce_left,
            reduce_right,
            range_eigenvalues: lam,
            rank_tol,
            tol,
        }
    }

    /// The doubled frame `B = diag(A, A)` on `Cⁿ ⊕ Cⁿ`.
    pub fn direct_sum(&self) -> AFrame {
        let n = self.dim;
        let r = self.rank();
        let z = n - r;
        // Range basis diag(Ũ, Ũ) keeps eigenvalue order blockwise; the cached
        // factors are block diagonal copies.
        let two = |m: &CMat| CMat::block_diag(m, m);
        let mut lam = self.range_eigenvalues.clone();
        lam.extend_from_slice(&self.range_eigenvalues);
        let mut range_u = CMat::zeros(2 * n, 2 * r);
        range_u.set_block(0, 0, &self.range_u);
        range_u.set_block(n, r, &self.range_u);
        let mut null_u = CMat::zeros(2 * n, 2 * z);
        null_u.set_block(0, 0, &self.null_u);
        null_u.set_block(n, z, &self.null_u);
        AFrame {
            dim: 2 * n,
            a: two(&self.a),
            sqrt_a: two(&self.sqrt_a),
            pinv_sqrt_a: two(&self.pinv_sqrt_a),
            pinv_a: two(&self.pinv_a),
            range_u,
            null_u,
            projector: two(&self.projector),
            reduce_left: two(&self.reduce_left),
            reduce_right: two(&self.reduce_right),
            range_eigenvalues: lam,
            rank_tol: self.rank_tol,
            tol: self.tol,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.range_u.cols()
    }

    pub fn strictly_positive(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn a(&self) -> &CMat {
        &self.a
    }

    pub fn sqrt_a(&self) -> &CMat {
        &self.sqrt_a
    }

    pub fn pinv_sqrt_a(&self) -> &CMat {
        &self.pinv_sqrt_a
    }

    /// `A†`.
    pub fn pinv_a(&self) -> &CMat {
        &self.pinv_a
    }

    /// Orthonormal basis of `R(A)` (n×r).
    pub fn range_basis(&self) -> &CMat {
        &self.range_u
    }

    /// Orthonormal basis of `N(A)` (n×(n−r)).
    pub fn null_basis(&self) -> &CMat {
        &self.null_u
    }

    /// `P_A`, the orthogonal projector onto `R(A)`.
    pub fn projector(&self) -> &CMat {
        &self.projector
    }

    pub fn reduce_left(&self) -> &CMat {
        &self.reduce_left
    }

    pub fn reduce_right(&self) -> &CMat {
        &self.reduce_right
    }

    /// Nonzero eigenvalues of `A`, descending, matching the columns of
    /// [`AFrame::range_basis`].
    pub fn range_eigenvalues(&self) -> &[f64] {
        &self.range_eigenvalues
    }

    pub fn rank_tol(&self) -> f64 {
        self.rank_tol
    }

    /// Tolerance of the structural predicates.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// `‖A‖` (largest eigenvalue).
    pub fn a_norm(&self) -> f64 {
        self.range_eigenvalues.first().copied().unwrap_or(0.0)
    }

    fn check_vec(&self, x: &[C64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: (self.dim, 1), found: (x.len(), 1) });
        }
        Ok(())
    }

    /// `⟨x, y⟩_A = ⟨Ax, y⟩`.
    pub fn inner(&self, x: &[C64], y: &[C64]) -> Result<C64> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(dot(&self.a.mul_vec(x), y))
    }

    /// `‖x‖_A = ‖A^{1/2}x‖`.
    pub fn norm(&self, x: &[C64]) -> Result<f64> {
        self.check_vec(x)?;
        Ok(crate::matrix::norm2(&self.sqrt_a.mul_vec(x)))
    }

    /// Whether `x` lies numerically in `N(A)`:
    /// `‖x‖_A ≤ rank_tol·(1 + ‖x‖·‖A‖^{1/2})`.
    pub fn in_null_space(&self, x: &[C64]) -> Result<bool> {
        let ax = self.norm(x)?;
        Ok(ax <= self.rank_tol * (1.0 + crate::matrix::norm2(x) * libm::sqrt(self.a_norm())))
    }
}
