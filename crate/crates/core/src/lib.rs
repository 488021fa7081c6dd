//! Operator calculus on a semi-Hilbertian space `(Cⁿ, ⟨·,·⟩_A)`.
//!
//! A positive semidefinite matrix `A` induces the semi-inner product
//! `⟨x, y⟩_A = ⟨Ax, y⟩`. This crate realizes the derived objects as dense
//! complex matrix computations:
//!
//! - [`frame`]: validation of `A` and the cached square roots, range basis and
//!   projector that everything else reuses, plus the doubled metric
//!   `diag(A, A)` for 2×2 operator matrices;
//! - [`adjoint`]: the A-adjoint `T♯ = A†T*A`, the range condition deciding
//!   whether it exists, A-selfadjoint / A-positive / A-unitary predicates and
//!   the reduced operator through which every A-gauge is computed;
//! - [`gauges`]: numerical radius, Crawford numbers, seminorm and minimum
//!   modulus, both by θ-sweep eigenvalue optimization and by a direct
//!   sampling oracle;
//! - [`blocks`]: 2×2 block operators over `H ⊕ H`;
//! - [`catalog`]: every inequality as a named, tolerance-aware check.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod adjoint;
pub mod blocks;
pub mod catalog;
pub mod error;
pub mod frame;
pub mod gauges;
pub mod linalg;
pub mod matrix;

pub use adjoint::ReducedOp;
pub use blocks::{BlockOp, BlockPattern};
pub use catalog::{CheckDef, CheckParams, CheckResult, Operands};
pub use error::{Error, Result};
pub use frame::AFrame;
pub use gauges::{GaugeKind, SweepConfig};
pub use linalg::{EigDecomp, Svd};
pub use matrix::{CMat, C64};

/// Relative cut-off below which singular values / eigenvalues count as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Relative tolerance of the structural predicates (Hermitian, A-selfadjoint, ...).
pub const DEFAULT_PREDICATE_TOL: f64 = 1e-9;

/// Relative tolerance of inequality checks.
pub const DEFAULT_CHECK_TOL: f64 = 1e-8;
