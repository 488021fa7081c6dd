//! 2×2 operator matrices over `H ⊕ H` with the metric `B = diag(A, A)`.

use crate::adjoint::{sharp, sharp_unchecked};
use crate::error::{Error, Result};
use crate::frame::AFrame;
use crate::gauges::{a_numerical_radius, SweepConfig};
use crate::matrix::{cis, CMat};

/// `[[T11, T12], [T21, T22]]`, kept both blockwise and assembled.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockOp {
    blocks: [CMat; 4],
    assembled: CMat,
}

impl BlockOp {
    pub fn assemble(t11: &CMat, t12: &CMat, t21: &CMat, t22: &CMat) -> Result<Self> {
        let assembled = CMat::tile2x2(t11, t12, t21, t22)?;
        Ok(BlockOp { blocks: [t11.clone(), t12.clone(), t21.clone(), t22.clone()], assembled })
    }

    pub fn diag(x: &CMat, y: &CMat) -> Result<Self> {
        let z = CMat::zeros(x.rows(), x.cols());
        Self::assemble(x, &z, &z, y)
    }

    /// `[[O, X], [Y, O]]`.
    pub fn antidiag(x: &CMat, y: &CMat) -> Result<Self> {
        let z = CMat::zeros(x.rows(), x.cols());
        Self::assemble(&z, x, y, &z)
    }

    /// `[[X, Y], [Y, X]]`.
    pub fn symmetric(x: &CMat, y: &CMat) -> Result<Self> {
        Self::assemble(x, y, y, x)
    }

    /// Block size `n`.
    pub fn block_dim(&self) -> usize {
        self.blocks[0].rows()
    }

    /// Block `(i, j)` with `i, j ∈ {0, 1}`.
    pub fn block(&self, i: usize, j: usize) -> &CMat {
        &self.blocks[2 * i + j]
    }

    pub fn assembled(&self) -> &CMat {
        &self.assembled
    }
}

/// `[[O, I], [I, O]]` on `Cⁿ ⊕ Cⁿ`.
pub fn swap_unitary(n: usize) -> CMat {
    let z = CMat::zeros(n, n);
    let i = CMat::identity(n);
    CMat::tile2x2(&z, &i, &i, &z).expect("square blocks")
}

/// `‖T^{♯B} − (T_ji^{♯A})‖_F`, with the left side computed on the assembled
/// operator under the doubled frame.
pub fn b_sharp_blockwise_check(f: &AFrame, t: &BlockOp) -> Result<f64> {
    t.block(0, 0).ensure_shape(f.dim(), f.dim())?;
    let s = [sharp(f, t.block(0, 0))?, sharp(f, t.block(0, 1))?, sharp(f, t.block(1, 0))?, sharp(f, t.block(1, 1))?];
    let blockwise = CMat::tile2x2(&s[0], &s[2], &s[1], &s[3])?;
    let b = f.direct_sum();
    let whole = sharp_unchecked(&b, t.assembled());
    Ok(whole.dist(&blockwise))
}

/// The block-lemma patterns.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BlockPattern {
    /// `diag(X, Y)`; `w_B = max{w_A(X), w_A(Y)}`.
    Diag,
    /// `[[O, X], [Y, O]]`; `w_B` is invariant under swapping `X` and `Y`.
    Antidiag,
    /// `[[O, X], [e^{iθ}Y, O]]`; `w_B` does not depend on `θ`.
    AntidiagPhase(f64),
    /// `[[X, Y], [Y, X]]`; `w_B = max{w_A(X+Y), w_A(X−Y)}`.
    Symmetric,
}

impl BlockPattern {
    pub fn requires_strict_positivity(&self) -> bool {
        !matches!(self, BlockPattern::Diag)
    }

    pub fn build(&self, x: &CMat, y: &CMat) -> Result<BlockOp> {
        match *self {
            BlockPattern::Diag => BlockOp::diag(x, y),
            BlockPattern::Antidiag => BlockOp::antidiag(x, y),
            BlockPattern::AntidiagPhase(theta) => BlockOp::antidiag(x, &y.scale(cis(theta))),
            BlockPattern::Symmetric => BlockOp::symmetric(x, y),
        }
    }
}

/// `w_B` of a pattern and the closed form it is claimed to equal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockGauge {
    pub w_b: f64,
    pub identity_rhs: f64,
}

impl BlockGauge {
    pub fn gap(&self) -> f64 {
        libm::fabs(self.w_b - self.identity_rhs)
    }
}

fn w_b(b: &AFrame, t: &BlockOp, cfg: &SweepConfig) -> Result<f64> {
    a_numerical_radius(b, t.assembled(), cfg)
}

/// Evaluates the block lemma for `pattern`. Patterns other than
/// [`BlockPattern::Diag`] need `A > 0`.
pub fn block_gauge(f: &AFrame, pattern: BlockPattern, x: &CMat, y: &CMat, cfg: &SweepConfig) -> Result<BlockGauge> {
    if pattern.requires_strict_positivity() && !f.strictly_positive() {
        return Err(Error::RequiresStrictPositivity);
    }
    block_gauge_unrestricted(f, pattern, x, y, cfg)
}

/// [`block_gauge`] without the positivity gate, for probing singular metrics.
pub fn block_gauge_unrestricted(
    f: &AFrame,
    pattern: BlockPattern,
    x: &CMat,
    y: &CMat,
    cfg: &SweepConfig,
) -> Result<BlockGauge> {
    x.ensure_shape(f.dim(), f.dim())?;
    y.ensure_shape(f.dim(), f.dim())?;
    let b = f.direct_sum();
    let lhs = w_b(&b, &pattern.build(x, y)?, cfg)?;
    let rhs = match pattern {
        BlockPattern::Diag => a_numerical_radius(f, x, cfg)?.max(a_numerical_radius(f, y, cfg)?),
        BlockPattern::Antidiag => w_b(&b, &BlockOp::antidiag(y, x)?, cfg)?,
        BlockPattern::AntidiagPhase(_) => w_b(&b, &BlockOp::antidiag(x, y)?, cfg)?,
        BlockPattern::Symmetric => a_numerical_radius(f, &(x + y), cfg)?.max(a_numerical_radius(f, &(x - y), cfg)?),
    };
    Ok(BlockGauge { w_b: lhs, identity_rhs: rhs })
}
