//! Per-vertex contact losses with analytic gradients with respect to the
//! logits.
//!
//! Every function returns a [`LossValue`] holding the scalar and
//! `d loss / d logit` for each vertex. Probabilities are `σ(z)`; all
//! log terms go through numerically stable softplus identities, so logits
//! up to `|z| = 50` need no clamping.

mod balanced;
pub mod gradcheck;
mod pointwise;
mod surface;
mod total;

pub use balanced::{
    cb_loss, cb_weight, vcb_loss, BalanceCounts, ClassBalanceConfig, DEFAULT_LOSS_BETA,
};
pub use pointwise::{bce, focal_loss, DEFAULT_FOCAL_GAMMA};
pub use surface::{regularization_loss, smoothness_loss, SMOOTHNESS_EPSILON};
pub use total::{total_loss, ContactLoss, LossContext, LossReport, LossStatistics, LossWeights};

#[derive(Debug, Clone, PartialEq)]
pub struct LossValue {
    pub value: f64,
    pub gradient: Vec<f64>,
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + e^x)` without overflow.
pub fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// Sign with `sign(0) = 0`, the subgradient used at absolute-value kinks.
pub(crate) fn kink_sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}
