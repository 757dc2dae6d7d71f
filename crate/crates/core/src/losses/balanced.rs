use super::{sigmoid, softplus, LossValue};
use crate::dataset::ClassCounts;
use crate::error::{check_len, Error, Result};

/// Default loss β; configurable everywhere it is used.
pub const DEFAULT_LOSS_BETA: f64 = 0.9999;

/// Class-balanced weight `(1 − β) / (1 − βⁿ)`, the reciprocal of the
/// effective number of samples. A zero count is treated like a singleton
/// and weighs 1.
pub fn cb_weight(count: u64, beta: f64) -> f64 {
    if count == 0 {
        return 1.0;
    }
    // 1 − βⁿ = −expm1(n ln β) keeps precision for β near 1
    (1.0 - beta) / -(count as f64 * beta.ln()).exp_m1()
}

#[derive(Debug, Clone, PartialEq)]
pub enum BalanceCounts {
    /// One `(n_0, n_1)` pair shared by every vertex.
    Global(ClassCounts),
    /// A separate `(n_0, n_1)` pair per vertex.
    PerVertex(Vec<ClassCounts>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassBalanceConfig {
    beta: f64,
    counts: BalanceCounts,
    normalized: bool,
}

fn check_beta(beta: f64) -> Result<()> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::InvalidParameter(format!(
            "loss beta must be in [0, 1), got {beta}"
        )));
    }
    Ok(())
}

impl ClassBalanceConfig {
    pub fn global(beta: f64, counts: ClassCounts) -> Result<Self> {
        check_beta(beta)?;
        Ok(Self {
            beta,
            counts: BalanceCounts::Global(counts),
            normalized: false,
        })
    }

    pub fn per_vertex(beta: f64, counts: Vec<ClassCounts>) -> Result<Self> {
        check_beta(beta)?;
        Ok(Self {
            beta,
            counts: BalanceCounts::PerVertex(counts),
            normalized: false,
        })
    }

    /// Rescales each vertex's weight pair to sum to 2 (the number of
    /// classes), keeping the ratio `α_1 / α_0` and the overall loss scale
    /// of plain BCE.
    pub fn normalized(mut self, on: bool) -> Self {
        self.normalized = on;
        self
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn counts(&self) -> &BalanceCounts {
        &self.counts
    }

    /// `[α_0, α_1]` for one vertex.
    pub fn vertex_weights(&self, vertex: usize) -> [f64; 2] {
        let c = match &self.counts {
            BalanceCounts::Global(c) => *c,
            BalanceCounts::PerVertex(cs) => cs[vertex],
        };
        let w = [
            cb_weight(c.negative, self.beta),
            cb_weight(c.positive, self.beta),
        ];
        if self.normalized {
            let scale = 2.0 / (w[0] + w[1]);
            [w[0] * scale, w[1] * scale]
        } else {
            w
        }
    }
}

/// `(1/V) Σ_v α_v[y_v] · ℓ_BCE(y_v, σ(z_v))`.
pub(crate) fn weighted_bce(
    logits: &[f64],
    labels: &[bool],
    weights: impl Fn(usize) -> [f64; 2],
) -> LossValue {
    let v = logits.len() as f64;
    let mut sum = 0.0;
    let gradient = logits
        .iter()
        .zip(labels)
        .enumerate()
        .map(|(i, (&z, &y))| {
            let alpha = weights(i)[usize::from(y)];
            sum += alpha * if y { softplus(-z) } else { softplus(z) };
            alpha * (sigmoid(z) - if y { 1.0 } else { 0.0 }) / v
        })
        .collect();
    LossValue {
        value: sum / v,
        gradient,
    }
}

/// Class-balanced BCE with one weight per class from global counts.
pub fn cb_loss(logits: &[f64], labels: &[bool], config: &ClassBalanceConfig) -> Result<LossValue> {
    check_len("labels", logits.len(), labels.len())?;
    let BalanceCounts::Global(_) = config.counts else {
        return Err(Error::InvalidParameter(
            "cb_loss needs global class counts".into(),
        ));
    };
    let w = config.vertex_weights(0);
    Ok(weighted_bce(logits, labels, |_| w))
}

/// Vertex-level class-balanced BCE: each vertex weighs its label by the
/// effective number of that label at that vertex.
pub fn vcb_loss(logits: &[f64], labels: &[bool], config: &ClassBalanceConfig) -> Result<LossValue> {
    check_len("labels", logits.len(), labels.len())?;
    let BalanceCounts::PerVertex(counts) = &config.counts else {
        return Err(Error::InvalidParameter(
            "vcb_loss needs per-vertex class counts".into(),
        ));
    };
    check_len("per-vertex counts", logits.len(), counts.len())?;
    let table: Vec<[f64; 2]> = (0..counts.len())
        .map(|v| config.vertex_weights(v))
        .collect();
    Ok(weighted_bce(logits, labels, |i| table[i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::losses::bce;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn weight_fixtures() {
        for beta in [0.0, 0.5, 0.9, 0.9999] {
            assert_eq!(cb_weight(1, beta), 1.0);
            assert_eq!(cb_weight(0, beta), 1.0);
        }
        for n in [1, 2, 10, 1000] {
            assert_eq!(cb_weight(n, 0.0), 1.0);
        }
        // exact value 0.0157736753008560543...
        assert!((cb_weight(100, 0.99) - 0.015_773_675_300_856_054).abs() < 1e-15);
        assert!((cb_weight(10_000, 0.999) - 0.001_000_045_175_386_700_4).abs() < 1e-15);
    }

    #[test]
    fn log_excess_weight_strictly_decreasing() {
        // α(n) − (1−β) = (1−β)·βⁿ/(1−βⁿ) stays representable in log form
        // after α itself has rounded onto its asymptote.
        for beta in [0.9f64, 0.99, 0.9999] {
            let log_excess = |n: u64| {
                let nl = n as f64 * beta.ln();
                (1.0 - beta).ln() + nl - (-nl.exp_m1()).ln()
            };
            for n in 1..100_000 {
                assert!(log_excess(n + 1) < log_excess(n), "beta {beta} n {n}");
            }
        }
    }

    #[test]
    fn cb_symmetric_counts_scale_bce() {
        let z = [0.4, -1.2, 2.5];
        let y = [true, false, true];
        let cfg = ClassBalanceConfig::global(0.99, ClassCounts::new(50, 50)).unwrap();
        let alpha = cb_weight(50, 0.99);
        let cb = cb_loss(&z, &y, &cfg).unwrap();
        let plain = bce(&z, &y).unwrap();
        assert!((cb.value - alpha * plain.value).abs() < 1e-15);
    }

    #[test]
    fn cb_beta_zero_is_bce() {
        let z = [0.4, -1.2, 2.5];
        let y = [true, false, true];
        let cfg = ClassBalanceConfig::global(0.0, ClassCounts::new(7686, 2314)).unwrap();
        assert_eq!(cb_loss(&z, &y, &cfg).unwrap(), bce(&z, &y).unwrap());
    }

    #[test]
    fn dexycb_style_counts_give_two_weights() {
        let n = 1_000_000.0f64;
        let counts = ClassCounts::new((0.7686 * n) as u64, (0.2314 * n) as u64);
        let cfg = ClassBalanceConfig::global(0.999999, counts).unwrap();
        let [w0, w1] = cfg.vertex_weights(0);
        assert!(w1 > w0);
        assert_eq!(cfg.vertex_weights(5), [w0, w1]);
    }

    #[test]
    fn rare_vertex_weighs_more() {
        let cfg = ClassBalanceConfig::per_vertex(
            0.999,
            vec![ClassCounts::new(9_999, 1), ClassCounts::new(1, 10_000)],
        )
        .unwrap();
        assert_eq!(cfg.vertex_weights(0)[1], 1.0);
        assert!((cfg.vertex_weights(1)[1] - 0.0010).abs() < 1e-6);
    }

    #[test]
    fn vcb_equals_cb_for_constant_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let v = 30;
            let z: Vec<f64> = (0..v).map(|_| rng.random_range(-8.0..8.0)).collect();
            let y: Vec<bool> = (0..v).map(|_| rng.random_bool(0.3)).collect();
            let c = ClassCounts::new(rng.random_range(0..500), rng.random_range(0..500));
            let vcb = vcb_loss(
                &z,
                &y,
                &ClassBalanceConfig::per_vertex(0.999, vec![c; v]).unwrap(),
            )
            .unwrap();
            let cb = cb_loss(&z, &y, &ClassBalanceConfig::global(0.999, c).unwrap()).unwrap();
            assert_eq!(vcb, cb);
        }
    }

    #[test]
    fn config_errors() {
        assert!(ClassBalanceConfig::global(1.0, ClassCounts::default()).is_err());
        assert!(ClassBalanceConfig::global(-0.1, ClassCounts::default()).is_err());
        let per = ClassBalanceConfig::per_vertex(0.9, vec![ClassCounts::default(); 2]).unwrap();
        assert!(cb_loss(&[0.0, 0.0], &[true, false], &per).is_err());
        assert!(vcb_loss(&[0.0], &[true], &per).is_err());
        let glob = ClassBalanceConfig::global(0.9, ClassCounts::default()).unwrap();
        assert!(vcb_loss(&[0.0], &[true], &glob).is_err());
    }
}
