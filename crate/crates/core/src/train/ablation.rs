use std::io::Write;

use rayon::prelude::*;

use super::{evaluate_head, train_new, Averaging, EvalReport, InitMode, TrainConfig};
use crate::dataset::ContactDataset;
use crate::error::{Error, Result};
use crate::losses::{ContactLoss, LossWeights};
use crate::mesh::MeshTopology;
use crate::sampling::{build_plan, uniform_sequence, PlanConfig, DEFAULT_BINS, DEFAULT_CURVATURE};

/// One training recipe in the comparison grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Variant {
    /// Balanced contact sampling on, or a uniform shuffled stream.
    pub sampling: bool,
    pub loss: ContactLoss,
    pub init: InitMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AblationConfig {
    pub steps: usize,
    pub step_size: f64,
    pub seed: u64,
    pub weights: LossWeights,
    pub bins: usize,
    pub curvature: f64,
    pub averaging: Averaging,
    pub normalize_weights: bool,
}

impl Default for AblationConfig {
    fn default() -> Self {
        Self {
            steps: 2000,
            step_size: 0.05,
            seed: 1,
            weights: LossWeights::default(),
            bins: DEFAULT_BINS,
            curvature: DEFAULT_CURVATURE,
            averaging: Averaging::PerSample,
            normalize_weights: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AblationRow {
    pub variant: Variant,
    pub report: EvalReport,
    pub final_train_loss: f64,
}

/// The sampling, loss and initialization comparisons, each varying one
/// factor around the reference recipe (sampling on, VCB, learned init).
pub fn default_variants(beta: f64, gamma: f64) -> Vec<Variant> {
    let reference = Variant {
        sampling: true,
        loss: ContactLoss::VertexClassBalanced { beta },
        init: InitMode::Learned,
    };
    let mut out = vec![
        reference,
        Variant {
            sampling: false,
            ..reference
        },
    ];
    for loss in [
        ContactLoss::Bce,
        ContactLoss::Focal { gamma },
        ContactLoss::ClassBalanced { beta },
    ] {
        out.push(Variant { loss, ..reference });
    }
    for init in InitMode::ALL
        .into_iter()
        .filter(|&m| m != InitMode::Learned)
    {
        out.push(Variant { init, ..reference });
    }
    out
}

/// Trains every variant on the training part of the deterministic 80/20
/// split and evaluates it on the held-out part. Variants run in parallel;
/// rows come back in input order.
pub fn run_ablation(
    dataset: &ContactDataset,
    topology: &MeshTopology,
    variants: &[Variant],
    config: &AblationConfig,
) -> Result<Vec<AblationRow>> {
    let (train_idx, test_idx) = dataset.holdout_split();
    if train_idx.is_empty() || test_idx.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "holdout split left {} training and {} test samples",
            train_idx.len(),
            test_idx.len()
        )));
    }
    let train_set = dataset.subset(&train_idx)?;
    let test_set = dataset.subset(&test_idx)?;
    let plan_config = PlanConfig {
        bins: config.bins,
        curvature: config.curvature,
        total: Some(config.steps),
        seed: config.seed,
    };
    let balanced = build_plan(&train_set, &plan_config)?.resampled;
    let all: Vec<usize> = (0..train_set.len()).collect();
    let uniform = uniform_sequence(&all, config.steps, config.seed)?;

    variants
        .par_iter()
        .map(|variant| {
            let train_config = TrainConfig {
                steps: config.steps,
                step_size: config.step_size,
                seed: config.seed,
                loss: variant.loss,
                weights: config.weights,
                init_mode: variant.init,
                level_sizes: None,
                normalize_weights: config.normalize_weights,
            };
            let sequence = if variant.sampling {
                &balanced
            } else {
                &uniform
            };
            let outcome = train_new(&train_set, sequence, topology, &train_config)?;
            Ok(AblationRow {
                variant: *variant,
                report: evaluate_head(&outcome.head, &test_set, config.averaging)?,
                final_train_loss: outcome.final_loss,
            })
        })
        .collect()
}

pub fn write_ablation_csv<W: Write + ?Sized>(
    rows: &[AblationRow],
    seed: u64,
    w: &mut W,
) -> std::io::Result<()> {
    writeln!(
        w,
        "sampling,loss,init,seed,precision,recall,f1,evaluated,skipped,train_loss"
    )?;
    for row in rows {
        let r = &row.report;
        writeln!(
            w,
            "{},{},{},{seed},{:.6},{:.6},{:.6},{},{},{:.6}",
            if row.variant.sampling { "on" } else { "off" },
            row.variant.loss,
            row.variant.init,
            r.precision,
            r.recall,
            r.f1,
            r.evaluated_count,
            r.skipped_count,
            row.final_train_loss,
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{generate_synthetic, SyntheticConfig};

    #[test]
    fn default_grid_covers_each_factor() {
        let v = default_variants(0.9999, 2.0);
        assert_eq!(v.len(), 9);
        assert!(v.iter().any(|x| !x.sampling));
        for name in ["bce", "focal", "cb", "vcb"] {
            assert!(v.iter().any(|x| x.loss.name() == name));
        }
        for m in InitMode::ALL {
            assert!(v.iter().any(|x| x.init == m));
        }
    }

    #[test]
    fn small_ablation_is_deterministic() {
        let b = generate_synthetic(&SyntheticConfig {
            samples: 200,
            ..SyntheticConfig::default()
        })
        .unwrap();
        let cfg = AblationConfig {
            steps: 100,
            ..AblationConfig::default()
        };
        let variants = default_variants(0.9999, 2.0);
        let a = run_ablation(&b.dataset, &b.mesh.topology, &variants, &cfg).unwrap();
        let again = run_ablation(&b.dataset, &b.mesh.topology, &variants, &cfg).unwrap();
        assert_eq!(a, again);
        let (mut x, mut y) = (Vec::new(), Vec::new());
        write_ablation_csv(&a, 1, &mut x).unwrap();
        write_ablation_csv(&again, 1, &mut y).unwrap();
        assert_eq!(x, y);
        assert_eq!(
            String::from_utf8(x).unwrap().lines().count(),
            variants.len() + 1
        );
        let test_size = b.dataset.holdout_split().1.len();
        for row in &a {
            assert_eq!(
                row.report.evaluated_count + row.report.skipped_count,
                test_size
            );
        }
    }
}
