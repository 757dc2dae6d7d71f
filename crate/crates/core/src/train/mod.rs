//! Toy per-vertex contact head, deterministic gradient-descent training and
//! the evaluation protocol.

mod ablation;
mod head;
mod metrics;

pub use ablation::{
    default_variants, run_ablation, write_ablation_csv, AblationConfig, AblationRow, Variant,
};
pub use head::{ContactHead, InitMode, DECISION_THRESHOLD, SATURATED_LOGIT, WEIGHT_INIT_SCALE};
pub use metrics::{evaluate, Averaging, Confusion, EvalReport};

use rayon::prelude::*;

use crate::dataset::ContactDataset;
use crate::error::{check_len, Error, Result};
use crate::losses::{ContactLoss, LossContext, LossStatistics, LossWeights, DEFAULT_LOSS_BETA};
use crate::mesh::{build_level_regressors, default_level_sizes, MeshTopology};

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub steps: usize,
    pub step_size: f64,
    pub seed: u64,
    pub loss: ContactLoss,
    pub weights: LossWeights,
    pub init_mode: InitMode,
    /// Multi-level supervision sizes, full resolution first; `None` uses
    /// the default levels for the mesh.
    pub level_sizes: Option<Vec<usize>>,
    /// Rescale class-balanced weight pairs to sum to 2 per vertex.
    pub normalize_weights: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            steps: 2000,
            step_size: 0.05,
            seed: 1,
            loss: ContactLoss::VertexClassBalanced {
                beta: DEFAULT_LOSS_BETA,
            },
            weights: LossWeights::default(),
            init_mode: InitMode::Learned,
            level_sizes: None,
            normalize_weights: true,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::InvalidParameter("steps must be >= 1".into()));
        }
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "step size must be > 0, got {}",
                self.step_size
            )));
        }
        self.weights.validate()
    }

    /// Loss context for `topology` with statistics from `dataset`.
    pub fn loss_context(
        &self,
        dataset: &ContactDataset,
        topology: &MeshTopology,
    ) -> Result<LossContext> {
        let sizes = match &self.level_sizes {
            Some(s) => s.clone(),
            None => default_level_sizes(topology.vertex_count()),
        };
        let regressor = build_level_regressors(topology, &sizes)?;
        Ok(LossContext::new(
            topology,
            &regressor,
            &LossStatistics::from(dataset),
            self.loss,
            self.weights,
        )?
        .with_normalized_weights(self.normalize_weights))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainOutcome {
    pub head: ContactHead,
    /// Total loss of the sample used at each step, before its update.
    pub step_losses: Vec<f64>,
    /// Mean total loss over the training set before and after training.
    pub initial_loss: f64,
    pub final_loss: f64,
}

/// Mean total loss of `head` over every sample of `dataset`.
pub fn mean_loss(head: &ContactHead, dataset: &ContactDataset, ctx: &LossContext) -> Result<f64> {
    let losses = dataset
        .samples()
        .par_iter()
        .map(|s| Ok(ctx.evaluate(&head.logits(&s.features)?, &s.contact)?.total))
        .collect::<Result<Vec<f64>>>()?;
    Ok(losses.iter().sum::<f64>() / losses.len().max(1) as f64)
}

/// Plain gradient descent, one sample per step, walking `sequence` in order
/// (and wrapping around if it is shorter than `steps`).
pub fn train(
    mut head: ContactHead,
    dataset: &ContactDataset,
    sequence: &[usize],
    topology: &MeshTopology,
    config: &TrainConfig,
) -> Result<TrainOutcome> {
    config.validate()?;
    check_len("head vertices", dataset.vertex_count(), head.vertex_count())?;
    check_len("head features", dataset.feature_dim(), head.feature_dim())?;
    if sequence.is_empty() {
        return Err(Error::InvalidParameter("empty training sequence".into()));
    }
    if let Some(&bad) = sequence.iter().find(|&&i| i >= dataset.len()) {
        return Err(Error::InvalidParameter(format!(
            "sample index {bad} out of range for {} samples",
            dataset.len()
        )));
    }
    let ctx = config.loss_context(dataset, topology)?;
    let initial_loss = mean_loss(&head, dataset, &ctx)?;
    let update_bias = config.init_mode.bias_trainable();
    let mut step_losses = Vec::with_capacity(config.steps);
    for (step, &i) in sequence.iter().cycle().take(config.steps).enumerate() {
        let sample = dataset.sample(i);
        let report = ctx.evaluate(&head.logits(&sample.features)?, &sample.contact)?;
        if !report.total.is_finite() || report.gradient.iter().any(|g| !g.is_finite()) {
            return Err(Error::Diverged { step });
        }
        step_losses.push(report.total);
        head.gradient_step(
            &sample.features,
            &report.gradient,
            config.step_size,
            update_bias,
        );
    }
    let final_loss = mean_loss(&head, dataset, &ctx)?;
    if !final_loss.is_finite() {
        return Err(Error::Diverged { step: config.steps });
    }
    Ok(TrainOutcome {
        head,
        step_losses,
        initial_loss,
        final_loss,
    })
}

/// Initializes a head from the config (weights seeded by `config.seed`,
/// bias from the init mode and the dataset mean) and trains it.
pub fn train_new(
    dataset: &ContactDataset,
    sequence: &[usize],
    topology: &MeshTopology,
    config: &TrainConfig,
) -> Result<TrainOutcome> {
    let head = ContactHead::initialize(
        dataset.feature_dim(),
        config.init_mode,
        dataset.contact_mean(),
        config.seed,
    );
    train(head, dataset, sequence, topology, config)
}

/// Binary predictions of `head` for every sample, in dataset order.
pub fn predict_dataset(head: &ContactHead, dataset: &ContactDataset) -> Result<Vec<Vec<bool>>> {
    dataset
        .samples()
        .par_iter()
        .map(|s| head.predict_contact(&s.features))
        .collect()
}

/// Evaluates `head` on `dataset` under the skip rule.
pub fn evaluate_head(
    head: &ContactHead,
    dataset: &ContactDataset,
    averaging: Averaging,
) -> Result<EvalReport> {
    check_len("head vertices", dataset.vertex_count(), head.vertex_count())?;
    let predictions = predict_dataset(head, dataset)?;
    let truth: Vec<Vec<bool>> = dataset
        .samples()
        .iter()
        .map(|s| s.contact.clone())
        .collect();
    evaluate(&predictions, &truth, averaging)
}
