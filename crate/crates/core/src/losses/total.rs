use std::fmt;

use super::balanced::{weighted_bce, BalanceCounts, ClassBalanceConfig};
use super::{bce, focal_loss, regularization_loss, smoothness_loss, LossValue, SMOOTHNESS_EPSILON};
use crate::dataset::{ClassCounts, ContactDataset};
use crate::error::{check_len, Error, Result};
use crate::mesh::{LevelRegressor, MeshTopology};

/// The per-vertex classification term of the training objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContactLoss {
    Bce,
    Focal { gamma: f64 },
    ClassBalanced { beta: f64 },
    VertexClassBalanced { beta: f64 },
}

impl ContactLoss {
    pub fn name(&self) -> &'static str {
        match self {
            ContactLoss::Bce => "bce",
            ContactLoss::Focal { .. } => "focal",
            ContactLoss::ClassBalanced { .. } => "cb",
            ContactLoss::VertexClassBalanced { .. } => "vcb",
        }
    }

    /// Parses `bce`, `focal`, `cb` or `vcb`, filling in the given β and γ.
    pub fn from_name(name: &str, beta: f64, gamma: f64) -> Option<Self> {
        match name {
            "bce" => Some(ContactLoss::Bce),
            "focal" => Some(ContactLoss::Focal { gamma }),
            "cb" => Some(ContactLoss::ClassBalanced { beta }),
            "vcb" => Some(ContactLoss::VertexClassBalanced { beta }),
            _ => None,
        }
    }
}

impl fmt::Display for ContactLoss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossWeights {
    pub contact: f64,
    pub regularization: f64,
    pub smoothness: f64,
}

impl Default for LossWeights {
    fn default() -> Self {
        Self {
            contact: 1.0,
            regularization: 0.1,
            smoothness: 1.0,
        }
    }
}

impl LossWeights {
    pub fn validate(&self) -> Result<()> {
        let all = [self.contact, self.regularization, self.smoothness];
        if all.iter().any(|w| !(*w >= 0.0 && w.is_finite())) {
            return Err(Error::InvalidParameter(format!(
                "loss weights must be >= 0: {self:?}"
            )));
        }
        Ok(())
    }
}

/// Dataset statistics the losses depend on.
#[derive(Debug, Clone, PartialEq)]
pub struct LossStatistics {
    pub contact_mean: Vec<f64>,
    pub vertex_counts: Vec<ClassCounts>,
    pub global_counts: ClassCounts,
}

impl From<&ContactDataset> for LossStatistics {
    fn from(ds: &ContactDataset) -> Self {
        Self {
            contact_mean: ds.contact_mean().to_vec(),
            vertex_counts: ds.vertex_class_counts().to_vec(),
            global_counts: ds.global_class_counts(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LossReport {
    /// Contact term averaged over levels.
    pub contact: f64,
    /// Contact term at each level, full resolution first.
    pub level_contact: Vec<f64>,
    pub regularization: f64,
    pub smoothness: f64,
    pub weights: LossWeights,
    pub total: f64,
    /// `d total / d logit` at full resolution.
    pub gradient: Vec<f64>,
}

/// Precomputed supervision for repeated loss evaluation: the mesh, the
/// level regressors, and class-balance weights projected to every level.
#[derive(Debug, Clone)]
pub struct LossContext {
    topology: MeshTopology,
    regressor: LevelRegressor,
    contact_mean: Vec<f64>,
    contact: ContactLoss,
    weights: LossWeights,
    level_balance: Vec<Option<ClassBalanceConfig>>,
}

fn project_counts(
    regressor: &LevelRegressor,
    level: usize,
    counts: &[ClassCounts],
) -> Vec<ClassCounts> {
    let m = &regressor.matrices()[level];
    let neg: Vec<f64> = counts.iter().map(|c| c.negative as f64).collect();
    let pos: Vec<f64> = counts.iter().map(|c| c.positive as f64).collect();
    m.mul_vec(&neg)
        .into_iter()
        .zip(m.mul_vec(&pos))
        .map(|(n, p)| ClassCounts::new(n.round() as u64, p.round() as u64))
        .collect()
}

impl LossContext {
    pub fn new(
        topology: &MeshTopology,
        regressor: &LevelRegressor,
        stats: &LossStatistics,
        contact: ContactLoss,
        weights: LossWeights,
    ) -> Result<Self> {
        let v = topology.vertex_count();
        check_len("level regressor resolution", v, regressor.full_resolution())?;
        check_len("contact mean", v, stats.contact_mean.len())?;
        check_len("per-vertex counts", v, stats.vertex_counts.len())?;
        weights.validate()?;
        if let ContactLoss::Focal { gamma } = contact {
            if !(gamma >= 0.0 && gamma.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "focal gamma must be >= 0, got {gamma}"
                )));
            }
        }
        let level_balance = (0..regressor.level_count())
            .map(|level| match contact {
                ContactLoss::ClassBalanced { beta } => {
                    ClassBalanceConfig::global(beta, stats.global_counts).map(Some)
                }
                ContactLoss::VertexClassBalanced { beta } => ClassBalanceConfig::per_vertex(
                    beta,
                    project_counts(regressor, level, &stats.vertex_counts),
                )
                .map(Some),
                _ => Ok(None),
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            topology: topology.clone(),
            regressor: regressor.clone(),
            contact_mean: stats.contact_mean.clone(),
            contact,
            weights,
            level_balance,
        })
    }

    /// Normalizes the class-balanced weights of every level (see
    /// [`ClassBalanceConfig::normalized`]); no effect on BCE or focal.
    pub fn with_normalized_weights(mut self, on: bool) -> Self {
        self.level_balance = self
            .level_balance
            .into_iter()
            .map(|cfg| cfg.map(|c| c.normalized(on)))
            .collect();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.topology.vertex_count()
    }

    pub fn contact_loss(&self) -> ContactLoss {
        self.contact
    }

    pub fn weights(&self) -> LossWeights {
        self.weights
    }

    fn contact_term(&self, level: usize, logits: &[f64], labels: &[bool]) -> Result<LossValue> {
        match (self.contact, &self.level_balance[level]) {
            (ContactLoss::Bce, _) => bce(logits, labels),
            (ContactLoss::Focal { gamma }, _) => focal_loss(logits, labels, gamma),
            (_, Some(cfg)) => {
                let table: Vec<[f64; 2]> = match cfg.counts() {
                    BalanceCounts::Global(_) => vec![cfg.vertex_weights(0); logits.len()],
                    BalanceCounts::PerVertex(c) => {
                        (0..c.len()).map(|v| cfg.vertex_weights(v)).collect()
                    }
                };
                Ok(weighted_bce(logits, labels, |i| table[i]))
            }
            (_, None) => unreachable!("class-balanced losses always carry a config"),
        }
    }

    /// Weighted total of the multi-level contact term, regularization and
    /// smoothness, with its full-resolution logit gradient.
    ///
    /// Coarse levels see `J·z` as logits and `J·y ≥ 0.5` as labels; their
    /// gradients are pulled back through `Jᵀ` and averaged with the
    /// full-resolution level.
    pub fn evaluate(&self, logits: &[f64], labels: &[bool]) -> Result<LossReport> {
        let v = self.vertex_count();
        check_len("logits", v, logits.len())?;
        check_len("labels", v, labels.len())?;
        let label_values: Vec<f64> = labels.iter().map(|&y| f64::from(u8::from(y))).collect();

        let levels = self.regressor.level_count();
        let mut level_contact = Vec::with_capacity(levels);
        let mut contact_grad = vec![0.0; v];
        for (level, m) in self.regressor.matrices().iter().enumerate() {
            let z = m.mul_vec(logits);
            let y: Vec<bool> = m
                .mul_vec(&label_values)
                .into_iter()
                .map(|p| p >= 0.5)
                .collect();
            let term = self.contact_term(level, &z, &y)?;
            level_contact.push(term.value);
            for (g, back) in contact_grad
                .iter_mut()
                .zip(m.transpose_mul_vec(&term.gradient))
            {
                *g += back;
            }
        }
        let scale = levels as f64;
        let contact = level_contact.iter().sum::<f64>() / scale;
        for g in &mut contact_grad {
            *g /= scale;
        }

        let reg = regularization_loss(logits, &self.contact_mean)?;
        let smooth = smoothness_loss(logits, &self.topology, SMOOTHNESS_EPSILON)?;
        let w = self.weights;
        let total =
            w.contact * contact + w.regularization * reg.value + w.smoothness * smooth.value;
        let gradient = contact_grad
            .iter()
            .zip(&reg.gradient)
            .zip(&smooth.gradient)
            .map(|((c, r), s)| w.contact * c + w.regularization * r + w.smoothness * s)
            .collect();
        Ok(LossReport {
            contact,
            level_contact,
            regularization: reg.value,
            smoothness: smooth.value,
            weights: w,
            total,
            gradient,
        })
    }
}

/// One-shot evaluation; build a [`LossContext`] for repeated calls.
pub fn total_loss(
    logits: &[f64],
    labels: &[bool],
    topology: &MeshTopology,
    stats: &LossStatistics,
    regressor: &LevelRegressor,
    contact: ContactLoss,
    weights: LossWeights,
) -> Result<LossReport> {
    LossContext::new(topology, regressor, stats, contact, weights)?.evaluate(logits, labels)
}
