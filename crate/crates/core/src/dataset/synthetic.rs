use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{compute_statistics, ContactDataset, ContactSample};
use crate::error::{Error, Result};
use crate::mesh::{make_proxy_mesh, ProxyMesh};

/// Standard deviation of the additive feature noise.
pub const FEATURE_NOISE: f64 = 0.1;

/// Hop radius of the contact patch around its center vertex.
const PATCH_RADIUS: usize = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    /// Proxy mesh subdivision level; fixes V.
    pub subdivisions: u32,
    pub samples: usize,
    pub feature_dim: usize,
    /// Exact fraction of samples with no contact at all.
    pub empty_fraction: f64,
    /// Relative weight of tip-region vertices when drawing a patch center.
    pub tip_boost: f64,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        Self {
            subdivisions: 2,
            samples: 2000,
            feature_dim: 16,
            empty_fraction: 0.7,
            tip_boost: 10.0,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticBenchmark {
    pub mesh: ProxyMesh,
    /// Row-major `d × V` projection from contact vectors to features.
    pub projection: Vec<f64>,
    pub dataset: ContactDataset,
}

impl SyntheticConfig {
    fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.empty_fraction) {
            return Err(Error::InvalidParameter(format!(
                "empty_fraction must be in [0, 1), got {}",
                self.empty_fraction
            )));
        }
        if !(self.tip_boost >= 1.0 && self.tip_boost.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tip_boost must be >= 1, got {}",
                self.tip_boost
            )));
        }
        if self.samples < 100 {
            return Err(Error::InvalidParameter(format!(
                "need at least 100 samples, got {}",
                self.samples
            )));
        }
        Ok(())
    }

    pub fn empty_count(&self) -> usize {
        (self.empty_fraction * self.samples as f64).round() as usize
    }
}

/// Generates the synthetic imbalanced contact benchmark.
///
/// A fixed quota of samples has no contact. Every other sample marks the
/// 2-hop graph ball around a center vertex, with centers drawn
/// `tip_boost` times more often from the tip cap. Features are
/// `M·c + σ·ε` for a fixed Gaussian projection `M`.
pub fn generate_synthetic(config: &SyntheticConfig) -> Result<SyntheticBenchmark> {
    config.validate()?;
    let mesh = make_proxy_mesh(config.subdivisions)?;
    let v = mesh.topology.vertex_count();
    let d = config.feature_dim;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let projection: Vec<f64> = (0..d * v).map(|_| rng.sample_normal()).collect();

    let mut is_empty = vec![false; config.samples];
    let mut order: Vec<usize> = (0..config.samples).collect();
    order.shuffle(&mut rng);
    for &i in &order[..config.empty_count()] {
        is_empty[i] = true;
    }

    let mut center_weight = vec![1.0; v];
    for &t in &mesh.tip_region {
        center_weight[t] = config.tip_boost;
    }
    let centers = WeightedIndex::new(&center_weight)
        .map_err(|e| Error::InvalidParameter(format!("center weights: {e}")))?;

    let mut samples = Vec::with_capacity(config.samples);
    for (i, &empty) in is_empty.iter().enumerate() {
        let mut contact = vec![false; v];
        if !empty {
            let center = centers.sample(&mut rng);
            for u in mesh.topology.graph_ball(center, PATCH_RADIUS) {
                contact[u] = true;
            }
        }
        let features = (0..d)
            .map(|row| {
                let signal: f64 = projection[row * v..(row + 1) * v]
                    .iter()
                    .zip(&contact)
                    .filter(|(_, &c)| c)
                    .map(|(m, _)| m)
                    .sum();
                signal + FEATURE_NOISE * rng.sample_normal()
            })
            .collect();
        samples.push(ContactSample {
            id: format!("syn{}-{i:05}", config.seed),
            features,
            contact,
        });
    }

    Ok(SyntheticBenchmark {
        mesh,
        projection,
        dataset: compute_statistics(samples)?,
    })
}

trait SampleNormal {
    fn sample_normal(&mut self) -> f64;
}

impl SampleNormal for ChaCha8Rng {
    fn sample_normal(&mut self) -> f64 {
        StandardNormal.sample(self)
    }
}
