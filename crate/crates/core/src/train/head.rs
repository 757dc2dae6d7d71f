use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{check_len, Error, Result};
use crate::io_util::write_atomic;
use crate::losses::sigmoid;

/// Bias magnitude for the constant no-contact / full-contact baselines.
pub const SATURATED_LOGIT: f64 = 40.0;
/// Scale of the Gaussian initial weights.
pub const WEIGHT_INIT_SCALE: f64 = 0.01;
/// Probability threshold for binary contact predictions.
pub const DECISION_THRESHOLD: f64 = 0.5;

const MODEL_MAGIC: &[u8; 8] = b"CFHEAD\0\0";
const MODEL_VERSION: u32 = 1;

/// How the per-vertex contact bias is initialized and whether it trains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InitMode {
    /// Trainable bias starting at zero.
    Learned,
    /// No initialization: bias frozen at 0.
    Zero,
    /// Bias frozen at −40, i.e. σ ≈ 0 everywhere.
    ConstantNoContact,
    /// Bias frozen at +40, i.e. σ ≈ 1 everywhere.
    ConstantFullContact,
    /// Bias frozen at the logit of the dataset contact mean.
    DatasetMean,
}

impl InitMode {
    pub const ALL: [InitMode; 5] = [
        InitMode::Learned,
        InitMode::Zero,
        InitMode::ConstantNoContact,
        InitMode::ConstantFullContact,
        InitMode::DatasetMean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InitMode::Learned => "learned",
            InitMode::Zero => "zero",
            InitMode::ConstantNoContact => "constant_no_contact",
            InitMode::ConstantFullContact => "constant_full_contact",
            InitMode::DatasetMean => "dataset_mean",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == name)
    }

    pub fn bias_trainable(self) -> bool {
        self == InitMode::Learned
    }

    /// Initial bias vector; `contact_mean` is used only by `DatasetMean`.
    pub fn initial_bias(self, contact_mean: &[f64]) -> Vec<f64> {
        match self {
            InitMode::Learned | InitMode::Zero => vec![0.0; contact_mean.len()],
            InitMode::ConstantNoContact => vec![-SATURATED_LOGIT; contact_mean.len()],
            InitMode::ConstantFullContact => vec![SATURATED_LOGIT; contact_mean.len()],
            InitMode::DatasetMean => contact_mean
                .iter()
                .map(|&m| {
                    let m = m.clamp(1e-6, 1.0 - 1e-6);
                    (m / (1.0 - m)).ln()
                })
                .collect(),
        }
    }
}

impl fmt::Display for InitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-vertex logistic head: `logits(x) = W·x + bias`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactHead {
    vertex_count: usize,
    feature_dim: usize,
    /// Row-major `V × d`.
    weight: Vec<f64>,
    bias: Vec<f64>,
}

impl ContactHead {
    pub fn from_parts(
        vertex_count: usize,
        feature_dim: usize,
        weight: Vec<f64>,
        bias: Vec<f64>,
    ) -> Result<Self> {
        check_len("head weight", vertex_count * feature_dim, weight.len())?;
        check_len("head bias", vertex_count, bias.len())?;
        if vertex_count == 0 {
            return Err(Error::InvalidParameter(
                "head needs at least one vertex".into(),
            ));
        }
        if weight.iter().chain(&bias).any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "head parameters must be finite".into(),
            ));
        }
        Ok(Self {
            vertex_count,
            feature_dim,
            weight,
            bias,
        })
    }

    pub fn zeros(vertex_count: usize, feature_dim: usize) -> Self {
        Self {
            vertex_count,
            feature_dim,
            weight: vec![0.0; vertex_count * feature_dim],
            bias: vec![0.0; vertex_count],
        }
    }

    /// Small Gaussian weights drawn from `seed` and the bias prescribed by
    /// `init`.
    pub fn initialize(feature_dim: usize, init: InitMode, contact_mean: &[f64], seed: u64) -> Self {
        let v = contact_mean.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weight = (0..v * feature_dim)
            .map(|_| {
                let g: f64 = StandardNormal.sample(&mut rng);
                WEIGHT_INIT_SCALE * g
            })
            .collect();
        Self {
            vertex_count: v,
            feature_dim,
            weight,
            bias: init.initial_bias(contact_mean),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn feature_dim(&self) -> usize {
        self.feature_dim
    }

    pub fn weight(&self) -> &[f64] {
        &self.weight
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    pub fn logits(&self, features: &[f64]) -> Result<Vec<f64>> {
        check_len("features", self.feature_dim, features.len())?;
        Ok(self
            .weight
            .chunks_exact(self.feature_dim.max(1))
            .take(self.vertex_count)
            .zip(&self.bias)
            .map(|(row, b)| {
                if self.feature_dim == 0 {
                    *b
                } else {
                    row.iter().zip(features).map(|(w, x)| w * x).sum::<f64>() + b
                }
            })
            .collect())
    }

    /// Contact probabilities `σ(W·x + bias)`.
    pub fn predict(&self, features: &[f64]) -> Result<Vec<f64>> {
        Ok(self.logits(features)?.into_iter().map(sigmoid).collect())
    }

    /// Probabilities thresholded at 0.5.
    pub fn predict_contact(&self, features: &[f64]) -> Result<Vec<bool>> {
        Ok(self
            .predict(features)?
            .into_iter()
            .map(|p| p >= DECISION_THRESHOLD)
            .collect())
    }

    /// `W −= lr · g xᵀ`, and `bias −= lr · g` when the bias trains.
    pub(crate) fn gradient_step(
        &mut self,
        features: &[f64],
        logit_grad: &[f64],
        lr: f64,
        update_bias: bool,
    ) {
        let d = self.feature_dim;
        if d > 0 {
            for (row, &g) in self.weight.chunks_exact_mut(d).zip(logit_grad) {
                let s = lr * g;
                for (w, x) in row.iter_mut().zip(features) {
                    *w -= s * x;
                }
            }
        }
        if update_bias {
            for (b, &g) in self.bias.iter_mut().zip(logit_grad) {
                *b -= lr * g;
            }
        }
    }

    /// Binary model: magic, version, `V`, `d` (u64), then the row-major
    /// weights and the bias as little-endian f64.
    pub fn write_to<W: Write + ?Sized>(&self, w: &mut W) -> std::io::Result<()> {
        w.write_all(MODEL_MAGIC)?;
        w.write_all(&MODEL_VERSION.to_le_bytes())?;
        w.write_all(&(self.vertex_count as u64).to_le_bytes())?;
        w.write_all(&(self.feature_dim as u64).to_le_bytes())?;
        for x in self.weight.iter().chain(&self.bias) {
            w.write_all(&x.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)
            .map_err(|e| Error::InvalidModel(format!("read failed: {e}")))?;
        let header = MODEL_MAGIC.len() + 4 + 16;
        if bytes.len() < header || &bytes[..8] != MODEL_MAGIC {
            return Err(Error::InvalidModel("missing model header".into()));
        }
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
        let u64_at = |o: usize| u64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        let version = u32_at(8);
        if version != MODEL_VERSION {
            return Err(Error::InvalidModel(format!(
                "unsupported version {version}"
            )));
        }
        let (v, d) = (u64_at(12), u64_at(20));
        let count = v
            .checked_mul(d)
            .and_then(|n| n.checked_add(v))
            .and_then(|n| usize::try_from(n).ok())
            .ok_or_else(|| Error::InvalidModel("dimensions overflow".into()))?;
        if bytes.len() != header + 8 * count {
            return Err(Error::InvalidModel(format!(
                "expected {} parameter bytes for V={v} d={d}, found {}",
                8 * count,
                bytes.len() - header
            )));
        }
        let params: Vec<f64> = bytes[header..]
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        let (v, d) = (v as usize, d as usize);
        let (weight, bias) = params.split_at(v * d);
        Self::from_parts(v, d, weight.to_vec(), bias.to_vec())
            .map_err(|e| Error::InvalidModel(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_atomic(path, |w| self.write_to(w))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_from(std::io::BufReader::new(file))
    }
}
