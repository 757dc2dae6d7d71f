//! Contact samples, dataset-wide statistics, manifests and the synthetic
//! imbalanced benchmark.

mod manifest;
mod synthetic;

use std::fmt;
use std::io::Write;

pub use manifest::{load_manifest, read_manifest, save_manifest, write_manifest};
pub use synthetic::{generate_synthetic, SyntheticBenchmark, SyntheticConfig, FEATURE_NOISE};

use crate::error::{Error, Result};

/// One hand instance: a binary per-vertex contact vector and the feature
/// vector the contact head reads.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactSample {
    pub id: String,
    pub features: Vec<f64>,
    pub contact: Vec<bool>,
}

impl ContactSample {
    pub fn contact_count(&self) -> usize {
        self.contact.iter().filter(|&&c| c).count()
    }

    pub fn is_empty_contact(&self) -> bool {
        !self.contact.iter().any(|&c| c)
    }

    pub fn labels(&self) -> Vec<f64> {
        self.contact
            .iter()
            .map(|&c| f64::from(u8::from(c)))
            .collect()
    }
}

/// Per-class label counts `(n_0, n_1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassCounts {
    pub negative: u64,
    pub positive: u64,
}

impl ClassCounts {
    pub fn new(negative: u64, positive: u64) -> Self {
        Self { negative, positive }
    }

    pub fn total(&self) -> u64 {
        self.negative + self.positive
    }

    /// `n_0 / n_1`, infinite when there are no positives.
    pub fn imbalance_ratio(&self) -> f64 {
        if self.positive == 0 {
            f64::INFINITY
        } else {
            self.negative as f64 / self.positive as f64
        }
    }
}

/// Ordered samples plus cached per-vertex contact mean and class counts.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactDataset {
    vertex_count: usize,
    feature_dim: usize,
    samples: Vec<ContactSample>,
    contact_mean: Vec<f64>,
    vertex_class_counts: Vec<ClassCounts>,
    global_class_counts: ClassCounts,
}

/// Validates the samples and computes the dataset-wide statistics.
pub fn compute_statistics(samples: Vec<ContactSample>) -> Result<ContactDataset> {
    let first = samples.first().ok_or(Error::NoSamples)?;
    let v = first.contact.len();
    let d = first.features.len();
    let mut positives = vec![0u64; v];
    for (i, s) in samples.iter().enumerate() {
        if s.contact.len() != v {
            return Err(Error::MixedVertexCount {
                index: i,
                expected: v,
                actual: s.contact.len(),
            });
        }
        if s.features.len() != d {
            return Err(Error::InvalidParameter(format!(
                "sample {i} has {} features, expected {d}",
                s.features.len()
            )));
        }
        if s.features.iter().any(|f| !f.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sample {i} has non-finite features"
            )));
        }
        for (count, &c) in positives.iter_mut().zip(&s.contact) {
            *count += u64::from(c);
        }
    }
    let n = samples.len() as u64;
    let vertex_class_counts: Vec<ClassCounts> = positives
        .iter()
        .map(|&p| ClassCounts::new(n - p, p))
        .collect();
    let global_class_counts = vertex_class_counts
        .iter()
        .fold(ClassCounts::default(), |acc, c| {
            ClassCounts::new(acc.negative + c.negative, acc.positive + c.positive)
        });
    let contact_mean = positives.iter().map(|&p| p as f64 / n as f64).collect();
    Ok(ContactDataset {
        vertex_count: v,
        feature_dim: d,
        samples,
        contact_mean,
        vertex_class_counts,
        global_class_counts,
    })
}

impl ContactDataset {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn feature_dim(&self) -> usize {
        self.feature_dim
    }

    pub fn samples(&self) -> &[ContactSample] {
        &self.samples
    }

    pub fn sample(&self, i: usize) -> &ContactSample {
        &self.samples[i]
    }

    /// Per-vertex contact frequency `n_{1,v} / N`.
    pub fn contact_mean(&self) -> &[f64] {
        &self.contact_mean
    }

    pub fn vertex_class_counts(&self) -> &[ClassCounts] {
        &self.vertex_class_counts
    }

    pub fn global_class_counts(&self) -> ClassCounts {
        self.global_class_counts
    }

    pub fn imbalance_ratio(&self) -> f64 {
        self.global_class_counts.imbalance_ratio()
    }

    pub fn empty_sample_count(&self) -> usize {
        self.samples.iter().filter(|s| s.is_empty_contact()).count()
    }

    /// Mean of the contact frequency over a vertex subset.
    pub fn region_mean(&self, region: &[usize]) -> f64 {
        if region.is_empty() {
            return 0.0;
        }
        region.iter().map(|&v| self.contact_mean[v]).sum::<f64>() / region.len() as f64
    }

    /// New dataset over the given sample indices, with its own statistics.
    pub fn subset(&self, indices: &[usize]) -> Result<ContactDataset> {
        let samples = indices.iter().map(|&i| self.samples[i].clone()).collect();
        compute_statistics(samples)
    }

    /// Deterministic 80/20 split by a stable hash of each sample id.
    /// Returns `(train, test)` index lists in dataset order.
    pub fn holdout_split(&self) -> (Vec<usize>, Vec<usize>) {
        (0..self.len()).partition(|&i| !is_holdout_id(&self.samples[i].id))
    }

    pub fn summary(&self) -> DatasetSummary {
        DatasetSummary {
            samples: self.len(),
            vertex_count: self.vertex_count,
            feature_dim: self.feature_dim,
            empty_samples: self.empty_sample_count(),
            counts: self.global_class_counts,
            regions: Vec::new(),
        }
    }
}

/// 64-bit FNV-1a; stable across platforms and compiler versions.
pub fn stable_hash(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Samples whose id hashes to 0 mod 5 form the held-out fifth.
pub fn is_holdout_id(id: &str) -> bool {
    stable_hash(id.as_bytes()).is_multiple_of(5)
}

/// Printable statistics block.
#[derive(Debug, Clone)]
pub struct DatasetSummary {
    pub samples: usize,
    pub vertex_count: usize,
    pub feature_dim: usize,
    pub empty_samples: usize,
    pub counts: ClassCounts,
    /// `(name, mean contact)` per named vertex region.
    pub regions: Vec<(String, f64)>,
}

impl fmt::Display for DatasetSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N={}", self.samples)?;
        writeln!(f, "V={}", self.vertex_count)?;
        writeln!(f, "d={}", self.feature_dim)?;
        writeln!(f, "empty_samples={}", self.empty_samples)?;
        writeln!(f, "non_contact_labels={}", self.counts.negative)?;
        writeln!(f, "contact_labels={}", self.counts.positive)?;
        let ratio = self.counts.imbalance_ratio();
        if ratio.is_finite() {
            writeln!(f, "imbalance_ratio={ratio:.4}:1")?;
        } else {
            writeln!(f, "imbalance_ratio=inf (no contact labels)")?;
        }
        for (name, mean) in &self.regions {
            writeln!(f, "mean_contact[{name}]={mean:.6}")?;
        }
        Ok(())
    }
}

/// Heatmap CSV `vertex_index,mean_contact`.
pub fn write_heatmap<W: Write + ?Sized>(values: &[f64], w: &mut W) -> std::io::Result<()> {
    writeln!(w, "vertex_index,mean_contact")?;
    for (i, v) in values.iter().enumerate() {
        writeln!(w, "{i},{v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample(id: &str, contact: &[u8]) -> ContactSample {
        ContactSample {
            id: id.into(),
            features: vec![0.0],
            contact: contact.iter().map(|&c| c == 1).collect(),
        }
    }

    #[test]
    fn two_sample_statistics() {
        let ds = compute_statistics(vec![sample("a", &[1, 0]), sample("b", &[0, 0])]).unwrap();
        assert_eq!(ds.contact_mean(), &[0.5, 0.0]);
        assert_eq!(ds.global_class_counts(), ClassCounts::new(3, 1));
        assert_eq!(ds.imbalance_ratio(), 3.0);
        assert_eq!(ds.vertex_class_counts()[0], ClassCounts::new(1, 1));
    }

    #[test]
    fn all_zero_dataset() {
        let ds =
            compute_statistics(vec![sample("a", &[0, 0, 0]), sample("b", &[0, 0, 0])]).unwrap();
        assert!(ds.contact_mean().iter().all(|&m| m == 0.0));
        assert!(ds.imbalance_ratio().is_infinite());
        assert!(ds.summary().to_string().contains("imbalance_ratio=inf"));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(compute_statistics(vec![]), Err(Error::NoSamples)));
        assert!(matches!(
            compute_statistics(vec![sample("a", &[1, 0]), sample("b", &[0])]),
            Err(Error::MixedVertexCount { index: 1, .. })
        ));
        let mut bad = sample("c", &[1]);
        bad.features[0] = f64::NAN;
        assert!(compute_statistics(vec![bad]).is_err());
    }

    #[test]
    fn fnv_reference_values() {
        assert_eq!(stable_hash(b""), 0xcbf29ce484222325);
        assert_eq!(stable_hash(b"a"), 0xaf63dc4c8601ec8c);
    }

    #[test]
    fn heatmap_csv() {
        let mut buf = Vec::new();
        write_heatmap(&[0.0, 0.25], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "vertex_index,mean_contact\n0,0\n1,0.25\n"
        );
    }

    proptest! {
        #[test]
        fn statistics_invariants(
            rows in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 6), 1..30),
            rot in 0usize..30,
        ) {
            let samples: Vec<ContactSample> = rows
                .iter()
                .enumerate()
                .map(|(i, c)| ContactSample { id: format!("s{i}"), features: vec![], contact: c.clone() })
                .collect();
            let ds = compute_statistics(samples.clone()).unwrap();
            let n = samples.len() as u64;
            let total: u64 = samples.iter().map(|s| s.contact_count() as u64).sum();
            let mean_total: f64 = ds.contact_mean().iter().sum::<f64>() * n as f64;
            prop_assert!((mean_total - total as f64).abs() < 1e-6);
            prop_assert_eq!(ds.global_class_counts().positive, total);
            for (v, c) in ds.vertex_class_counts().iter().enumerate() {
                prop_assert_eq!(c.total(), n);
                prop_assert!((ds.contact_mean()[v] - c.positive as f64 / n as f64).abs() < 1e-12);
            }
            let mut rotated = samples;
            let k = rot % rotated.len();
            rotated.rotate_left(k);
            let ds2 = compute_statistics(rotated).unwrap();
            prop_assert_eq!(ds.contact_mean(), ds2.contact_mean());
            prop_assert_eq!(ds.vertex_class_counts(), ds2.vertex_class_counts());
        }
    }
}
