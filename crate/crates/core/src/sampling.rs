//! Balanced contact sampling.
//!
//! Each sample gets a contact-balance score measuring how far its contact
//! pattern departs from the dataset mean. Scores are grouped into `K` bins
//! whose edges are log-spaced (finer towards high scores), and a training
//! stream is drawn with an equal quota from every non-empty bin.

use std::io::{BufRead, Write};

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::ContactDataset;
use crate::error::{check_len, Error, Result};

pub const DEFAULT_BINS: usize = 8;
pub const DEFAULT_CURVATURE: f64 = 5.0;

/// `(1/V) · (cᵀ(1 − c̄) − cᵀc̄)`; lies in `[-1, 1]`.
pub fn contact_balance_score(contact: &[bool], contact_mean: &[f64]) -> Result<f64> {
    check_len("contact mean", contact.len(), contact_mean.len())?;
    let (agree, disagree) = contact
        .iter()
        .zip(contact_mean)
        .filter(|(&c, _)| c)
        .fold((0.0, 0.0), |(a, d), (_, &m)| (a + (1.0 - m), d + m));
    Ok((agree - disagree) / contact.len() as f64)
}

pub fn balance_scores(dataset: &ContactDataset) -> Vec<f64> {
    dataset
        .samples()
        .iter()
        .map(|s| contact_balance_score(&s.contact, dataset.contact_mean()).expect("uniform V"))
        .collect()
}

/// `K + 1` bin edges. A degenerate set has a single bin covering one value.
#[derive(Debug, Clone, PartialEq)]
pub struct BinEdges {
    edges: Vec<f64>,
    degenerate: bool,
}

impl BinEdges {
    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn bin_count(&self) -> usize {
        self.edges.len() - 1
    }

    /// Set when the score range collapsed and every sample shares one bin.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    fn single(value_low: f64, value_high: f64) -> Self {
        Self {
            edges: vec![value_low, value_high],
            degenerate: true,
        }
    }
}

/// Log-spaced edges `τ_k = s_min + (s_max − s_min)·ln(1 + βk/K)/ln(1 + β)`.
pub fn compute_bin_edges(s_min: f64, s_max: f64, bins: usize, curvature: f64) -> Result<BinEdges> {
    if bins < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 bins, got {bins}"
        )));
    }
    if !(curvature > 0.0 && curvature.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "curvature must be positive, got {curvature}"
        )));
    }
    if !(s_min.is_finite() && s_max.is_finite()) || s_max < s_min {
        return Err(Error::InvalidParameter(format!(
            "invalid score range [{s_min}, {s_max}]"
        )));
    }
    if s_max == s_min {
        return Ok(BinEdges::single(s_min, s_max));
    }
    let range = s_max - s_min;
    let denom = curvature.ln_1p();
    let mut edges: Vec<f64> = (0..=bins)
        .map(|k| s_min + range * (curvature * k as f64 / bins as f64).ln_1p() / denom)
        .collect();
    edges[0] = s_min;
    edges[bins] = s_max;
    if edges.windows(2).any(|w| w[1] <= w[0]) {
        // range below floating resolution for this many bins
        return Ok(BinEdges::single(s_min, s_max));
    }
    Ok(BinEdges {
        edges,
        degenerate: false,
    })
}

/// Half-open bins `[τ_{k−1}, τ_k)`, except the last, which is closed.
pub fn assign_bins(scores: &[f64], edges: &BinEdges) -> Result<Vec<Vec<usize>>> {
    let e = &edges.edges;
    let (low, high) = (e[0], e[e.len() - 1]);
    let interior = &e[1..e.len() - 1];
    let mut bins = vec![Vec::new(); edges.bin_count()];
    for (i, &s) in scores.iter().enumerate() {
        if !(low..=high).contains(&s) {
            return Err(Error::ScoreOutOfRange {
                score: s,
                low,
                high,
            });
        }
        bins[interior.partition_point(|&t| t <= s)].push(i);
    }
    Ok(bins)
}

/// Per-bin draw counts: `⌊total/K'⌋` for each non-empty bin, with the
/// remainder going to the first non-empty bins. Empty bins get zero.
pub fn bin_quotas(bins: &[Vec<usize>], total: usize) -> Result<Vec<usize>> {
    let filled = bins.iter().filter(|b| !b.is_empty()).count();
    if filled == 0 {
        return Err(Error::AllBinsEmpty);
    }
    let base = total / filled;
    let mut extra = total % filled;
    Ok(bins
        .iter()
        .map(|b| {
            if b.is_empty() {
                0
            } else if extra > 0 {
                extra -= 1;
                base + 1
            } else {
                base
            }
        })
        .collect())
}

/// Draws `total` indices with equal quotas per non-empty bin.
///
/// A bin at least as large as its quota is sampled without replacement.
/// A smaller bin contributes every member once and fills the rest of its
/// quota with replacement. The concatenated draw is shuffled with the same
/// seeded generator.
pub fn stratified_resample(bins: &[Vec<usize>], total: usize, seed: u64) -> Result<Vec<usize>> {
    let quotas = bin_quotas(bins, total)?;
    if total < bins.len() {
        return Err(Error::InvalidParameter(format!(
            "total {total} is smaller than the bin count {}",
            bins.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(total);
    for (bin, &quota) in bins.iter().zip(&quotas) {
        if quota == 0 {
            continue;
        }
        if quota <= bin.len() {
            out.extend(
                index::sample(&mut rng, bin.len(), quota)
                    .into_iter()
                    .map(|j| bin[j]),
            );
        } else {
            out.extend_from_slice(bin);
            for _ in bin.len()..quota {
                out.push(bin[rng.random_range(0..bin.len())]);
            }
        }
    }
    out.shuffle(&mut rng);
    Ok(out)
}

/// A shuffled stream over `indices` without rebalancing: successive
/// permutations concatenated until `total` entries.
pub fn uniform_sequence(indices: &[usize], total: usize, seed: u64) -> Result<Vec<usize>> {
    if indices.is_empty() {
        return Err(Error::NoSamples);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(total);
    while out.len() < total {
        let mut perm = indices.to_vec();
        perm.shuffle(&mut rng);
        let take = (total - out.len()).min(perm.len());
        out.extend_from_slice(&perm[..take]);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanConfig {
    pub bins: usize,
    pub curvature: f64,
    /// Resampled stream length; `None` means the dataset size.
    pub total: Option<usize>,
    pub seed: u64,
}

impl Default for PlanConfig {
    fn default() -> Self {
        Self {
            bins: DEFAULT_BINS,
            curvature: DEFAULT_CURVATURE,
            total: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplingPlan {
    pub scores: Vec<f64>,
    pub edges: BinEdges,
    pub curvature: f64,
    pub bins: Vec<Vec<usize>>,
    pub resampled: Vec<usize>,
}

impl SamplingPlan {
    pub fn bin_count(&self) -> usize {
        self.bins.len()
    }

    /// Bin index of every sample.
    pub fn bin_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.scores.len()];
        for (k, bin) in self.bins.iter().enumerate() {
            for &i in bin {
                of[i] = k;
            }
        }
        of
    }

    /// How many resampled entries came from each bin.
    pub fn resampled_per_bin(&self) -> Vec<usize> {
        let of = self.bin_of();
        let mut counts = vec![0; self.bins.len()];
        for &i in &self.resampled {
            counts[of[i]] += 1;
        }
        counts
    }

    /// Plan CSV `position,sample_index,bin`.
    pub fn write_csv<W: Write + ?Sized>(&self, w: &mut W) -> std::io::Result<()> {
        let of = self.bin_of();
        writeln!(w, "position,sample_index,bin")?;
        for (pos, &i) in self.resampled.iter().enumerate() {
            writeln!(w, "{pos},{i},{}", of[i])?;
        }
        Ok(())
    }
}

/// Scores, bins and resamples a dataset in one pass.
pub fn build_plan(dataset: &ContactDataset, config: &PlanConfig) -> Result<SamplingPlan> {
    let scores = balance_scores(dataset);
    let s_min = scores.iter().copied().fold(f64::INFINITY, f64::min);
    let s_max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let edges = compute_bin_edges(s_min, s_max, config.bins, config.curvature)?;
    let bins = assign_bins(&scores, &edges)?;
    let total = config.total.unwrap_or(dataset.len());
    let resampled = stratified_resample(&bins, total, config.seed)?;
    Ok(SamplingPlan {
        scores,
        edges,
        curvature: config.curvature,
        bins,
        resampled,
    })
}

/// Plan for a given epoch, reseeded as `seed + epoch`.
pub fn build_epoch_plan(
    dataset: &ContactDataset,
    config: &PlanConfig,
    epoch: u64,
) -> Result<SamplingPlan> {
    build_plan(
        dataset,
        &PlanConfig {
            seed: config.seed.wrapping_add(epoch),
            ..config.clone()
        },
    )
}

/// Reads the sample-index column of a plan CSV, checking positions run
/// 0, 1, 2, ... and indices are below `sample_count`.
pub fn read_plan_csv<R: BufRead>(reader: R, name: &str, sample_count: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let lineno = n + 1;
        let line = line.map_err(|e| Error::io(name, e))?;
        let line = line.trim();
        if line.is_empty() || (lineno == 1 && line.starts_with("position")) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::parse(
                name,
                lineno,
                "expected `position,sample_index,bin`",
            ));
        }
        let parse = |t: &str| -> Result<usize> {
            t.trim()
                .parse()
                .map_err(|_| Error::parse(name, lineno, format!("bad integer {t:?}")))
        };
        let pos = parse(fields[0])?;
        let idx = parse(fields[1])?;
        parse(fields[2])?;
        if pos != out.len() {
            return Err(Error::parse(
                name,
                lineno,
                format!("expected position {}", out.len()),
            ));
        }
        if idx >= sample_count {
            return Err(Error::parse(
                name,
                lineno,
                format!("sample index {idx} out of range for {sample_count} samples"),
            ));
        }
        out.push(idx);
    }
    if out.is_empty() {
        return Err(Error::parse(name, 1, "plan is empty"));
    }
    Ok(out)
}
