use super::{kink_sign, sigmoid, LossValue};
use crate::error::{check_len, Error, Result};
use crate::mesh::MeshTopology;

pub const SMOOTHNESS_EPSILON: f64 = 1e-8;

/// Isolation-based smoothness loss on the mesh graph.
///
/// With unnormalized neighbor sums `p̂_v = Σ_u A_vu p_u` and
/// `q̂_v = Σ_u A_vu (1 − p_u)`, each vertex scores
/// `s_v = |p_v − p̂_v| + |(1 − p_v) − q̂_v|` and the loss is
/// `ln(1 + Σ s_v / (Σ deg_v + ε))`.
pub fn smoothness_loss(logits: &[f64], topology: &MeshTopology, epsilon: f64) -> Result<LossValue> {
    check_len("smoothness logits", topology.vertex_count(), logits.len())?;
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be >= 0, got {epsilon}"
        )));
    }
    let p: Vec<f64> = logits.iter().map(|&z| sigmoid(z)).collect();
    let adjacency = topology.adjacency();

    let mut isolation = 0.0;
    let mut degree_sum = 0.0;
    // d s_v / d p_v through the two absolute values, before neighbor terms
    let mut local = vec![0.0; p.len()];
    for (v, nbrs) in adjacency.iter().enumerate() {
        let p_hat: f64 = nbrs.iter().map(|&u| p[u]).sum();
        let q_hat: f64 = nbrs.iter().map(|&u| 1.0 - p[u]).sum();
        let a = p[v] - p_hat;
        let b = (1.0 - p[v]) - q_hat;
        isolation += a.abs() + b.abs();
        degree_sum += nbrs.len() as f64;
        local[v] = kink_sign(a) - kink_sign(b);
    }
    let denom = degree_sum + epsilon;
    let value = (isolation / denom).ln_1p();
    let outer = 1.0 / (denom + isolation);

    let gradient = adjacency
        .iter()
        .enumerate()
        .map(|(w, nbrs)| {
            let d_p = local[w] - nbrs.iter().map(|&v| local[v]).sum::<f64>();
            outer * d_p * sigmoid(logits[w]) * sigmoid(-logits[w])
        })
        .collect();
    Ok(LossValue { value, gradient })
}

/// Mean absolute deviation of the predicted probabilities from the
/// dataset-wide contact mean.
pub fn regularization_loss(logits: &[f64], contact_mean: &[f64]) -> Result<LossValue> {
    check_len("contact mean", logits.len(), contact_mean.len())?;
    if contact_mean.iter().any(|m| !(0.0..=1.0).contains(m)) {
        return Err(Error::InvalidParameter(
            "contact mean must lie in [0, 1]".into(),
        ));
    }
    let v = logits.len() as f64;
    let mut sum = 0.0;
    let gradient = logits
        .iter()
        .zip(contact_mean)
        .map(|(&z, &m)| {
            let diff = sigmoid(z) - m;
            sum += diff.abs();
            kink_sign(diff) * sigmoid(z) * sigmoid(-z) / v
        })
        .collect();
    Ok(LossValue {
        value: sum / v,
        gradient,
    })
}
