use super::{sigmoid, softplus, LossValue};
use crate::error::{check_len, Error, Result};

pub const DEFAULT_FOCAL_GAMMA: f64 = 2.0;

/// Mean binary cross-entropy. Gradient is `(σ(z) − y) / V`.
pub fn bce(logits: &[f64], labels: &[bool]) -> Result<LossValue> {
    check_len("labels", logits.len(), labels.len())?;
    let v = logits.len() as f64;
    let mut sum = 0.0;
    let gradient = logits
        .iter()
        .zip(labels)
        .map(|(&z, &y)| {
            sum += if y { softplus(-z) } else { softplus(z) };
            (sigmoid(z) - if y { 1.0 } else { 0.0 }) / v
        })
        .collect();
    Ok(LossValue {
        value: sum / v,
        gradient,
    })
}

/// Mean focal loss `(1 − p_t)^γ · (−ln p_t)`; `γ = 0` is plain BCE.
pub fn focal_loss(logits: &[f64], labels: &[bool], gamma: f64) -> Result<LossValue> {
    check_len("labels", logits.len(), labels.len())?;
    if !(gamma >= 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "focal gamma must be >= 0, got {gamma}"
        )));
    }
    let v = logits.len() as f64;
    let mut sum = 0.0;
    let gradient = logits
        .iter()
        .zip(labels)
        .map(|(&z, &y)| {
            // t is the logit of the true class, so p_t = σ(t)
            let sign = if y { 1.0 } else { -1.0 };
            let t = sign * z;
            let miss = sigmoid(-t);
            let nll = softplus(-t);
            let modulation = miss.powf(gamma);
            sum += modulation * nll;
            let dt = -modulation * (gamma * sigmoid(t) * nll + miss);
            sign * dt / v
        })
        .collect();
    Ok(LossValue {
        value: sum / v,
        gradient,
    })
}
