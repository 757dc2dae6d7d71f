use crate::error::{check_len, Error, Result};

/// How per-sample counts are pooled into dataset metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Averaging {
    /// Mean of per-sample precision, recall and F1.
    #[default]
    PerSample,
    /// Precision, recall and F1 of the pooled TP/FP/FN counts.
    Micro,
}

impl Averaging {
    pub fn name(self) -> &'static str {
        match self {
            Averaging::PerSample => "per_sample",
            Averaging::Micro => "micro",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "per_sample" => Some(Averaging::PerSample),
            "micro" => Some(Averaging::Micro),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Confusion {
    pub tp: u64,
    pub fp: u64,
    pub fn_: u64,
}

impl Confusion {
    pub fn count(pred: &[bool], truth: &[bool]) -> Self {
        let mut c = Confusion::default();
        for (&p, &t) in pred.iter().zip(truth) {
            match (p, t) {
                (true, true) => c.tp += 1,
                (true, false) => c.fp += 1,
                (false, true) => c.fn_ += 1,
                (false, false) => {}
            }
        }
        c
    }

    /// `(precision, recall, f1)`, each 0 when its denominator vanishes.
    pub fn scores(&self) -> (f64, f64, f64) {
        let ratio = |num: u64, den: u64| {
            if den == 0 {
                0.0
            } else {
                num as f64 / den as f64
            }
        };
        let p = ratio(self.tp, self.tp + self.fp);
        let r = ratio(self.tp, self.tp + self.fn_);
        let f1 = if p + r == 0.0 {
            0.0
        } else {
            2.0 * p * r / (p + r)
        };
        (p, r, f1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub evaluated_count: usize,
    pub skipped_count: usize,
    /// False when every sample was skipped; the metrics are then 0.
    pub defined: bool,
    pub averaging: Averaging,
}

/// Precision, recall and F1 over samples whose ground truth has at least
/// one contact; samples without any contact are skipped, since recall is
/// undefined for them.
pub fn evaluate(
    predictions: &[Vec<bool>],
    truth: &[Vec<bool>],
    averaging: Averaging,
) -> Result<EvalReport> {
    check_len("prediction set", truth.len(), predictions.len())?;
    let v = truth.first().map_or(0, Vec::len);
    let mut evaluated = Vec::new();
    for (i, (pred, gt)) in predictions.iter().zip(truth).enumerate() {
        if gt.len() != v || pred.len() != v {
            return Err(Error::MixedVertexCount {
                index: i,
                expected: v,
                actual: if gt.len() != v { gt.len() } else { pred.len() },
            });
        }
        if gt.iter().any(|&c| c) {
            evaluated.push(Confusion::count(pred, gt));
        }
    }
    let n = evaluated.len();
    let (precision, recall, f1) = if n == 0 {
        (0.0, 0.0, 0.0)
    } else {
        match averaging {
            Averaging::PerSample => {
                let mut sums = (0.0, 0.0, 0.0);
                for c in &evaluated {
                    let (p, r, f) = c.scores();
                    sums = (sums.0 + p, sums.1 + r, sums.2 + f);
                }
                (sums.0 / n as f64, sums.1 / n as f64, sums.2 / n as f64)
            }
            Averaging::Micro => {
                let pooled = evaluated
                    .iter()
                    .fold(Confusion::default(), |a, c| Confusion {
                        tp: a.tp + c.tp,
                        fp: a.fp + c.fp,
                        fn_: a.fn_ + c.fn_,
                    });
                pooled.scores()
            }
        }
    };
    Ok(EvalReport {
        precision,
        recall,
        f1,
        evaluated_count: n,
        skipped_count: truth.len() - n,
        defined: n > 0,
        averaging,
    })
}
