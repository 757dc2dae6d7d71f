//! Central finite-difference checks for the analytic loss gradients.

use super::sigmoid;
use crate::mesh::MeshTopology;

/// `(f(x + h e_i) − f(x − h e_i)) / 2h` for every coordinate.
pub fn central_difference<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            probe[i] = x[i] + h;
            let up = f(&probe);
            probe[i] = x[i] - h;
            let down = f(&probe);
            probe[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}

/// Below this norm both gradients count as zero and the error is absolute.
pub const NEGLIGIBLE_NORM: f64 = 1e-10;

/// `‖a − n‖ / max(‖a‖, ‖n‖)`, falling back to `‖a − n‖` when both
/// gradients are negligible.
pub fn relative_error(analytic: &[f64], numeric: &[f64]) -> f64 {
    assert_eq!(analytic.len(), numeric.len(), "gradient lengths differ");
    let norm = |v: &mut dyn Iterator<Item = f64>| v.map(|x| x * x).sum::<f64>().sqrt();
    let diff = norm(&mut analytic.iter().zip(numeric).map(|(a, n)| a - n));
    let scale = norm(&mut analytic.iter().copied()).max(norm(&mut numeric.iter().copied()));
    if scale < NEGLIGIBLE_NORM {
        diff
    } else {
        diff / scale
    }
}

/// Distance of the smoothness loss from its nearest absolute-value kink:
/// the smallest `|p_v − p̂_v|` or `|(1 − p_v) − q̂_v|` over all vertices.
pub fn smoothness_kink_margin(logits: &[f64], topology: &MeshTopology) -> f64 {
    let p: Vec<f64> = logits.iter().map(|&z| sigmoid(z)).collect();
    topology
        .adjacency()
        .iter()
        .enumerate()
        .map(|(v, nbrs)| {
            let p_hat: f64 = nbrs.iter().map(|&u| p[u]).sum();
            let q_hat: f64 = nbrs.iter().map(|&u| 1.0 - p[u]).sum();
            (p[v] - p_hat).abs().min(((1.0 - p[v]) - q_hat).abs())
        })
        .fold(f64::INFINITY, f64::min)
}

/// Smallest `|p_v − p̄_v|`, the kink distance of the regularization loss.
pub fn regularization_kink_margin(logits: &[f64], contact_mean: &[f64]) -> f64 {
    logits
        .iter()
        .zip(contact_mean)
        .map(|(&z, &m)| (sigmoid(z) - m).abs())
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::ClassCounts;
    use crate::losses::{
        bce, cb_loss, focal_loss, regularization_loss, smoothness_loss, total_loss, vcb_loss,
        ClassBalanceConfig, ContactLoss, LossStatistics, LossWeights, SMOOTHNESS_EPSILON,
    };
    use crate::mesh::{build_level_regressors, make_proxy_mesh};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const H: f64 = 1e-5;

    fn logits(rng: &mut ChaCha8Rng, v: usize) -> Vec<f64> {
        (0..v).map(|_| rng.random_range(-6.0..6.0)).collect()
    }

    fn sparse_logits(rng: &mut ChaCha8Rng, v: usize) -> Vec<f64> {
        (0..v)
            .map(|_| {
                let mag = rng.random_range(2.0..8.0);
                if rng.random_bool(0.15) {
                    mag
                } else {
                    -mag
                }
            })
            .collect()
    }

    fn labels(rng: &mut ChaCha8Rng, v: usize) -> Vec<bool> {
        (0..v).map(|_| rng.random_bool(0.25)).collect()
    }

    #[test]
    fn quadratic_is_exact() {
        let x = [1.0, -2.0, 0.5];
        let g = central_difference(|x| x.iter().map(|v| v * v).sum(), &x, H);
        assert!(relative_error(&[2.0, -4.0, 1.0], &g) < 1e-9);
        assert_eq!(relative_error(&[0.0; 3], &[1e-12; 3]), (3e-24f64).sqrt());
    }

    #[test]
    fn pointwise_and_balanced_gradients() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let z = logits(&mut rng, 40);
            let y = labels(&mut rng, 40);
            let counts: Vec<ClassCounts> = (0..40)
                .map(|_| ClassCounts::new(rng.random_range(0..3000), rng.random_range(0..300)))
                .collect();
            let per_vertex = ClassBalanceConfig::per_vertex(0.999, counts).unwrap();
            let global = ClassBalanceConfig::global(0.99, ClassCounts::new(900, 60)).unwrap();
            type Pointwise<'a> = &'a dyn Fn(&[f64]) -> crate::Result<crate::losses::LossValue>;
            let checks: [(Pointwise, f64); 4] = [
                (&|z| bce(z, &y), 1e-5),
                (&|z| focal_loss(z, &y, 2.0), 1e-5),
                (&|z| cb_loss(z, &y, &global), 1e-5),
                (&|z| vcb_loss(z, &y, &per_vertex), 1e-5),
            ];
            for (f, tol) in checks {
                let analytic = f(&z).unwrap().gradient;
                let numeric = central_difference(|x| f(x).unwrap().value, &z, H);
                assert!(relative_error(&analytic, &numeric) < tol);
            }
        }
    }

    #[test]
    fn surface_gradients_away_from_kinks() {
        let mesh = make_proxy_mesh(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let mean: Vec<f64> = (0..162).map(|_| rng.random_range(0.0..0.3)).collect();
        let mut checked = 0;
        while checked < 5 {
            let z = sparse_logits(&mut rng, 162);
            if smoothness_kink_margin(&z, &mesh.topology) <= 1e-3
                || regularization_kink_margin(&z, &mean) <= 1e-3
            {
                continue;
            }
            let s = smoothness_loss(&z, &mesh.topology, SMOOTHNESS_EPSILON).unwrap();
            let n = central_difference(
                |x| {
                    smoothness_loss(x, &mesh.topology, SMOOTHNESS_EPSILON)
                        .unwrap()
                        .value
                },
                &z,
                H,
            );
            assert!(s.gradient.iter().any(|g| *g != 0.0));
            assert!(relative_error(&s.gradient, &n) < 1e-4);
            let r = regularization_loss(&z, &mean).unwrap();
            let n = central_difference(|x| regularization_loss(x, &mean).unwrap().value, &z, H);
            assert!(relative_error(&r.gradient, &n) < 1e-5);
            checked += 1;
        }
    }

    #[test]
    fn total_gradient_multi_level() {
        let mesh = make_proxy_mesh(2).unwrap();
        let reg = build_level_regressors(&mesh.topology, &[162, 84, 21]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let vertex_counts: Vec<ClassCounts> = (0..162)
            .map(|_| {
                let p = rng.random_range(0..400);
                ClassCounts::new(2000 - p, p)
            })
            .collect();
        let stats = LossStatistics {
            contact_mean: vertex_counts
                .iter()
                .map(|c| c.positive as f64 / 2000.0)
                .collect(),
            global_counts: vertex_counts.iter().fold(ClassCounts::default(), |a, c| {
                ClassCounts::new(a.negative + c.negative, a.positive + c.positive)
            }),
            vertex_counts,
        };
        let mut checked = 0;
        while checked < 3 {
            let z = sparse_logits(&mut rng, 162);
            let y = labels(&mut rng, 162);
            if smoothness_kink_margin(&z, &mesh.topology) <= 1e-3
                || regularization_kink_margin(&z, &stats.contact_mean) <= 1e-3
            {
                continue;
            }
            let loss = ContactLoss::VertexClassBalanced { beta: 0.9999 };
            let f = |x: &[f64]| {
                total_loss(
                    x,
                    &y,
                    &mesh.topology,
                    &stats,
                    &reg,
                    loss,
                    LossWeights::default(),
                )
                .unwrap()
            };
            let numeric = central_difference(|x| f(x).total, &z, H);
            assert!(relative_error(&f(&z).gradient, &numeric) < 1e-4);
            checked += 1;
        }
    }
}
