use crate::mesh::Point3;

/// Triangles with area at or below this (m²) use the longest-edge fallback.
pub const DEGENERATE_AREA: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosestPoint {
    pub point: Point3,
    pub distance: f64,
    /// Weights of `(a, b, c)`; nonnegative and summing to one.
    pub barycentric: [f64; 3],
}

fn on_segment(p: &Point3, a: &Point3, b: &Point3) -> (Point3, f64) {
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return (*a, 0.0);
    }
    let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
    (a + ab * t, t)
}

fn finish(p: &Point3, point: Point3, barycentric: [f64; 3]) -> ClosestPoint {
    ClosestPoint {
        point,
        distance: (p - point).norm(),
        barycentric,
    }
}

/// Closest point to `p` on triangle `(a, b, c)`, by Voronoi-region
/// classification. Degenerate triangles fall back to the longest edge.
pub fn closest_point_on_triangle(p: &Point3, a: &Point3, b: &Point3, c: &Point3) -> ClosestPoint {
    let ab = b - a;
    let ac = c - a;
    if 0.5 * ab.cross(&ac).norm() <= DEGENERATE_AREA {
        return longest_edge_fallback(p, a, b, c);
    }

    let ap = p - a;
    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return finish(p, *a, [1.0, 0.0, 0.0]);
    }

    let bp = p - b;
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return finish(p, *b, [0.0, 1.0, 0.0]);
    }

    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return finish(p, a + ab * v, [1.0 - v, v, 0.0]);
    }

    let cp = p - c;
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return finish(p, *c, [0.0, 0.0, 1.0]);
    }

    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return finish(p, a + ac * w, [1.0 - w, 0.0, w]);
    }

    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return finish(p, b + (c - b) * w, [0.0, 1.0 - w, w]);
    }

    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    finish(p, a + ab * v + ac * w, [1.0 - v - w, v, w])
}

fn longest_edge_fallback(p: &Point3, a: &Point3, b: &Point3, c: &Point3) -> ClosestPoint {
    let verts = [a, b, c];
    let mut longest = (0, 1);
    let mut best = f64::NEG_INFINITY;
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let len2 = (verts[j] - verts[i]).norm_squared();
        if len2 > best {
            best = len2;
            longest = (i, j);
        }
    }
    let (i, j) = longest;
    let (point, t) = on_segment(p, verts[i], verts[j]);
    let mut bary = [0.0; 3];
    bary[i] = 1.0 - t;
    bary[j] += t;
    finish(p, point, bary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pt(x: f64, y: f64, z: f64) -> Point3 {
        Point3::new(x, y, z)
    }

    #[test]
    fn interior_projection() {
        let (a, b, c) = (pt(0.0, 0.0, 0.0), pt(1.0, 0.0, 0.0), pt(0.0, 1.0, 0.0));
        let cp = closest_point_on_triangle(&pt(0.2, 0.3, 0.7), &a, &b, &c);
        assert!((cp.distance - 0.7).abs() < 1e-15);
        assert!((cp.point - pt(0.2, 0.3, 0.0)).norm() < 1e-15);
        assert!((cp.barycentric.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn vertex_regions() {
        let (a, b, c) = (pt(0.0, 0.0, 0.0), pt(1.0, 0.0, 0.0), pt(0.0, 1.0, 0.0));
        assert_eq!(
            closest_point_on_triangle(&pt(-1.0, -1.0, 0.3), &a, &b, &c).point,
            a
        );
        assert_eq!(
            closest_point_on_triangle(&pt(2.0, -0.5, 0.0), &a, &b, &c).point,
            b
        );
        assert_eq!(
            closest_point_on_triangle(&pt(-0.1, 3.0, -1.0), &a, &b, &c).point,
            c
        );
    }

    #[test]
    fn edge_region() {
        let (a, b, c) = (pt(0.0, 0.0, 0.0), pt(1.0, 0.0, 0.0), pt(0.0, 1.0, 0.0));
        let cp = closest_point_on_triangle(&pt(1.0, 1.0, 0.0), &a, &b, &c);
        assert!((cp.point - pt(0.5, 0.5, 0.0)).norm() < 1e-15);
        assert_eq!(cp.barycentric[0], 0.0);
    }

    #[test]
    fn degenerate_uses_longest_edge() {
        // collinear: c sits between a and b
        let (a, b, c) = (pt(0.0, 0.0, 0.0), pt(2.0, 0.0, 0.0), pt(1.0, 0.0, 0.0));
        let cp = closest_point_on_triangle(&pt(1.5, 1.0, 0.0), &a, &b, &c);
        assert!((cp.distance - 1.0).abs() < 1e-15);
        assert!((cp.point - pt(1.5, 0.0, 0.0)).norm() < 1e-15);
        let same = closest_point_on_triangle(&pt(0.0, 0.0, 1.0), &a, &a, &a);
        assert_eq!(same.distance, 1.0);
    }

    #[test]
    fn postconditions_hold_randomly() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut r = || {
            pt(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            )
        };
        for _ in 0..2000 {
            let (p, a, b, c) = (r(), r(), r(), r());
            let cp = closest_point_on_triangle(&p, &a, &b, &c);
            let bc = cp.barycentric;
            assert!(bc.iter().all(|&w| (-1e-9..=1.0 + 1e-9).contains(&w)));
            assert!((bc.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            let recon = Point3::from(a.coords * bc[0] + b.coords * bc[1] + c.coords * bc[2]);
            assert!((recon - cp.point).norm() < 1e-9);
            for v in [a, b, c] {
                assert!(cp.distance <= (p - v).norm() + 1e-12);
            }
        }
    }
}
