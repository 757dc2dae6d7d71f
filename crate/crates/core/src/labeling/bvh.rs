use super::closest::closest_point_on_triangle;
use crate::mesh::{Point3, TriangleMesh};

pub const LEAF_SIZE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Point3,
    pub max: Point3,
}

impl Aabb {
    fn empty() -> Self {
        Self {
            min: Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY),
            max: Point3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn grow(&mut self, p: &Point3) {
        self.min = self.min.inf(p);
        self.max = self.max.sup(p);
    }

    pub fn contains_box(&self, other: &Aabb) -> bool {
        (0..3).all(|k| self.min[k] <= other.min[k] && other.max[k] <= self.max[k])
    }

    pub fn contains_point(&self, p: &Point3) -> bool {
        (0..3).all(|k| self.min[k] <= p[k] && p[k] <= self.max[k])
    }

    /// Squared distance from `p` to the box (zero inside).
    pub fn distance_squared(&self, p: &Point3) -> f64 {
        (0..3)
            .map(|k| {
                let d = (self.min[k] - p[k]).max(0.0).max(p[k] - self.max[k]);
                d * d
            })
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NodeKind {
    /// Range into the BVH's triangle order.
    Leaf {
        start: usize,
        count: usize,
    },
    Inner {
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BvhNode {
    pub bounds: Aabb,
    pub kind: NodeKind,
}

/// Bounding-volume hierarchy over the triangles of an interacting mesh.
///
/// Built by median split on triangle centroids along the widest centroid
/// axis, with at most [`LEAF_SIZE`] triangles per leaf.
#[derive(Debug, Clone)]
pub struct TriangleBvh {
    mesh: TriangleMesh,
    nodes: Vec<BvhNode>,
    order: Vec<usize>,
}

/// Closest-triangle query result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceHit {
    pub distance: f64,
    pub triangle: usize,
}

impl TriangleBvh {
    /// Returns `None` for a mesh without triangles.
    pub fn build(mesh: &TriangleMesh) -> Option<Self> {
        if mesh.is_empty() {
            return None;
        }
        let centroids: Vec<Point3> = (0..mesh.triangles.len())
            .map(|t| {
                let [a, b, c] = mesh.triangle(t);
                Point3::from((a.coords + b.coords + c.coords) / 3.0)
            })
            .collect();
        let mut bvh = Self {
            mesh: mesh.clone(),
            nodes: Vec::new(),
            order: (0..mesh.triangles.len()).collect(),
        };
        bvh.build_node(0, mesh.triangles.len(), &centroids);
        Some(bvh)
    }

    fn build_node(&mut self, start: usize, end: usize, centroids: &[Point3]) -> usize {
        let mut bounds = Aabb::empty();
        let mut cbounds = Aabb::empty();
        for &t in &self.order[start..end] {
            for p in self.mesh.triangle(t) {
                bounds.grow(&p);
            }
            cbounds.grow(&centroids[t]);
        }
        let id = self.nodes.len();
        self.nodes.push(BvhNode {
            bounds,
            kind: NodeKind::Leaf {
                start,
                count: end - start,
            },
        });
        if end - start <= LEAF_SIZE {
            return id;
        }
        let extent = cbounds.max - cbounds.min;
        let axis = if extent.x >= extent.y && extent.x >= extent.z {
            0
        } else if extent.y >= extent.z {
            1
        } else {
            2
        };
        self.order[start..end].sort_by(|&s, &t| {
            centroids[s][axis]
                .total_cmp(&centroids[t][axis])
                .then(s.cmp(&t))
        });
        let mid = start + (end - start) / 2;
        let left = self.build_node(start, mid, centroids);
        let right = self.build_node(mid, end, centroids);
        self.nodes[id].kind = NodeKind::Inner { left, right };
        id
    }

    pub fn nodes(&self) -> &[BvhNode] {
        &self.nodes
    }

    pub fn mesh(&self) -> &TriangleMesh {
        &self.mesh
    }

    /// Triangle indices stored in a leaf node.
    pub fn leaf_triangles(&self, node: &BvhNode) -> &[usize] {
        match node.kind {
            NodeKind::Leaf { start, count } => &self.order[start..start + count],
            NodeKind::Inner { .. } => &[],
        }
    }

    /// Exact unsigned distance from `p` to the mesh surface. Equal distances
    /// resolve to the lowest triangle index.
    pub fn closest(&self, p: &Point3) -> SurfaceHit {
        let mut best = SurfaceHit {
            distance: f64::INFINITY,
            triangle: usize::MAX,
        };
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id];
            // slack keeps the box bound conservative under rounding
            let bound = best.distance * best.distance * (1.0 + 1e-9);
            if node.bounds.distance_squared(p) > bound {
                continue;
            }
            match node.kind {
                NodeKind::Leaf { start, count } => {
                    for &t in &self.order[start..start + count] {
                        let [a, b, c] = self.mesh.triangle(t);
                        let d = closest_point_on_triangle(p, &a, &b, &c).distance;
                        if d < best.distance || (d == best.distance && t < best.triangle) {
                            best = SurfaceHit {
                                distance: d,
                                triangle: t,
                            };
                        }
                    }
                }
                NodeKind::Inner { left, right } => {
                    let dl = self.nodes[left].bounds.distance_squared(p);
                    let dr = self.nodes[right].bounds.distance_squared(p);
                    // nearer child is popped first
                    if dl <= dr {
                        stack.push(right);
                        stack.push(left);
                    } else {
                        stack.push(left);
                        stack.push(right);
                    }
                }
            }
        }
        best
    }
}

/// Linear scan over every triangle; the reference the BVH must reproduce.
pub fn closest_brute_force(p: &Point3, mesh: &TriangleMesh) -> Option<SurfaceHit> {
    let mut best: Option<SurfaceHit> = None;
    for t in 0..mesh.triangles.len() {
        let [a, b, c] = mesh.triangle(t);
        let d = closest_point_on_triangle(p, &a, &b, &c).distance;
        if best.is_none_or(|h| d < h.distance) {
            best = Some(SurfaceHit {
                distance: d,
                triangle: t,
            });
        }
    }
    best
}
