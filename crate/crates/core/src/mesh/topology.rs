use super::Point3;
use crate::error::{Error, Result};

/// Vertex positions plus the unweighted vertex adjacency implied by the
/// triangle edges.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshTopology {
    vertices: Vec<Point3>,
    triangles: Vec<[usize; 3]>,
    adjacency: Vec<Vec<usize>>,
}

/// Builds a topology from a triangle list.
///
/// Adjacency lists are sorted and deduplicated, so `u` is a neighbor of `v`
/// exactly when some triangle contains the edge `(u, v)`.
pub fn build_topology(vertices: Vec<Point3>, triangles: Vec<[usize; 3]>) -> Result<MeshTopology> {
    let n = vertices.len();
    let mut adjacency = vec![Vec::new(); n];
    for (t, tri) in triangles.iter().enumerate() {
        for &index in tri {
            if index >= n {
                return Err(Error::TriangleIndexOutOfRange {
                    triangle: t,
                    index,
                    vertex_count: n,
                });
            }
        }
        let [a, b, c] = *tri;
        if a == b || b == c || a == c {
            return Err(Error::DegenerateTriangle { triangle: t });
        }
        for (u, v) in [(a, b), (b, c), (c, a)] {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }
    Ok(MeshTopology {
        vertices,
        triangles,
        adjacency,
    })
}

impl MeshTopology {
    /// Topology from an explicit edge list, for graphs that are not
    /// triangulated (no triangles are recorded).
    pub fn from_edges(vertices: Vec<Point3>, edges: &[[usize; 2]]) -> Result<Self> {
        let n = vertices.len();
        let mut adjacency = vec![Vec::new(); n];
        for (e, &[u, v]) in edges.iter().enumerate() {
            if let Some(&index) = [u, v].iter().find(|&&i| i >= n) {
                return Err(Error::InvalidParameter(format!(
                    "edge {e} references vertex {index}, but the mesh has {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("edge {e} is a self-loop")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self {
            vertices,
            triangles: Vec::new(),
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Sorted neighbor indices of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Vertices within `radius` hops of `center` (breadth-first), in
    /// ascending index order.
    pub fn graph_ball(&self, center: usize, radius: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[center] = 0;
        let mut frontier = vec![center];
        for hop in 1..=radius {
            let mut next = Vec::new();
            for &v in &frontier {
                for &u in &self.adjacency[v] {
                    if dist[u] == usize::MAX {
                        dist[u] = hop;
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        (0..dist.len()).filter(|&v| dist[v] != usize::MAX).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn origin_points(n: usize) -> Vec<Point3> {
        (0..n).map(|i| Point3::new(i as f64, 0.0, 0.0)).collect()
    }

    #[test]
    fn single_triangle_is_complete_graph() {
        let topo = build_topology(origin_points(3), vec![[0, 1, 2]]).unwrap();
        assert_eq!(topo.neighbors(0), &[1, 2]);
        assert_eq!(topo.neighbors(1), &[0, 2]);
        assert_eq!(topo.neighbors(2), &[0, 1]);
        assert_eq!(topo.degrees(), vec![2, 2, 2]);
    }

    #[test]
    fn shared_edge_counts_once() {
        let topo = build_topology(origin_points(4), vec![[0, 1, 2], [1, 3, 2]]).unwrap();
        assert_eq!(topo.degree(1), 3);
        assert_eq!(topo.degree(2), 3);
        assert_eq!(topo.degree(0), 2);
        assert_eq!(topo.edge_count(), 5);
    }

    #[test]
    fn rejects_bad_triangles() {
        match build_topology(origin_points(3), vec![[0, 1, 2], [0, 1, 3]]) {
            Err(Error::TriangleIndexOutOfRange {
                triangle: 1,
                index: 3,
                ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match build_topology(origin_points(3), vec![[0, 1, 2], [2, 2, 1]]) {
            Err(Error::DegenerateTriangle { triangle: 1 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn edge_list_topology() {
        let topo = MeshTopology::from_edges(origin_points(3), &[[0, 1], [1, 0], [1, 2]]).unwrap();
        assert_eq!(topo.degrees(), vec![1, 2, 1]);
        assert!(MeshTopology::from_edges(origin_points(2), &[[0, 0]]).is_err());
        assert!(MeshTopology::from_edges(origin_points(2), &[[0, 2]]).is_err());
    }

    #[test]
    fn graph_ball_radius() {
        // path 0-1-2-3 through two triangles plus an extra
        let topo = build_topology(origin_points(5), vec![[0, 1, 2], [2, 3, 4]]).unwrap();
        assert_eq!(topo.graph_ball(0, 0), vec![0]);
        assert_eq!(topo.graph_ball(0, 1), vec![0, 1, 2]);
        assert_eq!(topo.graph_ball(0, 2), vec![0, 1, 2, 3, 4]);
    }

    proptest! {
        #[test]
        fn adjacency_symmetric_on_random_soups(
            n in 3usize..40,
            raw in proptest::collection::vec((0usize..1000, 0usize..1000, 0usize..1000), 0..80),
        ) {
            // clean: reduce indices into range and drop degenerate triples
            let tris: Vec<[usize; 3]> = raw
                .into_iter()
                .map(|(a, b, c)| [a % n, b % n, c % n])
                .filter(|[a, b, c]| a != b && b != c && a != c)
                .collect();
            let topo = build_topology(origin_points(n), tris).unwrap();
            for v in 0..n {
                prop_assert!(!topo.neighbors(v).contains(&v));
                prop_assert_eq!(topo.degree(v), topo.neighbors(v).len());
                for &u in topo.neighbors(v) {
                    prop_assert!(topo.neighbors(u).binary_search(&v).is_ok());
                }
            }
        }
    }
}
