use std::collections::HashMap;

use super::{build_topology, MeshTopology, Point3};
use crate::error::{Error, Result};

/// Angular radius (radians) of the tip and dorsal caps.
pub const REGION_RADIUS: f64 = 0.4;

/// Subdivided icosahedron standing in for a hand surface. The cap around
/// `+z` plays the fingertip role and the antipodal cap the dorsum.
#[derive(Debug, Clone)]
pub struct ProxyMesh {
    pub topology: MeshTopology,
    pub subdivisions: u32,
    pub tip_region: Vec<usize>,
    pub dorsal_region: Vec<usize>,
}

pub fn proxy_vertex_count(subdivisions: u32) -> usize {
    10 * 4usize.pow(subdivisions) + 2
}

pub fn subdivisions_for_vertex_count(vertex_count: usize) -> Option<u32> {
    (0..=4).find(|&k| proxy_vertex_count(k) == vertex_count)
}

fn base_icosahedron() -> (Vec<Point3>, Vec<[usize; 3]>) {
    let z = 1.0 / 5f64.sqrt();
    let r = 2.0 / 5f64.sqrt();
    let step = std::f64::consts::TAU / 5.0;
    let mut vertices = vec![Point3::new(0.0, 0.0, 1.0)];
    for k in 0..5 {
        let a = step * k as f64;
        vertices.push(Point3::new(r * a.cos(), r * a.sin(), z));
    }
    for k in 0..5 {
        let a = step * k as f64 + step / 2.0;
        vertices.push(Point3::new(r * a.cos(), r * a.sin(), -z));
    }
    vertices.push(Point3::new(0.0, 0.0, -1.0));

    let upper = |k: usize| 1 + k % 5;
    let lower = |k: usize| 6 + k % 5;
    let mut triangles = Vec::with_capacity(20);
    for k in 0..5 {
        triangles.push([0, upper(k), upper(k + 1)]);
        triangles.push([upper(k), lower(k), upper(k + 1)]);
        triangles.push([upper(k + 1), lower(k), lower(k + 1)]);
        triangles.push([11, lower(k + 1), lower(k)]);
    }
    (vertices, triangles)
}

fn subdivide(vertices: &mut Vec<Point3>, triangles: &[[usize; 3]]) -> Vec<[usize; 3]> {
    let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
    let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<Point3>| -> usize {
        let key = (a.min(b), a.max(b));
        *midpoints.entry(key).or_insert_with(|| {
            let m = nalgebra::center(&vertices[a], &vertices[b]);
            vertices.push(Point3::from(m.coords.normalize()));
            vertices.len() - 1
        })
    };
    let mut out = Vec::with_capacity(triangles.len() * 4);
    for &[a, b, c] in triangles {
        let ab = midpoint(a, b, vertices);
        let bc = midpoint(b, c, vertices);
        let ca = midpoint(c, a, vertices);
        out.push([a, ab, ca]);
        out.push([b, bc, ab]);
        out.push([c, ca, bc]);
        out.push([ab, bc, ca]);
    }
    out
}

/// Deterministic unit icosphere with `subdivisions` rounds of midpoint
/// subdivision (12, 42, 162, 642, 2562 vertices).
pub fn make_proxy_mesh(subdivisions: u32) -> Result<ProxyMesh> {
    if subdivisions > 4 {
        return Err(Error::SubdivisionsOutOfRange(subdivisions));
    }
    let (mut vertices, mut triangles) = base_icosahedron();
    for _ in 0..subdivisions {
        triangles = subdivide(&mut vertices, &triangles);
    }
    let cap = |sign: f64| -> Vec<usize> {
        vertices
            .iter()
            .enumerate()
            .filter(|(_, p)| (sign * p.z).clamp(-1.0, 1.0).acos() <= REGION_RADIUS)
            .map(|(i, _)| i)
            .collect()
    };
    let tip_region = cap(1.0);
    let dorsal_region = cap(-1.0);
    let topology = build_topology(vertices, triangles)?;
    Ok(ProxyMesh {
        topology,
        subdivisions,
        tip_region,
        dorsal_region,
    })
}
