use std::io::Write;

use super::MeshTopology;
use crate::error::{check_len, Error, Result};

/// Level sizes used by the MANO hand (full resolution first).
pub const MANO_LEVEL_SIZES: [usize; 4] = [778, 336, 84, 21];

/// Default level sizes for a mesh with `vertex_count` vertices: the full
/// resolution followed by every MANO coarse level strictly smaller than it.
pub fn default_level_sizes(vertex_count: usize) -> Vec<usize> {
    std::iter::once(vertex_count)
        .chain(
            MANO_LEVEL_SIZES[1..]
                .iter()
                .copied()
                .filter(|&s| s < vertex_count),
        )
        .collect()
}

/// Row-major sparse matrix stored as per-row `(column, weight)` lists.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseRowMatrix {
    cols: usize,
    rows: Vec<Vec<(usize, f64)>>,
}

impl SparseRowMatrix {
    pub fn new(cols: usize, rows: Vec<Vec<(usize, f64)>>) -> Result<Self> {
        for row in &rows {
            if let Some(&(c, _)) = row.iter().find(|(c, _)| *c >= cols) {
                return Err(Error::InvalidParameter(format!(
                    "column {c} out of range for {cols} columns"
                )));
            }
        }
        Ok(Self { cols, rows })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| vec![(i, 1.0)]).collect(),
        }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, f64)] {
        &self.rows[r]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.cols);
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(c, w)| w * x[c]).sum())
            .collect()
    }

    /// `Aᵀ y`, used to pull coarse-level gradients back to full resolution.
    pub fn transpose_mul_vec(&self, y: &[f64]) -> Vec<f64> {
        debug_assert_eq!(y.len(), self.rows.len());
        let mut out = vec![0.0; self.cols];
        for (row, &yr) in self.rows.iter().zip(y) {
            for &(c, w) in row {
                out[c] += w * yr;
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![0.0; self.cols];
                for &(c, w) in row {
                    dense[c] += w;
                }
                dense
            })
            .collect()
    }

    /// CSV triplets `row,col,weight`, one nonzero per line.
    pub fn write_triplets<W: Write + ?Sized>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "row,col,weight")?;
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, weight) in row {
                writeln!(w, "{r},{c},{weight}")?;
            }
        }
        Ok(())
    }
}

/// Fixed linear maps from full-resolution vertex values to each coarse level.
#[derive(Debug, Clone)]
pub struct LevelRegressor {
    level_sizes: Vec<usize>,
    matrices: Vec<SparseRowMatrix>,
}

impl LevelRegressor {
    pub fn level_sizes(&self) -> &[usize] {
        &self.level_sizes
    }

    pub fn matrices(&self) -> &[SparseRowMatrix] {
        &self.matrices
    }

    pub fn level_count(&self) -> usize {
        self.matrices.len()
    }

    pub fn full_resolution(&self) -> usize {
        self.level_sizes[0]
    }

    /// A single identity level (no downsampling).
    pub fn identity(vertex_count: usize) -> Self {
        Self {
            level_sizes: vec![vertex_count],
            matrices: vec![SparseRowMatrix::identity(vertex_count)],
        }
    }
}

/// Farthest-point order starting from vertex 0; ties go to the lower index.
fn farthest_point_order(topology: &MeshTopology, count: usize) -> Vec<usize> {
    let pts = topology.vertices();
    let mut order = Vec::with_capacity(count);
    let mut min_d2 = vec![f64::INFINITY; pts.len()];
    let mut next = 0;
    while order.len() < count {
        order.push(next);
        min_d2[next] = f64::NEG_INFINITY;
        let mut best = f64::NEG_INFINITY;
        for (v, d) in min_d2.iter_mut().enumerate() {
            if *d == f64::NEG_INFINITY {
                continue;
            }
            *d = d.min((pts[v] - pts[next]).norm_squared());
            if *d > best {
                best = *d;
                next = v;
            }
        }
    }
    order
}

fn cluster_matrix(topology: &MeshTopology, mut seeds: Vec<usize>) -> SparseRowMatrix {
    seeds.sort_unstable();
    let pts = topology.vertices();
    let mut owner = vec![usize::MAX; pts.len()];
    for (r, &s) in seeds.iter().enumerate() {
        owner[s] = r;
    }
    for v in 0..pts.len() {
        if owner[v] != usize::MAX {
            continue;
        }
        let mut best = (f64::INFINITY, 0);
        for (r, &s) in seeds.iter().enumerate() {
            let d = (pts[v] - pts[s]).norm_squared();
            if d < best.0 {
                best = (d, r);
            }
        }
        owner[v] = best.1;
    }
    let mut members = vec![Vec::new(); seeds.len()];
    for (v, &r) in owner.iter().enumerate() {
        members[r].push(v);
    }
    let rows = members
        .into_iter()
        .map(|m| {
            let w = 1.0 / m.len() as f64;
            m.into_iter().map(|v| (v, w)).collect()
        })
        .collect();
    SparseRowMatrix {
        cols: pts.len(),
        rows,
    }
}

/// Builds one row-stochastic averaging matrix per level.
///
/// Coarse vertices are farthest-point seeds (starting at vertex 0), sorted by
/// index; every vertex joins its nearest seed and each row averages its
/// cluster uniformly. A level equal to the vertex count yields the identity.
pub fn build_level_regressors(
    topology: &MeshTopology,
    level_sizes: &[usize],
) -> Result<LevelRegressor> {
    let n = topology.vertex_count();
    if let Some(&level) = level_sizes.iter().find(|&&s| s > n) {
        return Err(Error::LevelExceedsVertexCount {
            level,
            vertex_count: n,
        });
    }
    match level_sizes.first() {
        None => return Err(Error::InvalidLevels("no levels given".into())),
        Some(&first) if first != n => {
            return Err(Error::InvalidLevels(format!(
                "first level must equal the vertex count {n}, got {first}"
            )))
        }
        _ => {}
    }
    if level_sizes.windows(2).any(|w| w[1] >= w[0]) || level_sizes.contains(&0) {
        return Err(Error::InvalidLevels(format!(
            "level sizes must be positive and strictly decreasing: {level_sizes:?}"
        )));
    }
    let coarse_max = level_sizes.get(1).copied().unwrap_or(0);
    let order = farthest_point_order(topology, coarse_max);
    let matrices = level_sizes
        .iter()
        .map(|&size| {
            if size == n {
                SparseRowMatrix::identity(n)
            } else {
                cluster_matrix(topology, order[..size].to_vec())
            }
        })
        .collect();
    Ok(LevelRegressor {
        level_sizes: level_sizes.to_vec(),
        matrices,
    })
}

/// Applies every level matrix to a full-resolution vector.
pub fn project_levels(values: &[f64], regressor: &LevelRegressor) -> Result<Vec<Vec<f64>>> {
    check_len(
        "projection input",
        regressor.full_resolution(),
        values.len(),
    )?;
    Ok(regressor
        .matrices
        .iter()
        .map(|m| m.mul_vec(values))
        .collect())
}
