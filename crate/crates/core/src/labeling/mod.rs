//! Ground-truth contact labels by thresholding the distance from each hand
//! vertex to the closest point on an interacting surface.

mod bvh;
mod closest;

use std::io::Write;

use rayon::prelude::*;

pub use bvh::{closest_brute_force, Aabb, BvhNode, NodeKind, SurfaceHit, TriangleBvh, LEAF_SIZE};
pub use closest::{closest_point_on_triangle, ClosestPoint, DEGENERATE_AREA};

use crate::error::{Error, Result};
use crate::mesh::{Point3, TriangleMesh};

/// Named contact distance threshold in meters.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdProfile {
    pub name: String,
    pub threshold: f64,
}

impl ThresholdProfile {
    /// 1 cm, the general-purpose threshold.
    pub fn standard() -> Self {
        Self {
            name: "default".into(),
            threshold: 0.010,
        }
    }

    /// 3.5 cm, for low-fidelity fitted meshes.
    pub fn coarse() -> Self {
        Self {
            name: "coarse".into(),
            threshold: 0.035,
        }
    }

    /// 0.5 cm, for hand-hand interaction.
    pub fn fine() -> Self {
        Self {
            name: "fine".into(),
            threshold: 0.005,
        }
    }

    pub fn custom(threshold: f64) -> Result<Self> {
        if !(threshold > 0.0 && threshold.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "contact threshold must be positive, got {threshold}"
            )));
        }
        Ok(Self {
            name: "custom".into(),
            threshold,
        })
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "default" => Some(Self::standard()),
            "coarse" => Some(Self::coarse()),
            "fine" => Some(Self::fine()),
            _ => None,
        }
    }
}

impl Default for ThresholdProfile {
    fn default() -> Self {
        Self::standard()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContactLabels {
    pub labels: Vec<bool>,
    /// Set when the interacting mesh had no triangles; all labels are zero.
    pub empty_mesh: bool,
}

impl ContactLabels {
    pub fn contact_count(&self) -> usize {
        self.labels.iter().filter(|&&c| c).count()
    }

    pub fn write_csv<W: Write + ?Sized>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "vertex_index,contact")?;
        for (i, &c) in self.labels.iter().enumerate() {
            writeln!(w, "{i},{}", u8::from(c))?;
        }
        Ok(())
    }
}

/// Vertex `v` is in contact when its surface distance is `<= threshold`.
/// Vertices are processed in parallel; output order follows vertex order.
pub fn label_contacts(
    hand_vertices: &[Point3],
    interacting: &TriangleMesh,
    profile: &ThresholdProfile,
) -> Result<ContactLabels> {
    if hand_vertices.is_empty() {
        return Err(Error::InvalidParameter("hand mesh has no vertices".into()));
    }
    let Some(bvh) = TriangleBvh::build(interacting) else {
        return Ok(ContactLabels {
            labels: vec![false; hand_vertices.len()],
            empty_mesh: true,
        });
    };
    let labels = hand_vertices
        .par_iter()
        .map(|p| bvh.closest(p).distance <= profile.threshold)
        .collect();
    Ok(ContactLabels {
        labels,
        empty_mesh: false,
    })
}
