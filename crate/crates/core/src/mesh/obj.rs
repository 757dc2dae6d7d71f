use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{build_topology, MeshTopology, Point3};
use crate::error::{Error, Result};

/// Raw triangle soup as read from disk. Unlike [`MeshTopology`] this keeps
/// degenerate triangles, which scanned interacting meshes often contain.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TriangleMesh {
    pub vertices: Vec<Point3>,
    pub triangles: Vec<[usize; 3]>,
}

impl TriangleMesh {
    pub fn new(vertices: Vec<Point3>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        for (t, tri) in triangles.iter().enumerate() {
            if let Some(&index) = tri.iter().find(|&&i| i >= vertices.len()) {
                return Err(Error::TriangleIndexOutOfRange {
                    triangle: t,
                    index,
                    vertex_count: vertices.len(),
                });
            }
        }
        Ok(Self {
            vertices,
            triangles,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn triangle(&self, t: usize) -> [Point3; 3] {
        let [a, b, c] = self.triangles[t];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    pub fn into_topology(self) -> Result<MeshTopology> {
        build_topology(self.vertices, self.triangles)
    }
}

impl From<&MeshTopology> for TriangleMesh {
    fn from(topo: &MeshTopology) -> Self {
        Self {
            vertices: topo.vertices().to_vec(),
            triangles: topo.triangles().to_vec(),
        }
    }
}

fn parse_index(token: &str, name: &str, line: usize) -> Result<usize> {
    // `f 1/2/3 ...` forms: only the position index matters
    let head = token.split('/').next().unwrap_or("");
    let i: usize = head
        .parse()
        .map_err(|_| Error::parse(name, line, format!("bad face index {token:?}")))?;
    if i == 0 {
        return Err(Error::parse(name, line, "face indices are 1-based"));
    }
    Ok(i - 1)
}

/// Reads the ASCII OBJ subset `v x y z` / `f i j k` (1-based). Other
/// statements and `#` comments are ignored.
pub fn read_obj<R: BufRead>(reader: R, name: &str) -> Result<TriangleMesh> {
    let mut vertices = Vec::new();
    let mut triangles = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let lineno = n + 1;
        let line = line.map_err(|e| Error::io(name, e))?;
        let line = line.split('#').next().unwrap_or("").trim();
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => {
                let coords: Vec<f64> = parts
                    .take(3)
                    .map(|t| t.parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::parse(name, lineno, "bad vertex coordinate"))?;
                if coords.len() != 3 || coords.iter().any(|c| !c.is_finite()) {
                    return Err(Error::parse(
                        name,
                        lineno,
                        "vertex needs three finite coordinates",
                    ));
                }
                vertices.push(Point3::new(coords[0], coords[1], coords[2]));
            }
            Some("f") => {
                let idx: Vec<usize> = parts
                    .map(|t| parse_index(t, name, lineno))
                    .collect::<Result<_>>()?;
                if idx.len() != 3 {
                    return Err(Error::parse(
                        name,
                        lineno,
                        "only triangular faces are supported",
                    ));
                }
                triangles.push([idx[0], idx[1], idx[2]]);
            }
            _ => {}
        }
    }
    TriangleMesh::new(vertices, triangles)
}

pub fn read_obj_file(path: &Path) -> Result<TriangleMesh> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_obj(BufReader::new(file), &path.display().to_string())
}

pub fn write_obj<W: Write + ?Sized>(
    w: &mut W,
    vertices: &[Point3],
    triangles: &[[usize; 3]],
) -> std::io::Result<()> {
    for p in vertices {
        writeln!(w, "v {} {} {}", p.x, p.y, p.z)?;
    }
    for [a, b, c] in triangles {
        writeln!(w, "f {} {} {}", a + 1, b + 1, c + 1)?;
    }
    Ok(())
}
