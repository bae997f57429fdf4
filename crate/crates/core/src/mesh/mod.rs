//! Boundary meshes of `B(X)` and the Meissner body, used as a
//! divergence-theorem oracle for volume and area.

mod build;
mod io;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::Point3;

pub use build::{mesh_body, mesh_face, spindle_point};
pub use io::{export_obj, export_ply, read_obj, read_ply, write_obj, write_ply};

/// Indexed triangle soup. Triangles are counterclockwise seen from outside.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<Point3>,
    pub triangles: Vec<[u32; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeshMetrics {
    pub vertex_count: usize,
    pub triangle_count: usize,
    pub volume: f64,
    pub area: f64,
    pub euler_characteristic: i64,
    pub watertight: bool,
    pub min_triangle_area: f64,
}

impl TriangleMesh {
    fn tri(&self, t: &[u32; 3]) -> (Point3, Point3, Point3) {
        (
            self.vertices[t[0] as usize],
            self.vertices[t[1] as usize],
            self.vertices[t[2] as usize],
        )
    }

    /// Signed volume `Σ v₀·(v₁ × v₂)/6` with no closedness check.
    pub fn signed_volume(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| {
                let (a, b, c) = self.tri(t);
                a.dot(b.cross(c))
            })
            .sum::<f64>()
            / 6.0
    }

    /// Total triangle area with no closedness check.
    pub fn area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| {
                let (a, b, c) = self.tri(t);
                0.5 * (b - a).cross(c - a).norm()
            })
            .sum()
    }

    pub fn min_triangle_area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| {
                let (a, b, c) = self.tri(t);
                0.5 * (b - a).cross(c - a).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Every directed edge used once and paired with its reverse.
    pub fn check_watertight(&self) -> Result<()> {
        let mut directed: HashMap<(u32, u32), u32> = HashMap::with_capacity(self.triangles.len() * 3);
        for t in &self.triangles {
            for k in 0..3 {
                *directed.entry((t[k], t[(k + 1) % 3])).or_default() += 1;
            }
        }
        let mut bad: Vec<(u32, u32)> = directed
            .iter()
            .filter(|(&(a, b), &n)| n != 1 || directed.get(&(b, a)) != Some(&1))
            .map(|(&e, _)| e)
            .collect();
        if bad.is_empty() {
            return Ok(());
        }
        bad.sort_unstable();
        Err(Error::Mesh {
            message: "mesh is not watertight with consistent orientation".into(),
            edges: bad,
        })
    }

    /// `V − E + F` over the vertices referenced by triangles.
    pub fn euler_characteristic(&self) -> i64 {
        let mut used = vec![false; self.vertices.len()];
        let mut edges = std::collections::HashSet::with_capacity(self.triangles.len() * 2);
        for t in &self.triangles {
            for k in 0..3 {
                used[t[k] as usize] = true;
                let (a, b) = (t[k], t[(k + 1) % 3]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        let v = used.iter().filter(|&&u| u).count() as i64;
        v - edges.len() as i64 + self.triangles.len() as i64
    }

    pub fn flipped(&self) -> TriangleMesh {
        TriangleMesh {
            vertices: self.vertices.clone(),
            triangles: self.triangles.iter().map(|t| [t[0], t[2], t[1]]).collect(),
        }
    }

    pub fn metrics(&self) -> MeshMetrics {
        MeshMetrics {
            vertex_count: self.vertices.len(),
            triangle_count: self.triangles.len(),
            volume: self.signed_volume(),
            area: self.area(),
            euler_characteristic: self.euler_characteristic(),
            watertight: self.check_watertight().is_ok(),
            min_triangle_area: self.min_triangle_area(),
        }
    }
}

/// Enclosed volume of a closed, outward-oriented mesh.
pub fn mesh_volume(mesh: &TriangleMesh) -> Result<f64> {
    mesh.check_watertight()?;
    Ok(mesh.signed_volume())
}

pub fn mesh_area(mesh: &TriangleMesh) -> Result<f64> {
    mesh.check_watertight()?;
    Ok(mesh.area())
}

/// Unit sphere from an icosahedron with each face split `n × n` and
/// projected outward.
pub fn icosphere(n: usize) -> TriangleMesh {
    let n = n.max(1);
    let g = (1.0 + 5f64.sqrt()) / 2.0;
    let base: Vec<Point3> = [
        (-1.0, g, 0.0),
        (1.0, g, 0.0),
        (-1.0, -g, 0.0),
        (1.0, -g, 0.0),
        (0.0, -1.0, g),
        (0.0, 1.0, g),
        (0.0, -1.0, -g),
        (0.0, 1.0, -g),
        (g, 0.0, -1.0),
        (g, 0.0, 1.0),
        (-g, 0.0, -1.0),
        (-g, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Point3::new(x, y, z).normalized())
    .collect();
    let faces: [[usize; 3]; 20] = [
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ];
    let mut mesh = TriangleMesh::default();
    // Grid points keyed by their integer barycentric weights on base vertices,
    // so points on shared icosahedron edges are created once.
    let mut index: HashMap<Vec<(usize, usize)>, u32> = HashMap::new();
    let mut vertex = |mesh: &mut TriangleMesh, f: &[usize; 3], i: usize, j: usize| -> u32 {
        let w = [n - i - j, i, j];
        let mut key: Vec<(usize, usize)> =
            (0..3).filter(|&k| w[k] > 0).map(|k| (f[k], w[k])).collect();
        key.sort_unstable();
        *index.entry(key).or_insert_with(|| {
            let p = (base[f[0]] * w[0] as f64 + base[f[1]] * w[1] as f64 + base[f[2]] * w[2] as f64)
                .normalized();
            mesh.vertices.push(p);
            (mesh.vertices.len() - 1) as u32
        })
    };
    for f in &faces {
        for i in 0..n {
            for j in 0..n - i {
                let a = vertex(&mut mesh, f, i, j);
                let b = vertex(&mut mesh, f, i + 1, j);
                let c = vertex(&mut mesh, f, i, j + 1);
                mesh.triangles.push([a, b, c]);
                if i + j + 1 < n {
                    let d = vertex(&mut mesh, f, i + 1, j + 1);
                    mesh.triangles.push([b, d, c]);
                }
            }
        }
    }
    mesh
}
