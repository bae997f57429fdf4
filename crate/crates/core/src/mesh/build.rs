use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::formulas::spindle_area;
use crate::geom::{slerp, ArcOnCircle, Point3};
use crate::oracle::BodyKind;
use crate::polyhedron::{DualPair, PointConfig, ReuleauxStructure};

use super::TriangleMesh;

/// Parameter slack on the spindle rectangle.
const PARAM_SLACK: f64 = 1e-12;

/// Spindles with less area than this collapse onto their bounding geodesic.
const MIN_SPINDLE_AREA: f64 = 1e-12;

/// Point `X(s, t)` of the spindle patch of `pair`, for
/// `(s, t) ∈ [0, φ′] × [0, θ′]`.
///
/// `s` rotates the geodesic from `b′` to `c′` on `∂B(b)` about the line
/// through `b′`, `c′`; `X(0, ·)` is that geodesic and `X(φ′, ·)` is the one
/// on `∂B(c)`.
pub fn spindle_point(pair: &DualPair, cfg: &PointConfig, s: f64, t: f64) -> Result<Point3> {
    if !(-PARAM_SLACK..=pair.phi_prime + PARAM_SLACK).contains(&s)
        || !(-PARAM_SLACK..=pair.theta_prime + PARAM_SLACK).contains(&t)
    {
        return Err(Error::Range(format!(
            "(s, t) = ({s}, {t}) outside [0, {}] × [0, {}]",
            pair.phi_prime, pair.theta_prime
        )));
    }
    Ok(SpindleFrame::new(pair, cfg).point(s, t))
}

/// Cached data for evaluating `X(s, t)`.
struct SpindleFrame {
    b: Point3,
    bp: Point3,
    cp: Point3,
    mid: Point3,
    axis: Point3,
    theta_prime: f64,
}

impl SpindleFrame {
    fn new(pair: &DualPair, cfg: &PointConfig) -> Self {
        let p = cfg.points();
        let (bp, cp) = (p[pair.b_prime], p[pair.c_prime]);
        SpindleFrame {
            b: p[pair.b],
            bp,
            cp,
            mid: bp.midpoint(cp),
            axis: (bp - cp).normalized(),
            theta_prime: pair.theta_prime,
        }
    }

    /// Point of the kept edge `e`, rotated `s` from `b` about the axis.
    fn eta(&self, s: f64) -> Point3 {
        let r = self.b - self.mid;
        self.mid + r * s.cos() + self.axis.cross(r) * s.sin()
    }

    fn point(&self, s: f64, t: f64) -> Point3 {
        let eta = self.eta(s);
        let to_b = self.bp - eta;
        let tp = self.theta_prime;
        let ortho = (self.cp - eta - to_b * tp.cos()) / tp.sin();
        eta + to_b * t.cos() + ortho * t.sin()
    }
}

#[derive(Default)]
struct Builder {
    mesh: TriangleMesh,
}

impl Builder {
    fn push(&mut self, p: Point3) -> u32 {
        self.mesh.vertices.push(p);
        (self.mesh.vertices.len() - 1) as u32
    }

    fn pos(&self, id: u32) -> Point3 {
        self.mesh.vertices[id as usize]
    }

    /// Vertex ids along a curve: `first`, interior samples, `last`.
    fn curve(&mut self, first: u32, last: u32, n: usize, at: impl Fn(f64) -> Point3) -> Vec<u32> {
        let mut ids = Vec::with_capacity(n + 1);
        ids.push(first);
        for k in 1..n {
            let p = at(k as f64 / n as f64);
            ids.push(self.push(p));
        }
        ids.push(last);
        ids
    }

    /// Triangulate the spherical polygon on `∂B(center)` bounded by the
    /// closed vertex loop `ring`: a fan of geodesics from the normalized mean
    /// boundary direction, cut into `n` concentric bands.
    fn fill_spherical(&mut self, center: Point3, ring: &[u32], n: usize) {
        let dirs: Vec<Point3> = ring
            .iter()
            .map(|&id| (self.pos(id) - center).normalized())
            .collect();
        let mut mean = Point3::ORIGIN;
        for &d in &dirs {
            mean += d;
        }
        let hub_dir = mean.normalized();
        let hub = self.push(center + hub_dir);
        let k = ring.len();
        let mut inner: Vec<u32> = vec![hub; k];
        for j in 1..=n {
            let outer: Vec<u32> = if j == n {
                ring.to_vec()
            } else {
                let f = j as f64 / n as f64;
                dirs.iter()
                    .map(|&d| {
                        let p = center + slerp(hub_dir, d, f);
                        self.push(p)
                    })
                    .collect()
            };
            for i in 0..k {
                let i1 = (i + 1) % k;
                if j == 1 {
                    self.mesh.triangles.push([hub, outer[i], outer[i1]]);
                } else {
                    self.mesh.triangles.push([inner[i], outer[i], outer[i1]]);
                    self.mesh.triangles.push([inner[i], outer[i1], inner[i1]]);
                }
            }
            inner = outer;
        }
    }

    /// Make triangles `from..` face away from `inside`.
    fn orient_from(&mut self, from: usize, inside: Point3) {
        let tris = &self.mesh.triangles[from..];
        let verts = &self.mesh.vertices;
        let score: f64 = tris
            .iter()
            .map(|t| {
                let (a, b, c) = (verts[t[0] as usize], verts[t[1] as usize], verts[t[2] as usize]);
                (b - a).cross(c - a).dot((a + b + c) / 3.0 - inside)
            })
            .sum();
        if score < 0.0 {
            for t in &mut self.mesh.triangles[from..] {
                t.swap(1, 2);
            }
        }
    }
}

/// A boundary curve of a face, as vertex ids from one end to the other.
#[derive(Debug, Clone)]
struct Curve {
    ids: Vec<u32>,
}

impl Curve {
    fn first(&self) -> u32 {
        self.ids[0]
    }

    fn last(&self) -> u32 {
        self.ids[self.ids.len() - 1]
    }
}

/// Chain curves sharing end vertices into one closed loop, without the
/// repeated closing vertex.
fn chain_loop(curves: &[Curve]) -> Result<Vec<u32>> {
    if curves.is_empty() {
        return Err(Error::Structure("face without boundary curves".into()));
    }
    let mut used = vec![false; curves.len()];
    used[0] = true;
    let mut ring: Vec<u32> = curves[0].ids.clone();
    let start = curves[0].first();
    for _ in 1..curves.len() {
        let end = *ring.last().expect("non-empty");
        let next = (0..curves.len())
            .find(|&i| !used[i] && (curves[i].first() == end || curves[i].last() == end))
            .ok_or_else(|| Error::Structure("face boundary does not close".into()))?;
        used[next] = true;
        let c = &curves[next];
        if c.first() == end {
            ring.extend_from_slice(&c.ids[1..]);
        } else {
            ring.extend(c.ids.iter().rev().skip(1));
        }
    }
    if ring.last() != Some(&start) {
        return Err(Error::Structure("face boundary does not close".into()));
    }
    ring.pop();
    Ok(ring)
}

/// Mesh one face on `∂B(x)` bounded by a loop of arcs.
///
/// Arcs may be given in either direction; consecutive arcs must meet within
/// `1e-7`, the last closing onto the first, and every arc must lie on the
/// unit sphere around `x`. Triangles face away from `x`.
pub fn mesh_face(x: Point3, boundary: &[ArcOnCircle], n: usize) -> Result<TriangleMesh> {
    const JOIN: f64 = 1e-7;
    if n == 0 {
        return Err(Error::InvalidInput("refinement must be positive".into()));
    }
    if boundary.is_empty() {
        return Err(Error::Structure("empty face boundary".into()));
    }
    for arc in boundary {
        for k in 0..=8 {
            let d = arc.point_at(k as f64 / 8.0).dist(x);
            if (d - 1.0).abs() > 1e-9 {
                return Err(Error::Structure(format!(
                    "boundary point at distance {d} from the face center"
                )));
            }
        }
    }
    // Orient arcs head to tail.
    let mut arcs: Vec<ArcOnCircle> = Vec::with_capacity(boundary.len());
    for (i, &arc) in boundary.iter().enumerate() {
        let arc = if i == 0 {
            let next = boundary.get(1);
            match next {
                Some(nx) if arc.end().dist(nx.start()).min(arc.end().dist(nx.end())) <= JOIN => arc,
                Some(_) => arc.reversed(),
                None => arc,
            }
        } else {
            let prev_end = arcs[i - 1].end();
            if arc.start().dist(prev_end) <= JOIN {
                arc
            } else if arc.end().dist(prev_end) <= JOIN {
                arc.reversed()
            } else {
                return Err(Error::Structure("face boundary arcs do not connect".into()));
            }
        };
        arcs.push(arc);
    }
    if arcs[arcs.len() - 1].end().dist(arcs[0].start()) > JOIN {
        return Err(Error::Structure("face boundary does not close".into()));
    }
    let mut b = Builder::default();
    let corners: Vec<u32> = arcs.iter().map(|a| b.push(a.start())).collect();
    let mut ring = Vec::new();
    for (i, arc) in arcs.iter().enumerate() {
        let last = corners[(i + 1) % corners.len()];
        let ids = b.curve(corners[i], last, n, |f| arc.point_at(f));
        ring.extend_from_slice(&ids[..ids.len() - 1]);
    }
    b.fill_spherical(x, &ring, n);
    b.orient_from(0, x);
    Ok(b.mesh)
}

/// Watertight outward mesh of `B(X)` or of the Meissner body.
///
/// Every edge arc and every surgery geodesic is sampled once at `n + 1`
/// parameter values; the patches on both sides index the same vertices.
pub fn mesh_body(structure: &ReuleauxStructure, kind: BodyKind, n: usize) -> Result<TriangleMesh> {
    if n == 0 {
        return Err(Error::InvalidInput("refinement must be positive".into()));
    }
    let meissner = match kind {
        BodyKind::Reuleaux => false,
        BodyKind::Meissner => true,
        BodyKind::Wedge(_) => {
            return Err(Error::InvalidInput("wedges are not meshed; use reuleaux or meissner".into()))
        }
    };
    let cfg = &structure.config;
    let pts = cfg.points();
    let mut b = Builder::default();
    for &p in pts {
        b.push(p);
    }

    // Curves on each face, keyed by face center index.
    let mut face_curves: HashMap<usize, Vec<Curve>> = HashMap::new();
    let cut: Vec<&crate::polyhedron::EdgeArc> = if meissner {
        structure.pairs.iter().map(|p| &p.e_prime).collect()
    } else {
        Vec::new()
    };
    for edge in &structure.edges {
        if cut.contains(&edge) {
            continue;
        }
        let arc = edge.arc;
        let ids = b.curve(edge.endpoints.0 as u32, edge.endpoints.1 as u32, n, |f| arc.point_at(f));
        for face in [edge.support.0, edge.support.1] {
            face_curves.entry(face).or_default().push(Curve { ids: ids.clone() });
        }
    }

    let mut spindles: Vec<(Vec<Vec<u32>>, Point3)> = Vec::new();
    if meissner {
        for pair in &structure.pairs {
            let frame = SpindleFrame::new(pair, cfg);
            let (bp, cp) = (pair.b_prime as u32, pair.c_prime as u32);
            let (phi_p, theta_p) = (pair.phi_prime, pair.theta_prime);
            let gamma_b = b.curve(bp, cp, n, |f| frame.point(0.0, f * theta_p));
            let collapsed = pair
                .angles()
                .map(|a| spindle_area(&a) < MIN_SPINDLE_AREA)
                .unwrap_or(false);
            let gamma_c = if collapsed {
                gamma_b.clone()
            } else {
                b.curve(bp, cp, n, |f| frame.point(phi_p, f * theta_p))
            };
            face_curves.entry(pair.b).or_default().push(Curve { ids: gamma_b.clone() });
            face_curves.entry(pair.c).or_default().push(Curve { ids: gamma_c.clone() });
            if collapsed {
                continue;
            }
            // columns[i][j] = X(s_i, t_j)
            let mut columns = vec![gamma_b];
            for i in 1..n {
                let s = phi_p * i as f64 / n as f64;
                let col = b.curve(bp, cp, n, |f| frame.point(s, f * theta_p));
                columns.push(col);
            }
            columns.push(gamma_c);
            spindles.push((columns, cfg.centroid()));
        }
    }

    let inside = cfg.centroid();
    for face in 0..pts.len() {
        let curves = face_curves.remove(&face).unwrap_or_default();
        let ring = chain_loop(&curves).map_err(|e| match e {
            Error::Structure(m) => Error::Structure(format!("face {}: {m}", cfg.label(face))),
            other => other,
        })?;
        let from = b.mesh.triangles.len();
        b.fill_spherical(pts[face], &ring, n);
        b.orient_from(from, inside);
    }
    for (columns, inside) in spindles {
        let from = b.mesh.triangles.len();
        for i in 0..n {
            let (l, r) = (&columns[i], &columns[i + 1]);
            for j in 0..n {
                if j == 0 {
                    b.mesh.triangles.push([l[0], r[1], l[1]]);
                } else if j == n - 1 {
                    b.mesh.triangles.push([l[j], r[j], l[j + 1]]);
                } else {
                    b.mesh.triangles.push([l[j], r[j], r[j + 1]]);
                    b.mesh.triangles.push([l[j], r[j + 1], l[j + 1]]);
                }
            }
        }
        b.orient_from(from, inside);
    }
    let mesh = b.mesh;
    mesh.check_watertight()?;
    Ok(mesh)
}
