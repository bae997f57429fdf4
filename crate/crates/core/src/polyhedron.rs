//! Combinatorial and geometric structure of the Reuleaux polyhedron `B(X)`
//! of an extremal point set: diameter graph, edge arcs, dual edge pairs and
//! vertex classification.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formulas::AnglePair;
use crate::geom::{
    ball_constraint_interval, circle_of_sphere_pair, intersect_interval_sets, ArcOnCircle,
    Point3, Tolerances,
};

/// Names accepted by [`PointConfig::generator`].
pub const GENERATORS: &[&str] = &["tetra", "pentad"];

/// A labeled point set `X` together with its tolerance policy.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfig {
    points: Vec<Point3>,
    labels: Option<Vec<String>>,
    pub tol: Tolerances,
}

#[derive(Debug, Serialize, Deserialize)]
struct PointSetFile {
    points: Vec<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl PointConfig {
    pub fn new(points: Vec<Point3>, labels: Option<Vec<String>>, tol: Tolerances) -> Result<Self> {
        tol.validate()?;
        if points.len() < 4 {
            return Err(Error::InvalidInput(format!(
                "need at least 4 points, got {}",
                points.len()
            )));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidInput(format!("point {i} has a non-finite coordinate")));
        }
        if let Some(l) = &labels {
            if l.len() != points.len() {
                return Err(Error::InvalidInput(format!(
                    "{} labels for {} points",
                    l.len(),
                    points.len()
                )));
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i].dist(points[j]) <= tol.dist_eps {
                    return Err(Error::InvalidInput(format!(
                        "points {i} and {j} coincide within dist_eps"
                    )));
                }
            }
        }
        Ok(PointConfig {
            points,
            labels,
            tol,
        })
    }

    /// Built-in configurations: `tetra` (regular unit tetrahedron) and
    /// `pentad` (five points with one dangling vertex).
    pub fn generator(name: &str, tol: Tolerances) -> Result<Self> {
        let (points, labels): (Vec<Point3>, Vec<&str>) = match name {
            "tetra" => {
                let k = 1.0 / (2.0 * 2f64.sqrt());
                (
                    vec![
                        Point3::new(0.5, 0.0, -k),
                        Point3::new(-0.5, 0.0, -k),
                        Point3::new(0.0, 0.5, k),
                        Point3::new(0.0, -0.5, k),
                    ],
                    vec!["z1", "z2", "z3", "z4"],
                )
            }
            "pentad" => {
                let r = 3f64.sqrt() / 2.0;
                let delta = 2.0 * (1.0 / 3f64.sqrt()).asin();
                let on_equator = |t: f64| Point3::new(r * t.cos(), r * t.sin(), 0.0);
                (
                    vec![
                        Point3::new(0.0, 0.0, 0.5),
                        Point3::new(0.0, 0.0, -0.5),
                        on_equator(0.0),
                        on_equator(0.5 * delta),
                        on_equator(delta),
                    ],
                    vec!["b", "c", "p1", "p2", "p3"],
                )
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown generator '{other}' (known: {})",
                    GENERATORS.join(", ")
                )))
            }
        };
        PointConfig::new(points, Some(labels.into_iter().map(String::from).collect()), tol)
    }

    pub fn from_json(text: &str, tol: Tolerances) -> Result<Self> {
        let file: PointSetFile = serde_json::from_str(text)?;
        PointConfig::new(
            file.points.into_iter().map(Point3::from).collect(),
            file.labels,
            tol,
        )
    }

    pub fn to_json(&self) -> String {
        let file = PointSetFile {
            points: self.points.iter().map(|p| p.to_array()).collect(),
            labels: self.labels.clone(),
        };
        serde_json::to_string_pretty(&file).expect("point set serializes")
    }

    /// Resolve `generator:NAME` pseudo-paths or read a point-set JSON file.
    pub fn load(input: &str, tol: Tolerances) -> Result<Self> {
        match input.strip_prefix("generator:") {
            Some(name) => PointConfig::generator(name, tol),
            None => {
                let text = std::fs::read_to_string(Path::new(input))?;
                PointConfig::from_json(&text, tol)
            }
        }
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("x{i}"),
        }
    }

    pub fn centroid(&self) -> Point3 {
        let mut s = Point3::ORIGIN;
        for &p in &self.points {
            s += p;
        }
        s / self.points.len() as f64
    }

    /// Same labels and tolerances, points mapped through `f`.
    pub fn map_points(&self, f: impl Fn(Point3) -> Point3) -> Result<Self> {
        PointConfig::new(
            self.points.iter().map(|&p| f(p)).collect(),
            self.labels.clone(),
            self.tol,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiameterGraph {
    pub n: usize,
    /// Pairs `(i, j)`, `i < j`, at distance one within `dist_eps`.
    pub edges: Vec<(usize, usize)>,
    /// Pairs farther apart than `1 + dist_eps`, with their distance.
    pub overlong: Vec<(usize, usize, f64)>,
}

pub fn diameter_graph(cfg: &PointConfig) -> DiameterGraph {
    let eps = cfg.tol.dist_eps;
    let pts = cfg.points();
    let mut edges = Vec::new();
    let mut overlong = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = pts[i].dist(pts[j]);
            if (d - 1.0).abs() <= eps {
                edges.push((i, j));
            } else if d > 1.0 + eps {
                overlong.push((i, j, d));
            }
        }
    }
    DiameterGraph {
        n: pts.len(),
        edges,
        overlong,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalityReport {
    pub point_count: usize,
    pub diameter: f64,
    pub diametric_pair_count: usize,
    pub required_pair_count: usize,
    pub is_extremal: bool,
    pub violations: Vec<String>,
}

pub fn check_extremal(cfg: &PointConfig) -> Result<ExtremalityReport> {
    let n = cfg.len();
    if n < 4 {
        return Err(Error::InvalidInput(format!("need at least 4 points, got {n}")));
    }
    let eps = cfg.tol.dist_eps;
    let graph = diameter_graph(cfg);
    let pts = cfg.points();
    let mut diameter: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            diameter = diameter.max(pts[i].dist(pts[j]));
        }
    }
    let required = 2 * n - 2;
    let mut violations = Vec::new();
    for &(i, j, d) in &graph.overlong {
        violations.push(format!(
            "pair ({}, {}) at distance {d} exceeds the unit diameter",
            cfg.label(i),
            cfg.label(j)
        ));
    }
    if (diameter - 1.0).abs() > eps {
        violations.push(format!("diameter {diameter} differs from 1"));
    }
    if graph.edges.len() != required {
        violations.push(format!(
            "{} diametric pairs, extremal sets have exactly {required}",
            graph.edges.len()
        ));
    }
    Ok(ExtremalityReport {
        point_count: n,
        diameter,
        diametric_pair_count: graph.edges.len(),
        required_pair_count: required,
        is_extremal: violations.is_empty(),
        violations,
    })
}

/// A circular edge of `B(X)` on `∂B(b) ∩ ∂B(c)` for its support pair `{b, c}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeArc {
    /// Indices of the two sphere centers, ascending.
    pub support: (usize, usize),
    pub arc: ArcOnCircle,
    /// Vertex indices at the arc's start and end angle.
    pub endpoints: (usize, usize),
}

impl EdgeArc {
    pub fn sorted_endpoints(&self) -> (usize, usize) {
        sort_pair(self.endpoints)
    }
}

fn sort_pair((a, b): (usize, usize)) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn nearest_point(cfg: &PointConfig, p: Point3) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &x) in cfg.points().iter().enumerate() {
        let d = x.dist(p);
        if d <= cfg.tol.match_eps && best.is_none_or(|(_, bd)| d < bd) {
            best = Some((i, d));
        }
    }
    best.map(|(i, _)| i)
}

/// Edges of one support pair, in increasing angle order.
fn edges_on_pair(cfg: &PointConfig, i: usize, j: usize) -> Result<Vec<EdgeArc>> {
    let tol = cfg.tol;
    let pts = cfg.points();
    let circle = circle_of_sphere_pair(pts[i], pts[j])?;
    let constraints: Vec<_> = (0..pts.len())
        .filter(|&k| k != i && k != j)
        .map(|k| ball_constraint_interval(&circle, pts[k], &tol))
        .collect();
    let surviving = intersect_interval_sets(&constraints, tol.ang_eps);

    // Points of X lying on this circle, by angle.
    let on_circle: Vec<(usize, f64)> = (0..pts.len())
        .filter(|&k| k != i && k != j)
        .filter(|&k| {
            (pts[k].dist(pts[i]) - 1.0).abs() <= tol.match_eps
                && (pts[k].dist(pts[j]) - 1.0).abs() <= tol.match_eps
        })
        .map(|k| (k, circle.angle_of(pts[k])))
        .collect();

    let mut out = Vec::new();
    for (lo, hi) in surviving.components() {
        let full = hi - lo >= TAU;
        let mut cuts: Vec<f64> = on_circle
            .iter()
            .map(|&(_, a)| if a < lo { a + TAU } else { a })
            .filter(|&a| full || (a > lo + tol.ang_eps && a < hi - tol.ang_eps))
            .collect();
        cuts.sort_by(f64::total_cmp);
        let bounds: Vec<f64> = if full {
            if cuts.is_empty() {
                return Err(Error::Structure(format!(
                    "circle of ({}, {}) survives whole with no vertex on it",
                    cfg.label(i),
                    cfg.label(j)
                )));
            }
            let first = cuts[0];
            cuts.push(first + TAU);
            cuts
        } else {
            let mut b = vec![lo];
            b.extend(cuts);
            b.push(hi);
            b
        };
        for w in bounds.windows(2) {
            let (s, e) = (w[0], w[1]);
            if e - s <= tol.ang_eps {
                continue;
            }
            let match_end = |angle: f64| {
                nearest_point(cfg, circle.point(angle)).ok_or_else(|| {
                    Error::Structure(format!(
                        "arc endpoint on circle of ({}, {}) at angle {angle} matches no point",
                        cfg.label(i),
                        cfg.label(j)
                    ))
                })
            };
            let a = match_end(s)?;
            let b = match_end(e)?;
            // Snap to the exact angles of the matched vertices.
            let snap = |k: usize, near: f64| {
                let a = circle.angle_of(pts[k]);
                near + ((a - near + std::f64::consts::PI).rem_euclid(TAU) - std::f64::consts::PI)
            };
            let s = snap(a, s);
            let e = snap(b, e);
            out.push(EdgeArc {
                support: (i, j),
                arc: ArcOnCircle::new(circle, s, e)?,
                endpoints: (a, b),
            });
        }
    }
    Ok(out)
}

/// All edges of `B(X)`, ordered by support pair then angle.
pub fn extract_edges(cfg: &PointConfig) -> Result<Vec<EdgeArc>> {
    let pts = cfg.points();
    let mut out = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i].dist(pts[j]) <= 1.0 + cfg.tol.dist_eps {
                out.extend(edges_on_pair(cfg, i, j)?);
            }
        }
    }
    Ok(out)
}

/// A dual edge pair `(e, e′)`.
///
/// `e` runs from `b` to `c` on `∂B(b′) ∩ ∂B(c′)`; `e′` runs between `b′` and
/// `c′` on `∂B(b) ∩ ∂B(c)`. Labels are oriented so that
/// `((b′ − m) × (c′ − m)) · (b − c) > 0` with `m = (b + c)/2`. Surgery for
/// the Meissner body happens along `e′`, so `e` is the edge that is kept.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPair {
    pub e: EdgeArc,
    pub e_prime: EdgeArc,
    pub b: usize,
    pub c: usize,
    pub b_prime: usize,
    pub c_prime: usize,
    pub theta: f64,
    pub theta_prime: f64,
    pub phi: f64,
    pub phi_prime: f64,
}

impl DualPair {
    pub fn angles(&self) -> Result<AnglePair> {
        AnglePair::new(self.theta, self.theta_prime)
    }
}

/// Angle at the line through `p`, `q` between the half-planes holding `r` and `s`.
fn dihedral(p: Point3, q: Point3, r: Point3, s: Point3) -> f64 {
    let axis = (p - q).normalized();
    let m = p.midpoint(q);
    let proj = |x: Point3| {
        let d = x - m;
        d - axis * d.dot(axis)
    };
    let (u, w) = (proj(r), proj(s));
    u.cross(w).norm().atan2(u.dot(w))
}

/// Match every edge with its dual and orient each pair.
pub fn pair_duals(edges: &[EdgeArc], cfg: &PointConfig) -> Result<Vec<DualPair>> {
    let pts = cfg.points();
    let mut partner = vec![None; edges.len()];
    for (i, e) in edges.iter().enumerate() {
        let ends = e.sorted_endpoints();
        let mut found = edges
            .iter()
            .enumerate()
            .filter(|(_, o)| o.support == ends && o.sorted_endpoints() == e.support);
        let first = found.next();
        if found.next().is_some() {
            return Err(Error::Structure(format!(
                "edge on ({}, {}) has more than one dual",
                cfg.label(e.support.0),
                cfg.label(e.support.1)
            )));
        }
        match first {
            Some((j, _)) => partner[i] = Some(j),
            None => {
                return Err(Error::Structure(format!(
                    "edge on ({}, {}) with endpoints ({}, {}) has no dual",
                    cfg.label(e.support.0),
                    cfg.label(e.support.1),
                    cfg.label(e.endpoints.0),
                    cfg.label(e.endpoints.1)
                )))
            }
        }
    }
    let mut pairs = Vec::new();
    for (i, p) in partner.iter().enumerate() {
        let j = p.expect("all matched");
        if partner[j] != Some(i) {
            return Err(Error::Structure("dual matching is not symmetric".into()));
        }
        if i > j {
            continue;
        }
        // Lexicographically smaller support pair is the surgery edge e′.
        let (cut, kept) = if edges[i].support <= edges[j].support {
            (&edges[i], &edges[j])
        } else {
            (&edges[j], &edges[i])
        };
        let (mut b, mut c) = cut.support;
        let (bp, cp) = kept.support;
        let m = pts[b].midpoint(pts[c]);
        let orient = (pts[bp] - m).cross(pts[cp] - m).dot(pts[b] - pts[c]);
        if orient < 0.0 {
            std::mem::swap(&mut b, &mut c);
        }
        let theta = 2.0 * (0.5 * pts[b].dist(pts[c])).asin();
        let theta_prime = 2.0 * (0.5 * pts[bp].dist(pts[cp])).asin();
        pairs.push(DualPair {
            e: kept.clone(),
            e_prime: cut.clone(),
            b,
            c,
            b_prime: bp,
            c_prime: cp,
            theta,
            theta_prime,
            phi: dihedral(pts[b], pts[c], pts[bp], pts[cp]),
            phi_prime: dihedral(pts[bp], pts[cp], pts[b], pts[c]),
        });
    }
    let expected = cfg.len() - 1;
    if pairs.len() != expected {
        return Err(Error::Structure(format!(
            "{} dual edge pairs, expected {expected}",
            pairs.len()
        )));
    }
    Ok(pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    /// On three or more faces.
    Principal,
    /// On exactly two faces.
    Dangling,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexInfo {
    pub index: usize,
    pub label: String,
    pub faces: Vec<usize>,
    pub kind: VertexKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureReport {
    pub vertices: Vec<VertexInfo>,
    pub edge_count: usize,
    pub face_count: usize,
    pub dual_pair_count: usize,
    pub euler_characteristic: i64,
}

impl StructureReport {
    pub fn dangling(&self) -> impl Iterator<Item = &VertexInfo> {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Dangling)
    }
}

pub fn classify_vertices(cfg: &PointConfig, edges: &[EdgeArc]) -> Result<StructureReport> {
    let n = cfg.len();
    let mut vertices = Vec::with_capacity(n);
    for v in 0..n {
        let faces: BTreeSet<usize> = edges
            .iter()
            .filter(|e| e.endpoints.0 == v || e.endpoints.1 == v)
            .flat_map(|e| [e.support.0, e.support.1])
            .collect();
        let kind = match faces.len() {
            0 | 1 => {
                return Err(Error::Structure(format!(
                    "vertex {} lies on {} faces",
                    cfg.label(v),
                    faces.len()
                )))
            }
            2 => VertexKind::Dangling,
            _ => VertexKind::Principal,
        };
        vertices.push(VertexInfo {
            index: v,
            label: cfg.label(v),
            faces: faces.into_iter().collect(),
            kind,
        });
    }
    let euler = n as i64 - edges.len() as i64 + n as i64;
    if euler != 2 {
        return Err(Error::Structure(format!(
            "Euler characteristic {euler} (V={n}, E={}, F={n})",
            edges.len()
        )));
    }
    Ok(StructureReport {
        vertices,
        edge_count: edges.len(),
        face_count: n,
        dual_pair_count: edges.len() / 2,
        euler_characteristic: euler,
    })
}

/// Everything known about `B(X)` for a validated extremal configuration.
#[derive(Debug, Clone)]
pub struct ReuleauxStructure {
    pub config: PointConfig,
    pub extremality: ExtremalityReport,
    pub edges: Vec<EdgeArc>,
    pub pairs: Vec<DualPair>,
    pub report: StructureReport,
}

impl ReuleauxStructure {
    pub fn build(config: PointConfig) -> Result<Self> {
        let extremality = check_extremal(&config)?;
        if !extremality.is_extremal {
            return Err(Error::Validation(extremality.violations.join("; ")));
        }
        let edges = extract_edges(&config)?;
        let pairs = pair_duals(&edges, &config)?;
        let report = classify_vertices(&config, &edges)?;
        Ok(ReuleauxStructure {
            config,
            extremality,
            edges,
            pairs,
            report,
        })
    }

    pub fn angle_pairs(&self) -> Result<Vec<AnglePair>> {
        self.pairs.iter().map(DualPair::angles).collect()
    }
}
