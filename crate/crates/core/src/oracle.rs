//! Seeded hit-or-miss Monte Carlo volumes for `B(X)`, the Meissner body and
//! single wedges, built on exact membership predicates.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{max_distance_sq_to_arc, ArcOnCircle, Point3};
use crate::polyhedron::{PointConfig, ReuleauxStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyKind {
    Reuleaux,
    Meissner,
    /// Region cut from `B(X)` by the surgery of dual pair `i`.
    Wedge(usize),
}

impl BodyKind {
    /// Parse `reuleaux`, `meissner` or `wedge:<i>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "reuleaux" => Ok(BodyKind::Reuleaux),
            "meissner" => Ok(BodyKind::Meissner),
            _ => s
                .strip_prefix("wedge:")
                .and_then(|i| i.parse().ok())
                .map(BodyKind::Wedge)
                .ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "body '{s}' is not one of reuleaux, meissner, wedge:<i>"
                    ))
                }),
        }
    }

    pub fn name(&self) -> String {
        match self {
            BodyKind::Reuleaux => "reuleaux".into(),
            BodyKind::Meissner => "meissner".into(),
            BodyKind::Wedge(i) => format!("wedge:{i}"),
        }
    }
}

/// Axis-aligned box `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Aabb {
    pub lo: Point3,
    pub hi: Point3,
}

impl Aabb {
    pub fn volume(&self) -> f64 {
        let d = self.hi - self.lo;
        d.x.max(0.0) * d.y.max(0.0) * d.z.max(0.0)
    }

    pub fn intersect(&self, o: &Aabb) -> Aabb {
        Aabb {
            lo: Point3::new(self.lo.x.max(o.lo.x), self.lo.y.max(o.lo.y), self.lo.z.max(o.lo.z)),
            hi: Point3::new(self.hi.x.min(o.hi.x), self.hi.y.min(o.hi.y), self.hi.z.min(o.hi.z)),
        }
    }

    pub fn contains(&self, p: Point3) -> bool {
        (0..3).all(|i| self.lo.coord(i) <= p.coord(i) && p.coord(i) <= self.hi.coord(i))
    }
}

/// Which body a membership query targets.
#[derive(Debug, Clone)]
pub struct BodySpec {
    pub kind: BodyKind,
    pub config: PointConfig,
    /// Kept edge `e` of every dual pair, in pair order.
    pub arcs: Vec<ArcOnCircle>,
    /// For each pair, the centers `(b, c)` whose spheres carry the surgery edge.
    pub supports: Vec<(Point3, Point3)>,
}

impl BodySpec {
    pub fn new(structure: &ReuleauxStructure, kind: BodyKind) -> Result<Self> {
        if let BodyKind::Wedge(i) = kind {
            if i >= structure.pairs.len() {
                return Err(Error::InvalidInput(format!(
                    "wedge index {i} out of range ({} dual pairs)",
                    structure.pairs.len()
                )));
            }
        }
        let pts = structure.config.points();
        Ok(BodySpec {
            kind,
            config: structure.config.clone(),
            arcs: structure.pairs.iter().map(|p| p.e.arc).collect(),
            supports: structure
                .pairs
                .iter()
                .map(|p| (pts[p.b], pts[p.c]))
                .collect(),
        })
    }

    /// Closed membership test, no epsilon.
    pub fn contains(&self, p: Point3) -> bool {
        if !self.config.points().iter().all(|&x| p.dist_sq(x) <= 1.0) {
            return false;
        }
        match self.kind {
            BodyKind::Reuleaux => true,
            BodyKind::Meissner => self
                .arcs
                .iter()
                .all(|arc| max_distance_sq_to_arc(p, arc) <= 1.0),
            BodyKind::Wedge(i) => max_distance_sq_to_arc(p, &self.arcs[i]) >= 1.0,
        }
    }

    /// Sampling box: the hull of `X` grown by one, shrunk for wedges to the
    /// box of the lens `B(b) ∩ B(c)` around the surgery edge.
    pub fn bounding_box(&self) -> Aabb {
        let pts = self.config.points();
        let mut lo = pts[0];
        let mut hi = pts[0];
        for p in pts {
            lo = Point3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
            hi = Point3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
        }
        let one = Point3::new(1.0, 1.0, 1.0);
        let global = Aabb {
            lo: lo - one,
            hi: hi + one,
        };
        match self.kind {
            BodyKind::Wedge(i) => {
                let (b, c) = self.supports[i];
                global.intersect(&lens_box(b, c))
            }
            _ => global,
        }
    }
}

/// Box around the lens `B(b) ∩ B(c)` of two unit balls.
///
/// The lens sits inside the cylinder of radius `√(1 − d²/4)` and half-length
/// `1 − d/2` about the center line, whose box is used.
pub fn lens_box(b: Point3, c: Point3) -> Aabb {
    let d = b.dist(c);
    let axis = (b - c) / d;
    let m = b.midpoint(c);
    let radius = (1.0 - 0.25 * d * d).max(0.0).sqrt();
    let half_len = 1.0 - 0.5 * d;
    let ext = |a: f64| half_len * a.abs() + radius * (1.0 - a * a).max(0.0).sqrt();
    let e = Point3::new(ext(axis.x), ext(axis.y), ext(axis.z));
    Aabb {
        lo: m - e,
        hi: m + e,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub seed: u64,
    pub samples: u64,
    /// Samples per independent RNG stream.
    pub batch: u64,
}

impl McConfig {
    pub const DEFAULT_BATCH: u64 = 1 << 16;

    pub fn new(seed: u64, samples: u64) -> Self {
        McConfig {
            seed,
            samples,
            batch: Self::DEFAULT_BATCH,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub volume_mean: f64,
    pub std_error: f64,
    pub hit_count: u64,
    pub sample_count: u64,
    pub bbox_volume: f64,
}

impl McEstimate {
    fn from_counts(hit_count: u64, sample_count: u64, bbox_volume: f64) -> Self {
        let n = sample_count as f64;
        let p = hit_count as f64 / n;
        McEstimate {
            volume_mean: bbox_volume * p,
            std_error: bbox_volume * (p * (1.0 - p) / n).sqrt(),
            hit_count,
            sample_count,
            bbox_volume,
        }
    }

    /// `|mean − target|` measured in standard errors.
    pub fn sigmas_from(&self, target: f64) -> f64 {
        (self.volume_mean - target).abs() / self.std_error
    }
}

/// Hits in chunk `k`. Chunk `k` always draws from stream `k` of the seed,
/// so the total does not depend on how chunks are scheduled.
fn chunk_hits(body: &BodySpec, bbox: &Aabb, seed: u64, k: u64, n: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    let span = bbox.hi - bbox.lo;
    let mut hits = 0;
    for _ in 0..n {
        let p = Point3::new(
            bbox.lo.x + span.x * rng.random::<f64>(),
            bbox.lo.y + span.y * rng.random::<f64>(),
            bbox.lo.z + span.z * rng.random::<f64>(),
        );
        if body.contains(p) {
            hits += 1;
        }
    }
    hits
}

/// Hit-or-miss volume estimate. Runs on the current rayon pool; the result
/// is bit-identical for any pool size.
pub fn mc_volume(body: &BodySpec, mc: &McConfig) -> Result<McEstimate> {
    if mc.samples == 0 {
        return Err(Error::InvalidInput("Monte Carlo needs at least one sample".into()));
    }
    if mc.batch == 0 {
        return Err(Error::InvalidInput("Monte Carlo batch must be positive".into()));
    }
    let bbox = body.bounding_box();
    let chunks = mc.samples.div_ceil(mc.batch);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let n = mc.batch.min(mc.samples - k * mc.batch);
            chunk_hits(body, &bbox, mc.seed, k, n)
        })
        .sum();
    Ok(McEstimate::from_counts(hits, mc.samples, bbox.volume()))
}
