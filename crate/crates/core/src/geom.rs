//! Primitive geometry: points, circles cut out by pairs of unit spheres,
//! arcs on those circles, and closed angular interval sets.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn dot(self, o: Point3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Point3) -> Point3 {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(self, o: Point3) -> f64 {
        (self - o).norm()
    }

    pub fn dist_sq(self, o: Point3) -> f64 {
        (self - o).norm_sq()
    }

    /// Unit vector in the same direction. Callers guarantee a non-zero vector.
    pub fn normalized(self) -> Point3 {
        self / self.norm()
    }

    pub fn midpoint(self, o: Point3) -> Point3 {
        (self + o) * 0.5
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn coord(self, i: usize) -> f64 {
        match i {
            0 => self.x,
            1 => self.y,
            _ => self.z,
        }
    }
}

impl From<[f64; 3]> for Point3 {
    fn from(a: [f64; 3]) -> Self {
        Point3::new(a[0], a[1], a[2])
    }
}

impl From<Point3> for [f64; 3] {
    fn from(p: Point3) -> Self {
        p.to_array()
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Point3 {
    fn add_assign(&mut self, o: Point3) {
        *self = *self + o;
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Point3> for f64 {
    type Output = Point3;
    fn mul(self, p: Point3) -> Point3 {
        p * self
    }
}

impl Div<f64> for Point3 {
    type Output = Point3;
    fn div(self, s: f64) -> Point3 {
        Point3::new(self.x / s, self.y / s, self.z / s)
    }
}

/// Numerical slack used throughout construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Distance-equality slack.
    pub dist_eps: f64,
    /// Angular slack on circles; shorter intervals are discarded.
    pub ang_eps: f64,
    /// Acceptance radius when matching arc endpoints to points of the set.
    pub match_eps: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            dist_eps: 1e-9,
            ang_eps: 1e-7,
            match_eps: 1e-7,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !(ok(self.dist_eps) && ok(self.ang_eps) && ok(self.match_eps)) {
            return Err(Error::InvalidInput(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        if self.dist_eps >= 1e-3 {
            return Err(Error::InvalidInput(format!(
                "dist_eps {} must be below 1e-3",
                self.dist_eps
            )));
        }
        Ok(())
    }

    pub fn with_dist_eps(mut self, dist_eps: f64) -> Self {
        self.dist_eps = dist_eps;
        self
    }
}

/// A circle in space with an oriented angular coordinate.
///
/// Points are `center + radius * (cos ψ · u_ref + sin ψ · (axis × u_ref))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle3 {
    pub center: Point3,
    pub radius: f64,
    pub axis: Point3,
    pub u_ref: Point3,
}

impl Circle3 {
    /// Build a circle with the deterministic angle-zero reference: the
    /// normalized component, orthogonal to `axis`, of the global basis vector
    /// least aligned with `axis` (lowest index on ties).
    pub fn new(center: Point3, radius: f64, axis: Point3) -> Result<Self> {
        let n = axis.norm();
        if !(n > 0.0) || !center.is_finite() || !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::Degenerate(
                "circle needs a finite center, positive radius and non-zero axis".into(),
            ));
        }
        let axis = axis / n;
        let a = axis.to_array().map(f64::abs);
        let mut k = 0;
        for i in 1..3 {
            if a[i] < a[k] {
                k = i;
            }
        }
        let mut e = [0.0; 3];
        e[k] = 1.0;
        let e = Point3::from(e);
        let u_ref = (e - axis * e.dot(axis)).normalized();
        Ok(Circle3 {
            center,
            radius,
            axis,
            u_ref,
        })
    }

    /// Second in-plane basis vector, `axis × u_ref`.
    pub fn v_ref(&self) -> Point3 {
        self.axis.cross(self.u_ref)
    }

    pub fn point(&self, psi: f64) -> Point3 {
        self.center + (self.u_ref * psi.cos() + self.v_ref() * psi.sin()) * self.radius
    }

    /// Angle in `[0, 2π)` of the projection of `p` onto the circle plane.
    pub fn angle_of(&self, p: Point3) -> f64 {
        let q = p - self.center;
        q.dot(self.v_ref()).atan2(q.dot(self.u_ref)).rem_euclid(TAU)
    }
}

/// Counterclockwise arc `[start_angle, end_angle]` on a circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcOnCircle {
    pub circle: Circle3,
    pub start_angle: f64,
    pub end_angle: f64,
}

impl ArcOnCircle {
    pub fn new(circle: Circle3, start_angle: f64, end_angle: f64) -> Result<Self> {
        let span = end_angle - start_angle;
        if !(span > 0.0 && span < TAU) {
            return Err(Error::Degenerate(format!(
                "arc span {span} must lie in (0, 2π)"
            )));
        }
        Ok(ArcOnCircle {
            circle,
            start_angle,
            end_angle,
        })
    }

    pub fn span(&self) -> f64 {
        self.end_angle - self.start_angle
    }

    pub fn start(&self) -> Point3 {
        self.circle.point(self.start_angle)
    }

    pub fn end(&self) -> Point3 {
        self.circle.point(self.end_angle)
    }

    /// Point at fraction `f ∈ [0, 1]` of the arc.
    pub fn point_at(&self, f: f64) -> Point3 {
        self.circle.point(self.start_angle + f * self.span())
    }

    pub fn contains_angle(&self, psi: f64) -> bool {
        (psi - self.start_angle).rem_euclid(TAU) <= self.span()
    }

    /// The same point set traversed the other way.
    pub fn reversed(&self) -> ArcOnCircle {
        let c = self.circle;
        let flipped = Circle3 {
            center: c.center,
            radius: c.radius,
            axis: -c.axis,
            u_ref: c.u_ref,
        };
        // ψ ↦ −ψ under the flipped frame.
        ArcOnCircle {
            circle: flipped,
            start_angle: -self.end_angle,
            end_angle: -self.start_angle,
        }
    }
}

/// Finite union of closed angular intervals, kept sorted, disjoint and
/// inside `[0, 2π]`. An arc crossing angle zero is stored as two pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularIntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl AngularIntervalSet {
    pub fn empty() -> Self {
        AngularIntervalSet {
            intervals: Vec::new(),
        }
    }

    pub fn full() -> Self {
        AngularIntervalSet {
            intervals: vec![(0.0, TAU)],
        }
    }

    /// Canonical set from raw closed intervals `[lo, hi]` (any real `lo`,
    /// `hi ≥ lo`). Pieces shorter than `ang_eps` are dropped.
    pub fn from_intervals(raw: &[(f64, f64)], ang_eps: f64) -> Self {
        let mut pieces = Vec::with_capacity(raw.len() + 1);
        for &(lo, hi) in raw {
            let width = hi - lo;
            if !(width >= 0.0) {
                continue;
            }
            if width >= TAU {
                return Self::full();
            }
            let lo = lo.rem_euclid(TAU);
            let hi = lo + width;
            if hi > TAU {
                pieces.push((lo, TAU));
                pieces.push((0.0, hi - TAU));
            } else {
                pieces.push((lo, hi));
            }
        }
        pieces.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(pieces.len());
        for (lo, hi) in pieces {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        let set = AngularIntervalSet { intervals: merged };
        if set.is_full() {
            return Self::full();
        }
        // Width filter runs on seam-joined components so a long arc crossing
        // zero is never split into a dropped sliver.
        let kept: Vec<(f64, f64)> = set
            .components()
            .into_iter()
            .filter(|(lo, hi)| hi - lo >= ang_eps)
            .collect();
        let mut out = Vec::with_capacity(kept.len() + 1);
        for (lo, hi) in kept {
            if hi > TAU {
                out.push((lo, TAU));
                out.push((0.0, hi - TAU));
            } else {
                out.push((lo, hi));
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        AngularIntervalSet { intervals: out }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.intervals.len() == 1 && self.intervals[0].0 <= 0.0 && self.intervals[0].1 >= TAU
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }

    pub fn contains(&self, psi: f64) -> bool {
        let psi = psi.rem_euclid(TAU);
        self.intervals
            .iter()
            .any(|&(lo, hi)| lo <= psi && psi <= hi)
    }

    /// Connected arcs as `(start, end)` with `start ∈ [0, 2π)`; an arc that
    /// crosses zero has `end > 2π`. The full circle is `(0, 2π)`.
    pub fn components(&self) -> Vec<(f64, f64)> {
        let mut comps: Vec<(f64, f64)> = self.intervals.clone();
        if self.is_full() || comps.len() < 2 {
            return comps;
        }
        let first = comps[0];
        let last = comps[comps.len() - 1];
        if first.0 <= 0.0 && last.1 >= TAU {
            comps.remove(0);
            let n = comps.len();
            comps[n - 1].1 = TAU + first.1;
        }
        comps
    }

    pub fn intersect(&self, other: &AngularIntervalSet, ang_eps: f64) -> AngularIntervalSet {
        let mut raw = Vec::new();
        for &(a0, a1) in &self.intervals {
            for &(b0, b1) in &other.intervals {
                let lo = a0.max(b0);
                let hi = a1.min(b1);
                if hi >= lo {
                    raw.push((lo, hi));
                }
            }
        }
        AngularIntervalSet::from_intervals(&raw, ang_eps)
    }
}

/// Circle `∂B(b) ∩ ∂B(c)` of two unit spheres.
pub fn circle_of_sphere_pair(b: Point3, c: Point3) -> Result<Circle3> {
    let d = b.dist(c);
    if !(d > 0.0) || !(d < 2.0) || !d.is_finite() {
        return Err(Error::Degenerate(format!(
            "sphere centers at distance {d} do not cut a circle"
        )));
    }
    let radius = (1.0 - 0.25 * d * d).sqrt();
    Circle3::new(b.midpoint(c), radius, (b - c) / d)
}

/// Angles `ψ` with `|circle.point(ψ) − x| ≤ 1`.
pub fn ball_constraint_interval(
    circle: &Circle3,
    x: Point3,
    tol: &Tolerances,
) -> AngularIntervalSet {
    // |q + r(cos ψ u + sin ψ w)|² ≤ 1  ⇔  A cos ψ + B sin ψ ≥ C
    let q = circle.center - x;
    let r = circle.radius;
    let a = -2.0 * r * q.dot(circle.u_ref);
    let b = -2.0 * r * q.dot(circle.v_ref());
    let c = q.norm_sq() + r * r - 1.0;
    let amp = a.hypot(b);
    if amp <= 1e-15 {
        return if c <= 0.0 {
            AngularIntervalSet::full()
        } else {
            AngularIntervalSet::empty()
        };
    }
    let ratio = c / amp;
    if ratio <= -1.0 {
        return AngularIntervalSet::full();
    }
    if ratio > 1.0 {
        return AngularIntervalSet::empty();
    }
    let mid = b.atan2(a);
    let half = ratio.acos();
    AngularIntervalSet::from_intervals(&[(mid - half, mid + half)], tol.ang_eps)
}

pub fn intersect_interval_sets(sets: &[AngularIntervalSet], ang_eps: f64) -> AngularIntervalSet {
    sets.iter()
        .fold(AngularIntervalSet::full(), |acc, s| acc.intersect(s, ang_eps))
}

/// Squared form of [`max_distance_to_arc`], used in hot loops.
pub fn max_distance_sq_to_arc(p: Point3, arc: &ArcOnCircle) -> f64 {
    let c = &arc.circle;
    let q = p - c.center;
    let h = q.dot(c.axis);
    let qu = q.dot(c.u_ref);
    let qv = q.dot(c.v_ref());
    let rho_sq = qu * qu + qv * qv;
    // |p − c(ψ)|² = h² + ρ² + r² − 2ρr cos(ψ − ψ_p), largest at ψ_p + π.
    let far = qv.atan2(qu) + PI;
    if rho_sq > 0.0 && arc.contains_angle(far) {
        let rho = rho_sq.sqrt();
        return h * h + (rho + c.radius) * (rho + c.radius);
    }
    if rho_sq == 0.0 {
        return h * h + c.radius * c.radius;
    }
    p.dist_sq(arc.start()).max(p.dist_sq(arc.end()))
}

/// Largest distance from `p` to a point of `arc`.
pub fn max_distance_to_arc(p: Point3, arc: &ArcOnCircle) -> f64 {
    max_distance_sq_to_arc(p, arc).sqrt()
}

/// Point on the unit-speed great-circle path from direction `a` to `b`
/// (both unit) at fraction `f`.
pub fn slerp(a: Point3, b: Point3, f: f64) -> Point3 {
    let cos = a.dot(b).clamp(-1.0, 1.0);
    let omega = cos.acos();
    if omega < 1e-12 {
        return (a * (1.0 - f) + b * f).normalized();
    }
    let s = omega.sin();
    (a * ((1.0 - f) * omega).sin() + b * (f * omega).sin()) / s
}
