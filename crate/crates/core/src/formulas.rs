//! Closed-form volume, surface-area and flux quantities expressed through
//! the angles `(θ, θ′)` of a dual edge pair.
//!
//! Notation: `θ` is the angular length of the kept edge's chord as seen from
//! the spheres it borders, `θ′` the same for the surgery edge. `φ` and `φ′`
//! are the dihedral angles determined by them through
//! `sin(φ/2) = sin(θ′/2)/cos(θ/2)` and `sin(φ′/2) = sin(θ/2)/cos(θ′/2)`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Upper end of the admissible angle range, with slack for rounding.
pub const MAX_ANGLE: f64 = PI / 3.0 + 1e-9;

/// Slack allowed on `asin` arguments before clamping turns into an error.
const ASIN_SLACK: f64 = 1e-12;

/// Half-open interior used for grid sweeps over `(0, π/3)²`.
pub const SWEEP_LO: f64 = 0.01;
pub const SWEEP_HI: f64 = PI / 3.0 - 0.01;

/// Allowed disagreement between the two wedge-volume routes in a sweep.
pub const WEDGE_RESIDUAL_TOL: f64 = 1e-10;

fn asin_checked(x: f64, what: &str) -> Result<f64> {
    if x.abs() <= 1.0 {
        Ok(x.asin())
    } else if x.abs() <= 1.0 + ASIN_SLACK {
        Ok(x.clamp(-1.0, 1.0).asin())
    } else {
        Err(Error::Domain(format!("asin argument {x} out of range in {what}")))
    }
}

/// Validated `(θ, θ′)` for one dual edge pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnglePair {
    pub theta: f64,
    pub theta_prime: f64,
}

impl AnglePair {
    pub fn new(theta: f64, theta_prime: f64) -> Result<Self> {
        for (name, v) in [("theta", theta), ("theta_prime", theta_prime)] {
            if !v.is_finite() || v <= 0.0 || v > MAX_ANGLE {
                return Err(Error::Domain(format!("{name} = {v} is outside (0, π/3]")));
            }
        }
        let p = AnglePair { theta, theta_prime };
        let (s, sp) = (p.a(), p.a_prime());
        if s * s + sp * sp > 1.0 + ASIN_SLACK {
            return Err(Error::Domain(format!(
                "sin²(θ/2) + sin²(θ′/2) = {} exceeds 1",
                s * s + sp * sp
            )));
        }
        asin_checked(s / p.c_prime(), "sin(θ/2)/cos(θ′/2)")?;
        asin_checked(sp / p.c(), "sin(θ′/2)/cos(θ/2)")?;
        asin_checked(p.tan_product(), "tan(θ/2)tan(θ′/2)")?;
        Ok(p)
    }

    /// `sin(θ/2)`, half the chord between the kept edge's endpoints.
    pub fn a(&self) -> f64 {
        (0.5 * self.theta).sin()
    }

    pub fn a_prime(&self) -> f64 {
        (0.5 * self.theta_prime).sin()
    }

    fn c(&self) -> f64 {
        (0.5 * self.theta).cos()
    }

    fn c_prime(&self) -> f64 {
        (0.5 * self.theta_prime).cos()
    }

    fn tan_product(&self) -> f64 {
        (0.5 * self.theta).tan() * (0.5 * self.theta_prime).tan()
    }

    fn asin_tan_product(&self) -> f64 {
        self.tan_product().min(1.0).asin()
    }

    /// `√(1 − sin²(θ/2) − sin²(θ′/2))`, equal to `cos(θ/2)cos(φ/2)`.
    fn root(&self) -> f64 {
        let (s, sp) = (self.a(), self.a_prime());
        (1.0 - s * s - sp * sp).max(0.0).sqrt()
    }

    /// `φ = 2 asin(sin(θ′/2)/cos(θ/2))`.
    pub fn phi(&self) -> f64 {
        2.0 * (self.a_prime() / self.c()).min(1.0).asin()
    }

    /// `φ′ = 2 asin(sin(θ/2)/cos(θ′/2))`.
    pub fn phi_prime(&self) -> f64 {
        2.0 * (self.a() / self.c_prime()).min(1.0).asin()
    }

    pub fn swapped(&self) -> AnglePair {
        AnglePair {
            theta: self.theta_prime,
            theta_prime: self.theta,
        }
    }
}

/// Surface-area deficit of one surgery: `2 asin(sin(θ/2)/cos(θ′/2)) θ′ cos(θ′/2)`.
pub fn f_func(p: &AnglePair) -> f64 {
    p.phi_prime() * p.theta_prime * p.c_prime()
}

/// Surface-area deficit of one dual pair on the Reuleaux polyhedron.
pub fn g_func(p: &AnglePair) -> f64 {
    let phi_half = 0.5 * p.phi();
    let phi_prime_half = 0.5 * p.phi_prime();
    4.0 * (phi_prime_half * p.a_prime() + phi_half * p.a() - p.asin_tan_product())
}

/// Volume deficit of one dual pair on the Reuleaux polyhedron.
pub fn h_func(p: &AnglePair) -> f64 {
    let (s, sp) = (p.a(), p.a_prime());
    let phi_half = 0.5 * p.phi();
    let phi_prime_half = 0.5 * p.phi_prime();
    4.0 * (phi_half * (s - s * s * s / 3.0) + phi_prime_half * (sp - sp * sp * sp / 3.0)
        - 2.0 / 3.0 * p.asin_tan_product()
        - sp * s * p.root() / 3.0)
}

/// Volume of the region cut away by one surgery, `½f − ½h`.
pub fn wedge_volume(p: &AnglePair) -> f64 {
    0.5 * f_func(p) - 0.5 * h_func(p)
}

/// Area of one sliver patch on the sphere around an endpoint of `e`.
pub fn sliver_area(p: &AnglePair) -> f64 {
    2.0 * p.asin_tan_product() - p.a() * p.phi()
}

/// Area of the spindle patch swept by rotating one geodesic into the other.
pub fn spindle_area(p: &AnglePair) -> f64 {
    let tp = p.theta_prime;
    2.0 * p.phi_prime() * (p.a_prime() - p.c_prime() * 0.5 * tp)
}

/// `∫ x·n dS` over one sliver patch (both slivers give the same value).
pub fn sliver_flux(p: &AnglePair) -> f64 {
    let s = p.a();
    let phi = p.phi();
    2.0 * p.asin_tan_product() - 1.5 * phi * s
        + s * s * s * 0.5 * phi
        + s * (0.5 * p.phi_prime()).cos() * 0.5 * p.theta_prime
}

/// `∫ x·n dS` over the spindle patch, normal pointing out of the wedge.
pub fn spindle_flux(p: &AnglePair) -> f64 {
    let (s, sp) = (p.a(), p.a_prime());
    let tp = p.theta_prime;
    let half = 0.5 * tp;
    -p.phi_prime() * (3.0 * sp - 3.0 * p.c_prime() * half - sp * sp * sp)
        + 2.0 * sp * s * p.root()
        - tp * s * (0.5 * p.phi_prime()).cos()
}

/// Wedge volume assembled from boundary fluxes by the divergence theorem.
pub fn wedge_volume_via_flux(p: &AnglePair) -> f64 {
    (2.0 * sliver_flux(p) + spindle_flux(p)) / 3.0
}

/// `h − g`, simplified to `(4/3)(asin(tan(θ/2)tan(θ′/2)) − sin(θ′/2)sin(θ/2)√(1 − sin²(θ/2) − sin²(θ′/2))) − (2/3)(φ sin³(θ/2) + φ′ sin³(θ′/2))`.
pub fn h_minus_g(p: &AnglePair) -> f64 {
    let (s, sp) = (p.a(), p.a_prime());
    4.0 / 3.0 * (p.asin_tan_product() - sp * s * p.root())
        - 2.0 / 3.0 * (p.phi() * s * s * s + p.phi_prime() * sp * sp * sp)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairTerm {
    pub theta: f64,
    pub theta_prime: f64,
    /// `h` for the Reuleaux body, `f` for the Meissner body.
    pub volume_term: f64,
    /// `g` for the Reuleaux body, `f` for the Meissner body.
    pub area_term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BodyScalars {
    pub volume: f64,
    pub surface_area: f64,
    pub per_pair_terms: Vec<PairTerm>,
}

fn body_scalars(
    pairs: &[AnglePair],
    vol: impl Fn(&AnglePair) -> f64,
    area: impl Fn(&AnglePair) -> f64,
) -> BodyScalars {
    let per_pair_terms: Vec<PairTerm> = pairs
        .iter()
        .map(|p| PairTerm {
            theta: p.theta,
            theta_prime: p.theta_prime,
            volume_term: vol(p),
            area_term: area(p),
        })
        .collect();
    let vsum: f64 = per_pair_terms.iter().map(|t| t.volume_term).sum();
    let asum: f64 = per_pair_terms.iter().map(|t| t.area_term).sum();
    BodyScalars {
        volume: 2.0 * PI / 3.0 - 0.5 * vsum,
        surface_area: 2.0 * PI - asum,
        per_pair_terms,
    }
}

/// Volume `2π/3 − ½Σh` and area `2π − Σg` of `B(X)`.
pub fn reuleaux_scalars(pairs: &[AnglePair]) -> BodyScalars {
    body_scalars(pairs, h_func, g_func)
}

/// Volume `2π/3 − ½Σf` and area `2π − Σf` of the Meissner polyhedron.
pub fn meissner_scalars(pairs: &[AnglePair]) -> BodyScalars {
    body_scalars(pairs, f_func, f_func)
}

pub fn volume_reuleaux(pairs: &[AnglePair]) -> f64 {
    2.0 * PI / 3.0 - 0.5 * pairs.iter().map(h_func).sum::<f64>()
}

pub fn surface_reuleaux(pairs: &[AnglePair]) -> f64 {
    2.0 * PI - pairs.iter().map(g_func).sum::<f64>()
}

pub fn volume_meissner(pairs: &[AnglePair]) -> f64 {
    2.0 * PI / 3.0 - 0.5 * pairs.iter().map(f_func).sum::<f64>()
}

pub fn surface_meissner(pairs: &[AnglePair]) -> f64 {
    2.0 * PI - pairs.iter().map(f_func).sum::<f64>()
}

/// `(½S(B(X)) − π/3) − V(B(X))`; zero exactly when the pair list is empty.
pub fn blaschke_gap(pairs: &[AnglePair]) -> f64 {
    (0.5 * surface_reuleaux(pairs) - PI / 3.0) - volume_reuleaux(pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub theta_prime: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
    pub h_minus_g: f64,
    pub wedge_volume: f64,
    pub wedge_volume_flux: f64,
    pub flux_residual: f64,
}

impl SweepRow {
    pub fn at(p: &AnglePair) -> SweepRow {
        let wedge = wedge_volume(p);
        let flux = wedge_volume_via_flux(p);
        SweepRow {
            theta: p.theta,
            theta_prime: p.theta_prime,
            f: f_func(p),
            g: g_func(p),
            h: h_func(p),
            h_minus_g: h_minus_g(p),
            wedge_volume: wedge,
            wedge_volume_flux: flux,
            flux_residual: (wedge - flux).abs(),
        }
    }

    pub const CSV_HEADER: &'static str =
        "theta,theta_prime,f,g,h,h_minus_g,wedge_volume,wedge_volume_flux,flux_residual";

    pub fn csv_line(&self) -> String {
        format!(
            "{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
            self.theta,
            self.theta_prime,
            self.f,
            self.g,
            self.h,
            self.h_minus_g,
            self.wedge_volume,
            self.wedge_volume_flux,
            self.flux_residual
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub grid: usize,
    pub rows: usize,
    pub h_le_g_violations: usize,
    pub residual_violations: usize,
    pub max_flux_residual: f64,
    pub min_h_minus_g: f64,
}

/// Evenly spaced nodes of `[SWEEP_LO, SWEEP_HI]`, endpoints included.
pub fn sweep_nodes(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (SWEEP_LO + SWEEP_HI)],
        _ => (0..n)
            .map(|i| SWEEP_LO + (SWEEP_HI - SWEEP_LO) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Evaluate every formula on an `n × n` grid, row-major in `θ`.
pub fn sweep(n: usize) -> Result<(Vec<SweepRow>, SweepSummary)> {
    if n == 0 {
        return Err(Error::InvalidInput("grid size must be positive".into()));
    }
    let nodes = sweep_nodes(n);
    let rows: Vec<SweepRow> = nodes
        .par_iter()
        .map(|&t| {
            nodes
                .iter()
                .map(|&tp| AnglePair::new(t, tp).map(|p| SweepRow::at(&p)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let summary = SweepSummary {
        grid: n,
        rows: rows.len(),
        h_le_g_violations: rows.iter().filter(|r| !(r.h_minus_g > 0.0)).count(),
        residual_violations: rows
            .iter()
            .filter(|r| !(r.flux_residual < WEDGE_RESIDUAL_TOL))
            .count(),
        max_flux_residual: rows.iter().map(|r| r.flux_residual).fold(0.0, f64::max),
        min_h_minus_g: rows.iter().map(|r| r.h_minus_g).fold(f64::INFINITY, f64::min),
    };
    Ok((rows, summary))
}
