//! Command implementations behind the `reuleaux` binary. Each returns data;
//! printing and exit codes live in `main.rs`.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{
    blaschke_gap, f_func, g_func, h_func, meissner_scalars, reuleaux_scalars, sweep, wedge_volume,
    AnglePair, BodyScalars, SweepRow, SweepSummary,
};
use crate::geom::Tolerances;
use crate::mesh::{export_obj, export_ply, mesh_body, MeshMetrics};
use crate::oracle::{mc_volume, BodyKind, BodySpec, McConfig, McEstimate};
use crate::polyhedron::{check_extremal, ExtremalityReport, PointConfig, ReuleauxStructure, StructureReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
}

impl MeshFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "obj" => Ok(MeshFormat::Obj),
            "ply" => Ok(MeshFormat::Ply),
            other => Err(Error::InvalidInput(format!("format '{other}' is not obj or ply"))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            MeshFormat::Obj => "obj",
            MeshFormat::Ply => "ply",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairRow {
    pub index: usize,
    /// Centers whose spheres carry the kept edge `e`.
    pub e_support: [String; 2],
    /// Centers whose spheres carry the surgery edge `e′`.
    pub e_prime_support: [String; 2],
    pub theta: f64,
    pub theta_prime: f64,
    pub phi: f64,
    pub phi_prime: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
    pub wedge_volume: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McRecord {
    pub body: String,
    pub seed: u64,
    pub samples: u64,
    pub batch: u64,
    pub estimate: McEstimate,
    pub closed_form: f64,
    pub sigmas: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshRecord {
    pub body: String,
    pub refine: usize,
    pub metrics: MeshMetrics,
    pub closed_form_volume: f64,
    pub closed_form_area: f64,
    pub volume_error: f64,
    pub area_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub total_ms: f64,
}

/// Everything one invocation computed, with the settings needed to rerun it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub input: String,
    pub tolerances: Tolerances,
    pub extremality: ExtremalityReport,
    pub structure: StructureReport,
    pub pairs: Vec<PairRow>,
    pub reuleaux: BodyScalars,
    pub meissner: BodyScalars,
    pub blaschke_gap: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub monte_carlo: Vec<McRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub meshes: Vec<MeshRecord>,
    pub timing: Timing,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the timing block removed, for reproducibility checks.
    pub fn to_json_without_timing(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timing");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    fn closed_form_volume(&self, kind: BodyKind) -> f64 {
        match kind {
            BodyKind::Reuleaux => self.reuleaux.volume,
            BodyKind::Meissner => self.meissner.volume,
            BodyKind::Wedge(i) => self.pairs[i].wedge_volume,
        }
    }
}

/// A loaded, validated input together with its analysis.
pub struct Session {
    pub structure: ReuleauxStructure,
    pub angles: Vec<AnglePair>,
    pub report: RunReport,
    started: Instant,
}

impl Session {
    pub fn open(input: &str, tol: Tolerances) -> Result<Self> {
        let started = Instant::now();
        let config = PointConfig::load(input, tol)?;
        let structure = ReuleauxStructure::build(config)?;
        let angles = structure.angle_pairs()?;
        let cfg = &structure.config;
        let pairs = structure
            .pairs
            .iter()
            .zip(&angles)
            .enumerate()
            .map(|(index, (p, a))| PairRow {
                index,
                e_support: [cfg.label(p.e.support.0), cfg.label(p.e.support.1)],
                e_prime_support: [cfg.label(p.e_prime.support.0), cfg.label(p.e_prime.support.1)],
                theta: p.theta,
                theta_prime: p.theta_prime,
                phi: p.phi,
                phi_prime: p.phi_prime,
                f: f_func(a),
                g: g_func(a),
                h: h_func(a),
                wedge_volume: wedge_volume(a),
            })
            .collect();
        let report = RunReport {
            tool: "reuleaux".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            input: input.into(),
            tolerances: tol,
            extremality: structure.extremality.clone(),
            structure: structure.report.clone(),
            pairs,
            reuleaux: reuleaux_scalars(&angles),
            meissner: meissner_scalars(&angles),
            blaschke_gap: blaschke_gap(&angles),
            monte_carlo: Vec::new(),
            meshes: Vec::new(),
            timing: Timing { total_ms: 0.0 },
        };
        Ok(Session {
            structure,
            angles,
            report,
            started,
        })
    }

    pub fn run_mc(&mut self, kind: BodyKind, mc: McConfig) -> Result<&McRecord> {
        let body = BodySpec::new(&self.structure, kind)?;
        let estimate = mc_volume(&body, &mc)?;
        let closed_form = self.report.closed_form_volume(kind);
        self.report.monte_carlo.push(McRecord {
            body: kind.name(),
            seed: mc.seed,
            samples: mc.samples,
            batch: mc.batch,
            estimate,
            closed_form,
            sigmas: estimate.sigmas_from(closed_form),
        });
        Ok(self.report.monte_carlo.last().expect("just pushed"))
    }

    pub fn run_mesh(
        &mut self,
        kind: BodyKind,
        refine: usize,
        export: Option<(MeshFormat, &Path)>,
    ) -> Result<&MeshRecord> {
        let mesh = mesh_body(&self.structure, kind, refine)?;
        if let Some((format, path)) = export {
            match format {
                MeshFormat::Obj => export_obj(&mesh, path)?,
                MeshFormat::Ply => export_ply(&mesh, path)?,
            }
        }
        let metrics = mesh.metrics();
        let scalars = match kind {
            BodyKind::Meissner => &self.report.meissner,
            _ => &self.report.reuleaux,
        };
        let record = MeshRecord {
            body: kind.name(),
            refine,
            metrics,
            closed_form_volume: scalars.volume,
            closed_form_area: scalars.surface_area,
            volume_error: metrics.volume - scalars.volume,
            area_error: metrics.area - scalars.surface_area,
            output: export.map(|(_, p)| p.display().to_string()),
            format: export.map(|(f, _)| f.name().to_string()),
        };
        self.report.meshes.push(record);
        Ok(self.report.meshes.last().expect("just pushed"))
    }

    pub fn finish(mut self) -> RunReport {
        self.report.timing.total_ms = self.started.elapsed().as_secs_f64() * 1e3;
        self.report
    }
}

/// Extremality check only; never fails on a non-extremal set.
pub fn cmd_validate(input: &str, tol: Tolerances) -> Result<ExtremalityReport> {
    check_extremal(&PointConfig::load(input, tol)?)
}

pub fn cmd_analyze(input: &str, tol: Tolerances) -> Result<RunReport> {
    Ok(Session::open(input, tol)?.finish())
}

pub fn cmd_mc(input: &str, tol: Tolerances, body: BodyKind, mc: McConfig) -> Result<RunReport> {
    let mut s = Session::open(input, tol)?;
    s.run_mc(body, mc)?;
    Ok(s.finish())
}

pub fn cmd_mesh(
    input: &str,
    tol: Tolerances,
    body: BodyKind,
    refine: usize,
    export: Option<(MeshFormat, &Path)>,
) -> Result<RunReport> {
    let mut s = Session::open(input, tol)?;
    s.run_mesh(body, refine, export)?;
    Ok(s.finish())
}

pub fn cmd_sweep(grid: usize) -> Result<(Vec<SweepRow>, SweepSummary)> {
    sweep(grid)
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 180);
    out.push_str(SweepRow::CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    pub full: bool,
    pub seed: u64,
    pub samples: u64,
    pub refine: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            full: false,
            seed: 42,
            samples: 1_000_000,
            refine: 64,
        }
    }
}

/// Analysis plus Monte Carlo on both bodies and mesh metrics for both
/// bodies; `full` adds a Monte Carlo run for every wedge.
pub fn cmd_report(input: &str, tol: Tolerances, opts: ReportOptions) -> Result<RunReport> {
    let mut s = Session::open(input, tol)?;
    let mc = McConfig::new(opts.seed, opts.samples);
    s.run_mc(BodyKind::Reuleaux, mc)?;
    s.run_mc(BodyKind::Meissner, mc)?;
    if opts.full {
        for i in 0..s.angles.len() {
            s.run_mc(BodyKind::Wedge(i), mc)?;
        }
    }
    s.run_mesh(BodyKind::Reuleaux, opts.refine, None)?;
    s.run_mesh(BodyKind::Meissner, opts.refine, None)?;
    Ok(s.finish())
}
