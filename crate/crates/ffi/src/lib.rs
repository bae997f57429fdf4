//! C ABI over `reuleaux-core`.
//!
//! Conventions: every fallible call returns an [`RxStatus`] and writes its
//! result through out-pointers; on failure the thread-local last error holds
//! a message retrievable with [`rx_last_error_message`]. Handles are opaque
//! and owned by the caller once returned; free them with the matching
//! `_free` function. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use reuleaux::formulas::{
    blaschke_gap, f_func, g_func, h_func, h_minus_g, meissner_scalars, reuleaux_scalars,
    sliver_area, sliver_flux, spindle_area, spindle_flux, wedge_volume, wedge_volume_via_flux,
};
use reuleaux::mesh::{export_obj, export_ply, mesh_body, TriangleMesh};
use reuleaux::oracle::{mc_volume, BodySpec, McConfig};
use reuleaux::{AnglePair, BodyKind, Error, Point3, PointConfig, ReuleauxStructure, Tolerances};

/// Status codes; 2 to 5 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RxStatus {
    Ok = 0,
    /// Invalid input, failed validation or malformed JSON.
    Validation = 2,
    /// Degenerate geometry, unexpected structure or a mesh failure.
    Structure = 3,
    /// Numeric domain or parameter range error.
    Domain = 4,
    Io = 5,
    NullPointer = 10,
    /// Index past the end of a table or a buffer too small for a copy.
    OutOfBounds = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RxBody {
    Reuleaux = 0,
    Meissner = 1,
    /// Region removed by one surgery; selects a dual pair by index.
    Wedge = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RxFormula {
    F = 0,
    G = 1,
    H = 2,
    HMinusG = 3,
    WedgeVolume = 4,
    WedgeVolumeViaFlux = 5,
    SliverArea = 6,
    SpindleArea = 7,
    SliverFlux = 8,
    SpindleFlux = 9,
    Phi = 10,
    PhiPrime = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RxCounts {
    pub points: usize,
    pub diametric_pairs: usize,
    pub edges: usize,
    pub faces: usize,
    pub dual_pairs: usize,
    pub dangling_vertices: usize,
    pub euler_characteristic: i64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RxPairAngles {
    pub theta: f64,
    pub theta_prime: f64,
    pub phi: f64,
    pub phi_prime: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RxScalars {
    pub volume: f64,
    pub surface_area: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RxMcEstimate {
    pub volume_mean: f64,
    pub std_error: f64,
    pub hit_count: u64,
    pub sample_count: u64,
    pub bbox_volume: f64,
}

/// Validated extremal configuration with its edges and dual pairs.
pub struct RxStructure {
    inner: ReuleauxStructure,
    angles: Vec<AnglePair>,
}

pub struct RxMesh {
    inner: TriangleMesh,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> RxStatus {
    match e.exit_code() {
        2 => RxStatus::Validation,
        3 => RxStatus::Structure,
        4 => RxStatus::Domain,
        _ => RxStatus::Io,
    }
}

enum Failure {
    Core(Error),
    Null(&'static str),
    Bounds(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type FfiResult<T> = Result<T, Failure>;

fn guard(f: impl FnOnce() -> FfiResult<()>) -> RxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RxStatus::Ok,
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer: {what}"));
            RxStatus::NullPointer
        }
        Ok(Err(Failure::Bounds(msg))) => {
            set_last_error(msg);
            RxStatus::OutOfBounds
        }
        Err(_) => {
            set_last_error("internal panic".into());
            RxStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> FfiResult<&'a T> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> FfiResult<&'a mut T> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Core(Error::InvalidInput(format!("{what} is not UTF-8"))))
}

/// A non-positive `dist_eps` selects the default tolerance.
fn tolerances(dist_eps: f64) -> FfiResult<Tolerances> {
    let tol = if dist_eps > 0.0 {
        Tolerances::default().with_dist_eps(dist_eps)
    } else {
        Tolerances::default()
    };
    tol.validate()?;
    Ok(tol)
}

fn body_kind(body: RxBody, wedge_index: usize) -> BodyKind {
    match body {
        RxBody::Reuleaux => BodyKind::Reuleaux,
        RxBody::Meissner => BodyKind::Meissner,
        RxBody::Wedge => BodyKind::Wedge(wedge_index),
    }
}

unsafe fn publish(cfg: PointConfig, out_ptr: *mut *mut RxStructure) -> FfiResult<()> {
    let slot = out(out_ptr, "out")?;
    let inner = ReuleauxStructure::build(cfg)?;
    let angles = inner.angle_pairs()?;
    *slot = Box::into_raw(Box::new(RxStructure { inner, angles }));
    Ok(())
}

/// Build from a built-in generator name (`"tetra"` or `"pentad"`).
///
/// # Safety
/// `name` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rx_structure_from_generator(
    name: *const c_char,
    dist_eps: f64,
    out: *mut *mut RxStructure,
) -> RxStatus {
    guard(|| {
        let cfg = PointConfig::generator(str_arg(name, "name")?, tolerances(dist_eps)?)?;
        publish(cfg, out)
    })
}

/// Build from point-set JSON text (`{"points": [[x, y, z], ...]}`).
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rx_structure_from_json(
    json: *const c_char,
    dist_eps: f64,
    out: *mut *mut RxStructure,
) -> RxStatus {
    guard(|| {
        let cfg = PointConfig::from_json(str_arg(json, "json")?, tolerances(dist_eps)?)?;
        publish(cfg, out)
    })
}

/// Build from `count` points stored as packed `x, y, z` triples.
///
/// # Safety
/// `xyz` must point to `3 * count` doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rx_structure_from_points(
    xyz: *const f64,
    count: usize,
    dist_eps: f64,
    out: *mut *mut RxStructure,
) -> RxStatus {
    guard(|| {
        if xyz.is_null() {
            return Err(Failure::Null("xyz"));
        }
        let flat = std::slice::from_raw_parts(xyz, 3 * count);
        let points = flat
            .chunks_exact(3)
            .map(|c| Point3::new(c[0], c[1], c[2]))
            .collect();
        let cfg = PointConfig::new(points, None, tolerances(dist_eps)?)?;
        publish(cfg, out)
    })
}

/// # Safety
/// `s` must be null or a handle from an `rx_structure_from_*` call, freed once.
#[no_mangle]
pub unsafe extern "C" fn rx_structure_free(s: *mut RxStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rx_structure_counts(s: *const RxStructure, out_counts: *mut RxCounts) -> RxStatus {
    guard(|| {
        let s = &deref(s, "structure")?.inner;
        *out(out_counts, "out")? = RxCounts {
            points: s.config.len(),
            diametric_pairs: s.extremality.diametric_pair_count,
            edges: s.report.edge_count,
            faces: s.report.face_count,
            dual_pairs: s.pairs.len(),
            dangling_vertices: s.report.dangling().count(),
            euler_characteristic: s.report.euler_characteristic,
        };
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rx_structure_pair_angles(
    s: *const RxStructure,
    index: usize,
    out_angles: *mut RxPairAngles,
) -> RxStatus {
    guard(|| {
        let s = deref(s, "structure")?;
        let p = s.inner.pairs.get(index).ok_or_else(|| {
            Failure::Bounds(format!("pair {index} out of range ({} pairs)", s.inner.pairs.len()))
        })?;
        *out(out_angles, "out")? = RxPairAngles {
            theta: p.theta,
            theta_prime: p.theta_prime,
            phi: p.phi,
            phi_prime: p.phi_prime,
        };
        Ok(())
    })
}

/// Closed-form volume and surface area of the Reuleaux or Meissner body;
/// for `Wedge` only `volume` is meaningful and `surface_area` is NaN.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rx_structure_scalars(
    s: *const RxStructure,
    body: RxBody,
    wedge_index: usize,
    out_scalars: *mut RxScalars,
) -> RxStatus {
    guard(|| {
        let s = deref(s, "structure")?;
        let scalars = match body {
            RxBody::Reuleaux => {
                let b = reuleaux_scalars(&s.angles);
                RxScalars {
                    volume: b.volume,
                    surface_area: b.surface_area,
                }
            }
            RxBody::Meissner => {
                let b = meissner_scalars(&s.angles);
                RxScalars {
                    volume: b.volume,
                    surface_area: b.surface_area,
                }
            }
            RxBody::Wedge => {
                let a = s.angles.get(wedge_index).ok_or_else(|| {
                    Failure::Bounds(format!("wedge {wedge_index} out of range"))
                })?;
                RxScalars {
                    volume: wedge_volume(a),
                    surface_area: f64::NAN,
                }
            }
        };
        *out(out_scalars, "out")? = scalars;
        Ok(())
    })
}

/// `½S − π/3 − V` for the Reuleaux body.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rx_structure_blaschke_gap(s: *const RxStructure, out_gap: *mut f64) -> RxStatus {
    guard(|| {
        let s = deref(s, "structure")?;
        *out(out_gap, "out")? = blaschke_gap(&s.angles);
        Ok(())
    })
}

/// Seeded Monte Carlo volume estimate; identical for any thread count.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rx_mc_volume(
    s: *const RxStructure,
    body: RxBody,
    wedge_index: usize,
    seed: u64,
    samples: u64,
    out_estimate: *mut RxMcEstimate,
) -> RxStatus {
    guard(|| {
        let s = deref(s, "structure")?;
        let slot = out(out_estimate, "out")?;
        let spec = BodySpec::new(&s.inner, body_kind(body, wedge_index))?;
        let e = mc_volume(&spec, &McConfig::new(seed, samples))?;
        *slot = RxMcEstimate {
            volume_mean: e.volume_mean,
            std_error: e.std_error,
            hit_count: e.hit_count,
            sample_count: e.sample_count,
            bbox_volume: e.bbox_volume,
        };
        Ok(())
    })
}

/// Watertight outward mesh of the Reuleaux or Meissner body.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rx_mesh_build(
    s: *const RxStructure,
    body: RxBody,
    refine: usize,
    out_mesh: *mut *mut RxMesh,
) -> RxStatus {
    guard(|| {
        let s = deref(s, "structure")?;
        let slot = out(out_mesh, "out")?;
        let inner = mesh_body(&s.inner, body_kind(body, 0), refine)?;
        *slot = Box::into_raw(Box::new(RxMesh { inner }));
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle from [`rx_mesh_build`], freed once.
#[no_mangle]
pub unsafe extern "C" fn rx_mesh_free(m: *mut RxMesh) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rx_mesh_counts(
    m: *const RxMesh,
    out_vertices: *mut usize,
    out_triangles: *mut usize,
) -> RxStatus {
    guard(|| {
        let m = &deref(m, "mesh")?.inner;
        *out(out_vertices, "out_vertices")? = m.vertices.len();
        *out(out_triangles, "out_triangles")? = m.triangles.len();
        Ok(())
    })
}

/// Divergence-theorem volume and total area.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rx_mesh_scalars(m: *const RxMesh, out_scalars: *mut RxScalars) -> RxStatus {
    guard(|| {
        let m = &deref(m, "mesh")?.inner;
        let slot = out(out_scalars, "out")?;
        m.check_watertight()?;
        *slot = RxScalars {
            volume: m.signed_volume(),
            surface_area: m.area(),
        };
        Ok(())
    })
}

/// Copy vertices as packed `x, y, z` into `buf`, which holds `len` doubles.
///
/// # Safety
/// `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn rx_mesh_copy_vertices(m: *const RxMesh, buf: *mut f64, len: usize) -> RxStatus {
    guard(|| {
        let m = &deref(m, "mesh")?.inner;
        let need = 3 * m.vertices.len();
        if buf.is_null() {
            return Err(Failure::Null("buf"));
        }
        if len < need {
            return Err(Failure::Bounds(format!("vertex buffer holds {len}, needs {need}")));
        }
        let dst = std::slice::from_raw_parts_mut(buf, need);
        for (chunk, v) in dst.chunks_exact_mut(3).zip(&m.vertices) {
            chunk.copy_from_slice(&v.to_array());
        }
        Ok(())
    })
}

/// Copy zero-based triangle indices into `buf`, which holds `len` values.
///
/// # Safety
/// `buf` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn rx_mesh_copy_triangles(m: *const RxMesh, buf: *mut u32, len: usize) -> RxStatus {
    guard(|| {
        let m = &deref(m, "mesh")?.inner;
        let need = 3 * m.triangles.len();
        if buf.is_null() {
            return Err(Failure::Null("buf"));
        }
        if len < need {
            return Err(Failure::Bounds(format!("triangle buffer holds {len}, needs {need}")));
        }
        let dst = std::slice::from_raw_parts_mut(buf, need);
        for (chunk, t) in dst.chunks_exact_mut(3).zip(&m.triangles) {
            chunk.copy_from_slice(t);
        }
        Ok(())
    })
}

/// Write the mesh to `path`; `format` is `"obj"` or `"ply"`.
///
/// # Safety
/// Pointers must be valid C strings or handles.
#[no_mangle]
pub unsafe extern "C" fn rx_mesh_export(m: *const RxMesh, path: *const c_char, format: *const c_char) -> RxStatus {
    guard(|| {
        let m = &deref(m, "mesh")?.inner;
        let path = Path::new(str_arg(path, "path")?);
        match str_arg(format, "format")? {
            "obj" => export_obj(m, path)?,
            "ply" => export_ply(m, path)?,
            other => {
                return Err(Error::InvalidInput(format!("format '{other}' is not obj or ply")).into())
            }
        }
        Ok(())
    })
}

/// Evaluate one closed-form function of a dual-pair angle pair.
///
/// # Safety
/// `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rx_formula(
    formula: RxFormula,
    theta: f64,
    theta_prime: f64,
    out_value: *mut f64,
) -> RxStatus {
    guard(|| {
        let slot = out(out_value, "out")?;
        let p = AnglePair::new(theta, theta_prime)?;
        *slot = match formula {
            RxFormula::F => f_func(&p),
            RxFormula::G => g_func(&p),
            RxFormula::H => h_func(&p),
            RxFormula::HMinusG => h_minus_g(&p),
            RxFormula::WedgeVolume => wedge_volume(&p),
            RxFormula::WedgeVolumeViaFlux => wedge_volume_via_flux(&p),
            RxFormula::SliverArea => sliver_area(&p),
            RxFormula::SpindleArea => spindle_area(&p),
            RxFormula::SliverFlux => sliver_flux(&p),
            RxFormula::SpindleFlux => spindle_flux(&p),
            RxFormula::Phi => p.phi(),
            RxFormula::PhiPrime => p.phi_prime(),
        };
        Ok(())
    })
}

/// Copy of the calling thread's last error message, or null if none.
/// Free with [`rx_string_free`].
#[no_mangle]
pub extern "C" fn rx_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(c) => c.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn rx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn rx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
