use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use reuleaux_ffi::*;

const TETRA_VOLUME: f64 = 0.422_157_733_115_827_05;

fn structure(name: &str) -> *mut RxStructure {
    let name = CString::new(name).unwrap();
    let mut s = ptr::null_mut();
    let st = unsafe { rx_structure_from_generator(name.as_ptr(), 0.0, &mut s) };
    assert_eq!(st, RxStatus::Ok);
    assert!(!s.is_null());
    s
}

fn last_error() -> String {
    let p = rx_last_error_message();
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { rx_string_free(p) };
    s
}

#[test]
fn tetra_counts_angles_and_scalars() {
    let s = structure("tetra");
    let mut c = RxCounts::default();
    assert_eq!(unsafe { rx_structure_counts(s, &mut c) }, RxStatus::Ok);
    assert_eq!((c.points, c.diametric_pairs, c.dual_pairs, c.dangling_vertices), (4, 6, 3, 0));
    assert_eq!(c.euler_characteristic, 2);

    let mut a = RxPairAngles::default();
    assert_eq!(unsafe { rx_structure_pair_angles(s, 2, &mut a) }, RxStatus::Ok);
    assert!((a.theta - std::f64::consts::FRAC_PI_3).abs() < 1e-12);

    let mut r = RxScalars::default();
    assert_eq!(unsafe { rx_structure_scalars(s, RxBody::Reuleaux, 0, &mut r) }, RxStatus::Ok);
    assert!((r.volume - TETRA_VOLUME).abs() < 1e-12);

    let mut w = RxScalars::default();
    assert_eq!(unsafe { rx_structure_scalars(s, RxBody::Wedge, 1, &mut w) }, RxStatus::Ok);
    assert!(w.surface_area.is_nan());
    assert_eq!(unsafe { rx_structure_scalars(s, RxBody::Wedge, 3, &mut w) }, RxStatus::OutOfBounds);

    let mut gap = 0.0;
    assert_eq!(unsafe { rx_structure_blaschke_gap(s, &mut gap) }, RxStatus::Ok);
    assert!(gap > 0.0);
    unsafe { rx_structure_free(s) };
}

#[test]
fn points_and_json_constructors_agree() {
    let k = 1.0 / (2.0 * 2f64.sqrt());
    let xyz = [0.5, 0.0, -k, -0.5, 0.0, -k, 0.0, 0.5, k, 0.0, -0.5, k];
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { rx_structure_from_points(xyz.as_ptr(), 4, 0.0, &mut a) }, RxStatus::Ok);
    let json = CString::new(format!(
        "{{\"points\": [[0.5,0,{m}],[-0.5,0,{m}],[0,0.5,{k}],[0,-0.5,{k}]]}}",
        m = -k,
        k = k
    ))
    .unwrap();
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { rx_structure_from_json(json.as_ptr(), 0.0, &mut b) }, RxStatus::Ok);
    let (mut ra, mut rb) = (RxScalars::default(), RxScalars::default());
    unsafe {
        rx_structure_scalars(a, RxBody::Meissner, 0, &mut ra);
        rx_structure_scalars(b, RxBody::Meissner, 0, &mut rb);
        rx_structure_free(a);
        rx_structure_free(b);
    }
    assert!((ra.volume - rb.volume).abs() < 1e-12);
}

#[test]
fn errors_map_to_status_codes() {
    let name = CString::new("cube").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { rx_structure_from_generator(name.as_ptr(), 0.0, &mut s) }, RxStatus::Validation);
    assert!(s.is_null());
    assert!(last_error().contains("cube"));

    let bad = CString::new("{\"points\": 3}").unwrap();
    assert_eq!(unsafe { rx_structure_from_json(bad.as_ptr(), 0.0, &mut s) }, RxStatus::Validation);

    // Unit square: two diametric pairs where six are needed.
    let xyz = [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0];
    assert_eq!(unsafe { rx_structure_from_points(xyz.as_ptr(), 4, 0.0, &mut s) }, RxStatus::Validation);

    assert_eq!(
        unsafe { rx_structure_from_generator(ptr::null(), 0.0, &mut s) },
        RxStatus::NullPointer
    );
    let mut v = 0.0;
    assert_eq!(unsafe { rx_formula(RxFormula::F, 2.0, 0.3, &mut v) }, RxStatus::Domain);
    assert_eq!(unsafe { rx_formula(RxFormula::F, 0.3, 0.3, ptr::null_mut()) }, RxStatus::NullPointer);
}

#[test]
fn formula_values() {
    let t = std::f64::consts::FRAC_PI_3;
    let mut v = 0.0;
    assert_eq!(unsafe { rx_formula(RxFormula::F, t, t, &mut v) }, RxStatus::Ok);
    assert!((v - 1.116_356_704_285_41).abs() < 1e-12);
    let (mut w, mut wf) = (0.0, 0.0);
    unsafe {
        rx_formula(RxFormula::WedgeVolume, 0.4, 0.9, &mut w);
        rx_formula(RxFormula::WedgeVolumeViaFlux, 0.4, 0.9, &mut wf);
    }
    assert!((w - wf).abs() < 1e-12);
}

#[test]
fn mc_and_mesh_handles() {
    let s = structure("tetra");
    let mut e = RxMcEstimate::default();
    assert_eq!(unsafe { rx_mc_volume(s, RxBody::Reuleaux, 0, 7, 200_000, &mut e) }, RxStatus::Ok);
    assert_eq!(e.sample_count, 200_000);
    assert!((e.volume_mean - TETRA_VOLUME).abs() < 5.0 * e.std_error);
    assert_eq!(unsafe { rx_mc_volume(s, RxBody::Wedge, 9, 7, 10, &mut e) }, RxStatus::Validation);

    let mut m = ptr::null_mut();
    assert_eq!(unsafe { rx_mesh_build(s, RxBody::Reuleaux, 32, &mut m) }, RxStatus::Ok);
    let (mut nv, mut nt) = (0usize, 0usize);
    assert_eq!(unsafe { rx_mesh_counts(m, &mut nv, &mut nt) }, RxStatus::Ok);
    assert!(nv > 0 && nt > 0);
    let mut verts = vec![0.0; 3 * nv];
    let mut tris = vec![0u32; 3 * nt];
    assert_eq!(unsafe { rx_mesh_copy_vertices(m, verts.as_mut_ptr(), verts.len()) }, RxStatus::Ok);
    assert_eq!(unsafe { rx_mesh_copy_triangles(m, tris.as_mut_ptr(), tris.len()) }, RxStatus::Ok);
    assert!(tris.iter().all(|&i| (i as usize) < nv));
    assert_eq!(
        unsafe { rx_mesh_copy_vertices(m, verts.as_mut_ptr(), verts.len() - 1) },
        RxStatus::OutOfBounds
    );
    let mut ms = RxScalars::default();
    assert_eq!(unsafe { rx_mesh_scalars(m, &mut ms) }, RxStatus::Ok);
    assert!((ms.volume - TETRA_VOLUME).abs() < 1e-2);

    let dir = tempfile::tempdir().unwrap();
    let path = CString::new(dir.path().join("t.ply").to_str().unwrap()).unwrap();
    let ply = CString::new("ply").unwrap();
    let stl = CString::new("stl").unwrap();
    assert_eq!(unsafe { rx_mesh_export(m, path.as_ptr(), ply.as_ptr()) }, RxStatus::Ok);
    assert!(std::fs::read_to_string(dir.path().join("t.ply")).unwrap().starts_with("ply\n"));
    assert_eq!(unsafe { rx_mesh_export(m, path.as_ptr(), stl.as_ptr()) }, RxStatus::Validation);

    unsafe {
        rx_mesh_free(m);
        rx_structure_free(s);
        rx_mesh_free(ptr::null_mut());
        rx_structure_free(ptr::null_mut());
    }
}

fn header_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/reuleaux.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header_path()).unwrap();
    for sym in [
        "typedef struct RxStructure RxStructure;",
        "typedef struct RxMesh RxMesh;",
        "RX_STATUS_OK = 0",
        "RX_STATUS_IO = 5",
        "rx_structure_from_generator",
        "rx_structure_from_points",
        "rx_structure_from_json",
        "rx_mc_volume",
        "rx_mesh_build",
        "rx_mesh_copy_triangles",
        "rx_formula",
        "rx_last_error_message",
        "rx_string_free",
    ] {
        assert!(h.contains(sym), "header lacks {sym}");
    }
}

/// Compiles `tests/c/smoke.c` against the generated header and the static
/// library from this build, then runs it.
#[test]
fn c_program_links_and_runs() {
    let target_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .and_then(Path::parent)
        .unwrap()
        .to_path_buf();
    let lib = target_dir.join("libreuleaux_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap_or_else(|e| panic!("cannot run {cc}: {e}"));
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
