use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use theta_lab_ffi::*;

fn mp(s: &str) -> *mut ThetaLabMp {
    let text = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { theta_lab_mp_parse(text.as_ptr(), &mut out) }, ThetaLabStatus::Ok);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(theta_lab_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn metaplectic_round_trip() {
    let s = mp("0,-1,1,0:+");
    let mut s2 = ptr::null_mut();
    unsafe {
        assert_eq!(theta_lab_mp_mul(s, s, &mut s2), ThetaLabStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(theta_lab_mp_to_string(s2, &mut text), ThetaLabStatus::Ok);
        assert_eq!(CStr::from_ptr(text).to_str().unwrap(), "(-1,0,0,-1:+)");
        theta_lab_string_free(text);
        theta_lab_mp_free(s);
        theta_lab_mp_free(s2);
    }
}

#[test]
fn parse_errors_are_reported() {
    let bad = CString::new("1,2,3").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { theta_lab_mp_parse(bad.as_ptr(), &mut out) }, ThetaLabStatus::Parse);
    assert!(out.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { theta_lab_mp_parse(ptr::null(), &mut out) }, ThetaLabStatus::NullPointer);
}

#[test]
fn weil_matrix_and_transformation() {
    let t = mp("1,1,0,1:+");
    unsafe {
        let mut rho = ptr::null_mut();
        assert_eq!(theta_lab_weil_rep(2, t, &mut rho), ThetaLabStatus::Ok);
        let mut z = ThetaLabComplex::default();
        assert_eq!(theta_lab_matrix_get(rho, 1, 1, &mut z), ThetaLabStatus::Ok);
        assert!((z.re).abs() < 1e-15 && (z.im - 1.0).abs() < 1e-15);
        theta_lab_matrix_free(rho);
        assert_eq!(theta_lab_weil_rep(3, t, &mut rho), ThetaLabStatus::InvalidArgument);

        let reg = theta_lab_registry_new();
        let mut rep = ThetaLabTransformReport::default();
        let tau = ThetaLabComplex { re: -0.4, im: 0.8 };
        let s = mp("0,-1,1,0:-");
        assert_eq!(theta_lab_verify_transformation(6, s, tau, 1e-9, reg, &mut rep), ThetaLabStatus::Ok);
        assert!(rep.pass);
        theta_lab_registry_free(reg);
        theta_lab_mp_free(s);
        theta_lab_mp_free(t);
    }
}

#[test]
fn theta_constants_buffer() {
    let tau = ThetaLabComplex { re: 0.3, im: 1.1 };
    let mut vals = [ThetaLabComplex::default(); 4];
    let mut bound = 0.0;
    unsafe {
        assert_eq!(
            theta_lab_theta_constants(4, tau, 1e-12, vals.as_mut_ptr(), 3, &mut bound),
            ThetaLabStatus::BufferTooSmall
        );
        assert_eq!(theta_lab_theta_constants(4, tau, 1e-12, vals.as_mut_ptr(), 4, &mut bound), ThetaLabStatus::Ok);
    }
    assert!(bound < 1e-12);
    assert!((vals[1].re - vals[3].re).abs() < 1e-14 && (vals[1].im - vals[3].im).abs() < 1e-14);
}

#[test]
fn congruence_and_discriminant() {
    let name = CString::new("theta12").unwrap();
    let mut is_member = false;
    unsafe {
        assert_eq!(theta_lab_congruence_member(name.as_ptr(), 0, 0, -1, 1, 0, &mut is_member), ThetaLabStatus::Ok);
        assert!(is_member);
        assert_eq!(
            theta_lab_congruence_member(name.as_ptr(), 0, 1, 1, 1, 1, &mut is_member),
            ThetaLabStatus::InvalidArgument
        );
        let gamma = [0i64, 3, 1, 0];
        let (mut num, mut den) = (0u64, 0u64);
        assert_eq!(theta_lab_discriminant(0, gamma.as_ptr(), 4, &mut num, &mut den), ThetaLabStatus::Ok);
        assert_eq!((num, den), (1, 4));
    }
}

#[test]
fn quick_suite_through_the_c_interface() {
    let mut json = ptr::null_mut();
    let mut pass = false;
    unsafe {
        assert_eq!(theta_lab_run_suite(0, 5, &mut json, &mut pass), ThetaLabStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["seed"], 5);
        theta_lab_string_free(json);
    }
    assert!(pass);
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let dir = exe.parent()?.parent()?;
    let lib = dir.join("libtheta_lab_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn header_compiles_and_links_from_c() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let Some(lib) = static_lib() else {
        eprintln!("static library not built; skipping link step");
        return;
    };
    let out_dir = std::env::temp_dir().join(format!("theta_lab_c_smoke_{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let exe = out_dir.join("c_smoke");
    let status = Command::new("cc")
        .arg("-std=c11")
        .arg("-D_DEFAULT_SOURCE")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(root.join("include"))
        .arg(root.join("tests/c_smoke.c"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl"])
        .arg("-o")
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
    let _ = std::fs::remove_dir_all(&out_dir);
}
