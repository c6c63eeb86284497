use std::ffi::{CStr, CString};
use std::ptr;

use singknot_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn parse(text: &str) -> *mut SkBraid {
    let mut b = ptr::null_mut();
    let t = cstr(text);
    assert_eq!(unsafe { sk_braid_parse(t.as_ptr(), 0, &mut b) }, SkStatus::Ok);
    b
}

fn params(d: u32, sel: &str) -> Result<*mut SkParams, SkStatus> {
    let mut p = ptr::null_mut();
    let s = cstr(sel);
    match unsafe { sk_params_new(d, s.as_ptr(), &mut p) } {
        SkStatus::Ok => Ok(p),
        other => Err(other),
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sk_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn singular_trefoil_round_trip() {
    let b = parse("t1^3");
    assert_eq!(unsafe { sk_braid_strands(b) }, 2);
    assert_eq!(unsafe { sk_braid_exponent(b) }, 3);
    let p = params(3, "uniform").unwrap();
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { sk_delta(p, b, &mut v) }, SkStatus::Ok);
    assert_eq!(unsafe { sk_value_half(v) }, 0);
    let s = unsafe { sk_value_to_string(v) };
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    assert!(text.contains('z'), "{text}");
    let (mut re, mut im) = (f64::NAN, f64::NAN);
    assert_eq!(unsafe { sk_value_eval(v, 0.5, 0.0, 2.0, 0.0, &mut re, &mut im) }, SkStatus::Ok);
    // (u+1)^2 λ (ζ−z)/z with ζ = 1/2, λ = (z − (1−u)ζ)/(uz)
    let (u, z, zeta) = (0.5, 2.0, 0.5);
    let lambda = (z - (1.0 - u) * zeta) / (u * z);
    let expect = (u + 1.0) * (u + 1.0) * lambda * (zeta - z) / z;
    assert!((re - expect).abs() < 1e-12 && im.abs() < 1e-12, "{re} {im} vs {expect}");
    unsafe {
        sk_string_free(s);
        sk_value_free(v);
        sk_params_free(p);
        sk_braid_free(b);
    }
}

#[test]
fn errors_are_reported() {
    let mut b = ptr::null_mut();
    let t = cstr("s1 q2");
    assert_eq!(unsafe { sk_braid_parse(t.as_ptr(), 0, &mut b) }, SkStatus::Parse);
    assert!(b.is_null());
    assert!(last_error().contains("position 3"), "{}", last_error());

    assert_eq!(params(3, "custom:1/3,1/3").unwrap_err(), SkStatus::NotESolution);
    assert_eq!(params(3, "bogus").unwrap_err(), SkStatus::InvalidArgument);
    assert_eq!(params(0, "uniform").unwrap_err(), SkStatus::InvalidArgument);
    assert_eq!(unsafe { sk_braid_parse(ptr::null(), 0, &mut b) }, SkStatus::NullPointer);

    let b = parse("t1");
    let p = params(2, "roots-of-unity").unwrap();
    let mut v = ptr::null_mut();
    assert_eq!(unsafe { sk_delta(p, b, &mut v) }, SkStatus::Ok);
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(unsafe { sk_value_eval(v, 0.5, 0.0, 0.0, 0.0, &mut re, &mut im) }, SkStatus::SingularPoint);
    unsafe {
        sk_value_free(v);
        sk_params_free(p);
        sk_braid_free(b);
        // NULL is accepted by every destructor
        sk_value_free(ptr::null_mut());
        sk_braid_free(ptr::null_mut());
        sk_params_free(ptr::null_mut());
        sk_string_free(ptr::null_mut());
    }
    assert_eq!(unsafe { sk_braid_strands(ptr::null()) }, 0);
}

#[test]
fn esystem_residual() {
    let mut r = f64::NAN;
    let (re, im) = ([-0.5, -0.5], [0.0, 0.0]);
    assert_eq!(unsafe { sk_esystem_residual(3, re.as_ptr(), im.as_ptr(), &mut r) }, SkStatus::Ok);
    assert!(r < 1e-15);
    let (re, im) = ([1.0 / 3.0, 1.0 / 3.0], [0.0, 0.0]);
    assert_eq!(unsafe { sk_esystem_residual(3, re.as_ptr(), im.as_ptr(), &mut r) }, SkStatus::Ok);
    assert!(r > 1e-3);
    assert_eq!(unsafe { sk_esystem_residual(1, ptr::null(), ptr::null(), &mut r) }, SkStatus::Ok);
    assert_eq!(r, 0.0);
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/singknot.h")).unwrap();
    for name in [
        "sk_braid_parse",
        "sk_braid_free",
        "sk_braid_strands",
        "sk_braid_exponent",
        "sk_params_new",
        "sk_params_free",
        "sk_delta",
        "sk_value_half",
        "sk_value_to_string",
        "sk_string_free",
        "sk_value_eval",
        "sk_value_free",
        "sk_esystem_residual",
        "sk_last_error",
        "typedef struct SkBraid SkBraid",
        "SK_STATUS_NOT_E_SOLUTION = 5",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compiles a C program against the generated header and the static library.
/// Skipped when no C compiler or static archive is available.
#[test]
fn c_consumer_links_and_runs() {
    use std::path::PathBuf;
    use std::process::Command;

    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libsingknot_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping C smoke test: no compiler or {}", lib.display());
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let out = std::env::temp_dir().join(format!("singknot_smoke_{}", std::process::id()));
    let status = Command::new(&cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "C program exited with {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "-1 + 1/2*z^-1");
}
