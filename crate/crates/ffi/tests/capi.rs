use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use abmod_ffi::*;

const QUARTIC: &str = "variables = [\"x\", \"y\"]\nf = \"x^4 + y^4 + t*x^2*y^2\"\nb_order = 4\n";

fn parse(doc: &str) -> (AbmodStatus, *mut AbmodFamily) {
    let c = CString::new(doc).unwrap();
    let mut fam = ptr::null_mut();
    let s = unsafe { abmod_family_parse(c.as_ptr(), &mut fam) };
    (s, fam)
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { abmod_string_free(s) };
    out
}

fn last_error() -> Option<String> {
    let p = abmod_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn parse_mu_and_reports() {
    let (s, fam) = parse(QUARTIC);
    assert_eq!(s, AbmodStatus::Ok);
    assert!(last_error().is_none());
    let mut mu = 0usize;
    assert_eq!(unsafe { abmod_family_mu(fam, &mut mu) }, AbmodStatus::Ok);
    assert_eq!(mu, 9);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { abmod_analyze_json(fam, &mut out) }, AbmodStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["mu"], 9);
    assert_eq!(v["G"]["equals_m_power"], 1);

    assert_eq!(
        unsafe { abmod_matrix_json(fam, AbmodOperator::Nabla, &mut out) },
        AbmodStatus::Ok
    );
    let m: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(m["op"], "nabla");

    assert_eq!(unsafe { abmod_check_criterion_json(fam, 1, &mut out) }, AbmodStatus::Ok);
    let c: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(c["holds"], true);

    assert_eq!(unsafe { abmod_lattice_g_json(fam, &mut out) }, AbmodStatus::Ok);
    let g: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(g["G"]["rank"], 35);
    unsafe { abmod_family_free(fam) };
}

#[test]
fn error_codes() {
    let (s, fam) = parse("variables = [\"x\", \"t\"]\nf = \"x^2\"\n");
    assert_eq!(s, AbmodStatus::Usage);
    assert!(fam.is_null());
    assert!(last_error().unwrap().contains("parameter"));

    let (s, fam) = parse("variables = [\"x\", \"y\"]\nf = \"x^2\"\n");
    assert_eq!(s, AbmodStatus::Ok);
    let mut mu = 0usize;
    assert_eq!(unsafe { abmod_family_mu(fam, &mut mu) }, AbmodStatus::Unsupported);
    assert!(last_error().unwrap().contains("not isolated"));
    assert_eq!(unsafe { abmod_family_set_b_order(fam, 1) }, AbmodStatus::Usage);
    unsafe { abmod_family_free(fam) };

    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { abmod_basis_json(ptr::null(), &mut out) },
        AbmodStatus::NullArgument
    );
    let mut fam = ptr::null_mut();
    assert_eq!(
        unsafe { abmod_family_parse(ptr::null(), &mut fam) },
        AbmodStatus::NullArgument
    );
    let bytes = [0xffu8 as c_char, 0];
    assert_eq!(
        unsafe { abmod_family_parse(bytes.as_ptr(), &mut fam) },
        AbmodStatus::InvalidUtf8
    );
    unsafe {
        abmod_family_free(ptr::null_mut());
        abmod_string_free(ptr::null_mut());
    }
}

#[test]
fn fixture_table() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { abmod_verify_paper_examples(&mut out) }, AbmodStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["failed"], 0);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(abmod_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

/// Compile the C smoke test against the generated header and static library.
#[test]
fn c_program_links_and_runs() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libabmod_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let bin = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("abmod_smoke");
    let status = Command::new(&cc)
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
