//! C interface to the `abmod` engine.
//!
//! Families are opaque handles created by `abmod_family_parse` and released
//! with `abmod_family_free`. Reports come back as NUL-terminated JSON strings
//! owned by the library; release them with `abmod_string_free`. Every call
//! returns an `AbmodStatus`; on failure `abmod_last_error` describes the
//! problem until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use abmod::brieskorn::Operator;
use abmod::cli::{self, CliError, FamilySpec};

/// Result of every fallible call. The first five values match the exit
/// codes of the `abmod` binary.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbmodStatus {
    Ok = 0,
    /// Malformed family document or bad argument value.
    Usage = 1,
    /// Non-isolated singularity or a family the engine does not handle.
    Unsupported = 2,
    /// An internal budget was exhausted.
    InternalCap = 3,
    /// At least one fixture or self-check failed; the JSON is still returned.
    FixtureFailure = 4,
    NullArgument = 5,
    InvalidUtf8 = 6,
    /// The engine panicked; the handle may still be used.
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbmodOperator {
    A = 0,
    Nabla = 1,
}

/// A validated family description.
pub struct AbmodFamily {
    spec: FamilySpec,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &CliError) -> AbmodStatus {
    match e.exit_code() {
        1 => AbmodStatus::Usage,
        2 => AbmodStatus::Unsupported,
        3 => AbmodStatus::InternalCap,
        _ => AbmodStatus::FixtureFailure,
    }
}

/// Run `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<AbmodStatus, (AbmodStatus, String)>) -> AbmodStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            AbmodStatus::Panic
        }
    }
}

fn cli_err(e: CliError) -> (AbmodStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (AbmodStatus, String) {
    (AbmodStatus::NullArgument, format!("{name} is null"))
}

unsafe fn family<'a>(fam: *const AbmodFamily) -> Result<&'a AbmodFamily, (AbmodStatus, String)> {
    // SAFETY: the caller passes a handle from abmod_family_parse or null
    unsafe { fam.as_ref() }.ok_or_else(|| null("family"))
}

/// Hand `json` to the caller through `out`.
unsafe fn emit(json: String, out: *mut *mut c_char) -> Result<(), (AbmodStatus, String)> {
    let c = CString::new(json).map_err(|_| (AbmodStatus::Panic, "report contains NUL".to_string()))?;
    // SAFETY: out was checked non-null by the caller of emit
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Parse and validate a family document (UTF-8, NUL-terminated).
///
/// # Safety
/// `text` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn abmod_family_parse(text: *const c_char, out: *mut *mut AbmodFamily) -> AbmodStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        // SAFETY: checked non-null; the caller guarantees NUL termination
        let bytes = unsafe { CStr::from_ptr(text) }.to_bytes();
        if std::str::from_utf8(bytes).is_err() {
            return Err((AbmodStatus::InvalidUtf8, "family document is not valid UTF-8".into()));
        }
        let spec = cli::parse_family(bytes).map_err(|e| cli_err(e.into()))?;
        let handle = Box::into_raw(Box::new(AbmodFamily { spec }));
        // SAFETY: checked non-null
        unsafe { *out = handle };
        Ok(AbmodStatus::Ok)
    })
}

/// Release a family handle. Null is ignored.
///
/// # Safety
/// `fam` must come from `abmod_family_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn abmod_family_free(fam: *mut AbmodFamily) {
    if !fam.is_null() {
        // SAFETY: ownership returns from the caller
        drop(unsafe { Box::from_raw(fam) });
    }
}

/// Override the truncation order of a family (at least 2).
///
/// # Safety
/// `fam` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn abmod_family_set_b_order(fam: *mut AbmodFamily, n: usize) -> AbmodStatus {
    guard(|| {
        // SAFETY: live handle or null
        let fam = unsafe { fam.as_mut() }.ok_or_else(|| null("family"))?;
        if n < 2 {
            return Err((AbmodStatus::Usage, format!("b_order must be at least 2, got {n}")));
        }
        fam.spec.b_order = n;
        Ok(AbmodStatus::Ok)
    })
}

/// Milnor number of the generic fiber at the origin.
///
/// # Safety
/// `fam` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn abmod_family_mu(fam: *const AbmodFamily, out: *mut usize) -> AbmodStatus {
    guard(|| {
        let fam = unsafe { family(fam) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let ctx = cli::context(&fam.spec).map_err(cli_err)?;
        // SAFETY: checked non-null
        unsafe { *out = ctx.mu() };
        Ok(AbmodStatus::Ok)
    })
}

unsafe fn json_call<T>(
    fam: *const AbmodFamily,
    out: *mut *mut c_char,
    f: impl FnOnce(&FamilySpec) -> Result<(String, T), CliError>,
    status: impl FnOnce(&T) -> AbmodStatus,
) -> AbmodStatus {
    guard(|| {
        let fam = unsafe { family(fam) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let (json, extra) = f(&fam.spec).map_err(cli_err)?;
        unsafe { emit(json, out) }?;
        let s = status(&extra);
        if s != AbmodStatus::Ok {
            set_error("one or more self-checks failed");
        }
        Ok(s)
    })
}

/// Full analysis report. Returns `FixtureFailure` (with the report) when a
/// structural self-check fails.
///
/// # Safety
/// `fam` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn abmod_analyze_json(fam: *const AbmodFamily, out: *mut *mut c_char) -> AbmodStatus {
    unsafe {
        json_call(
            fam,
            out,
            |s| {
                let r = cli::analyze(s)?;
                let failed = r.fixtures.iter().any(|f| !f.pass);
                Ok((r.to_json(), failed))
            },
            |&failed| {
                if failed {
                    AbmodStatus::FixtureFailure
                } else {
                    AbmodStatus::Ok
                }
            },
        )
    }
}

/// Staircase, Milnor number and bad parameter values.
///
/// # Safety
/// `fam` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn abmod_basis_json(fam: *const AbmodFamily, out: *mut *mut c_char) -> AbmodStatus {
    unsafe {
        json_call(
            fam,
            out,
            |s| Ok((cli::to_json(&cli::basis(s)?), ())),
            |_| AbmodStatus::Ok,
        )
    }
}

/// Block matrix of `a` or `nabla`.
///
/// # Safety
/// `fam` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn abmod_matrix_json(
    fam: *const AbmodFamily,
    op: AbmodOperator,
    out: *mut *mut c_char,
) -> AbmodStatus {
    let op = match op {
        AbmodOperator::A => Operator::A,
        AbmodOperator::Nabla => Operator::Nabla,
    };
    unsafe {
        json_call(
            fam,
            out,
            |s| Ok((cli::to_json(&cli::matrix(s, op)?), ())),
            |_| AbmodStatus::Ok,
        )
    }
}

/// The lattices P and G.
///
/// # Safety
/// `fam` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn abmod_lattice_g_json(fam: *const AbmodFamily, out: *mut *mut c_char) -> AbmodStatus {
    unsafe {
        json_call(
            fam,
            out,
            |s| Ok((cli::to_json(&cli::lattice_g(s)?), ())),
            |_| AbmodStatus::Ok,
        )
    }
}

/// `m^k df/dt ⊂ m^(k+1) J` and stability of `M^k`.
///
/// # Safety
/// `fam` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn abmod_check_criterion_json(
    fam: *const AbmodFamily,
    k: u32,
    out: *mut *mut c_char,
) -> AbmodStatus {
    unsafe {
        json_call(
            fam,
            out,
            |s| Ok((cli::to_json(&cli::check_criterion(s, k)?), ())),
            |_| AbmodStatus::Ok,
        )
    }
}

/// Worked-example fixture table. Returns `FixtureFailure` (with the table)
/// if any row fails.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn abmod_verify_paper_examples(out: *mut *mut c_char) -> AbmodStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let table = cli::verify_paper_examples();
        unsafe { emit(cli::to_json(&table), out) }?;
        if table.all_pass() {
            Ok(AbmodStatus::Ok)
        } else {
            set_error(format!("{} fixture(s) failed", table.failed));
            Ok(AbmodStatus::FixtureFailure)
        }
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn abmod_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by CString::into_raw in emit
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn abmod_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn abmod_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
