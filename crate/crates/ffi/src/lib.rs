//! C interface to `classnum`.
//!
//! Every function returns a [`ClassnumStatus`]. Strings handed out through
//! `out` parameters are owned by the caller and must be released with
//! [`classnum_string_free`]; series handles with [`classnum_series_free`].
//! After a non-`OK` status, [`classnum_last_error`] describes the problem
//! (per thread, valid until the next call on that thread).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use classnum::arith::{class_number, hurwitz};
use classnum::cohen::{check_relation, verify_theorem, RelationId};
use classnum::gamma04::identify;
use classnum::nonhol::{run_check, CheckKind, NumericConfig, Tau};
use classnum::qseries::{delta4_series, f2_series, hurwitz_series, lambda_odd_series, theta_series};
use classnum::{Error, QSeries, ReportEnvelope, ResidualRecord, VerificationReport};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassnumStatus {
    Ok = 0,
    /// The computation ran and a checked identity failed.
    CheckFailed = 1,
    /// Null pointer, invalid UTF-8 or an unknown name.
    InvalidArgument = 2,
    Domain = 3,
    InsufficientPrecision = 4,
    NotInSpace = 5,
    Parse = 6,
    /// Pole proximity, step size or configuration problems in numeric checks.
    Numeric = 7,
    Panic = 8,
}

/// Opaque handle to a truncated q-series.
pub struct ClassnumSeries {
    inner: QSeries,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(ClassnumStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Domain(_) => ClassnumStatus::Domain,
            Error::InsufficientPrecision { .. } => ClassnumStatus::InsufficientPrecision,
            Error::NotInSpace { .. } => ClassnumStatus::NotInSpace,
            Error::Parse { .. } => ClassnumStatus::Parse,
            Error::PrecisionMismatch { .. } => ClassnumStatus::Domain,
            Error::PoleProximity { .. } | Error::StepTooLarge { .. } | Error::InvalidConfig(_) => {
                ClassnumStatus::Numeric
            }
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(ClassnumStatus::InvalidArgument, msg.into())
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<ClassnumStatus, Failure>) -> ClassnumStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ClassnumStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(invalid(format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    let c = CString::new(s).map_err(|_| invalid("string contains nul"))?;
    *out = c.into_raw();
    Ok(())
}

fn envelope(command: Vec<String>, reports: Vec<VerificationReport>, residuals: Vec<ResidualRecord>) -> (bool, String) {
    let env = ReportEnvelope::stamped(command, reports, residuals);
    let json = serde_json::to_string(&env).expect("report serialization");
    (env.pass, json)
}

fn pass_status(pass: bool) -> ClassnumStatus {
    if pass {
        ClassnumStatus::Ok
    } else {
        ClassnumStatus::CheckFailed
    }
}

/// Message for the last failed call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn classnum_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn classnum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `H(n)` as `"p/q"` or an integer string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn classnum_hurwitz(n: u64, out: *mut *mut c_char) -> ClassnumStatus {
    guard(|| {
        write_string(out, hurwitz(n).to_string())?;
        Ok(ClassnumStatus::Ok)
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn classnum_class_number(d: i64, out: *mut u64) -> ClassnumStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("output pointer is null"));
        }
        *out = class_number(d)?;
        Ok(ClassnumStatus::Ok)
    })
}

/// Builds a named series (`theta`, `hurwitz`, `f2`, `delta4`, `lambda-odd`)
/// through `q^prec`. `ell` is used by `lambda-odd` only.
///
/// # Safety
/// `kind` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn classnum_series_new(
    kind: *const c_char,
    prec: usize,
    ell: u32,
    out: *mut *mut ClassnumSeries,
) -> ClassnumStatus {
    guard(|| {
        let kind = read_str(kind, "kind")?;
        if out.is_null() {
            return Err(invalid("output pointer is null"));
        }
        let inner = match kind {
            "theta" => theta_series(prec),
            "hurwitz" => hurwitz_series(prec),
            "f2" => f2_series(prec),
            "delta4" => delta4_series(prec),
            "lambda-odd" => lambda_odd_series(ell, prec)?,
            other => return Err(invalid(format!("unknown series {other:?}"))),
        };
        *out = Box::into_raw(Box::new(ClassnumSeries { inner }));
        Ok(ClassnumStatus::Ok)
    })
}

/// Parses the text interchange format.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn classnum_series_from_text(text: *const c_char, out: *mut *mut ClassnumSeries) -> ClassnumStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        if out.is_null() {
            return Err(invalid("output pointer is null"));
        }
        let inner = QSeries::from_text(text)?;
        *out = Box::into_raw(Box::new(ClassnumSeries { inner }));
        Ok(ClassnumStatus::Ok)
    })
}

/// # Safety
/// `series` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn classnum_series_free(series: *mut ClassnumSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Precision `N` of the series (coefficients `0..=N`), or 0 for null.
///
/// # Safety
/// `series` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn classnum_series_prec(series: *const ClassnumSeries) -> usize {
    series.as_ref().map_or(0, |s| s.inner.prec())
}

/// Coefficient of `q^n` as a rational string.
///
/// # Safety
/// `series` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn classnum_series_coeff(series: *const ClassnumSeries, n: usize, out: *mut *mut c_char) -> ClassnumStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| invalid("series is null"))?;
        if n > s.inner.prec() {
            return Err(Failure(
                ClassnumStatus::Domain,
                format!("index {n} beyond precision {}", s.inner.prec()),
            ));
        }
        write_string(out, s.inner.coeff(n).to_string())?;
        Ok(ClassnumStatus::Ok)
    })
}

/// # Safety
/// `series` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn classnum_series_to_text(series: *const ClassnumSeries, out: *mut *mut c_char) -> ClassnumStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| invalid("series is null"))?;
        write_string(out, s.inner.to_text())?;
        Ok(ClassnumStatus::Ok)
    })
}

/// Decomposition of the series in the monomial basis of weight `weight`
/// (the cusp basis when `cusp`), as a JSON object. A series outside the span
/// gives `NOT_IN_SPACE`.
///
/// # Safety
/// `series` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn classnum_identify(
    series: *const ClassnumSeries,
    weight: i64,
    cusp: bool,
    out_json: *mut *mut c_char,
) -> ClassnumStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| invalid("series is null"))?;
        let d = identify(&s.inner, weight, cusp)?;
        write_string(out_json, serde_json::to_string(&d).expect("decomposition serialization"))?;
        Ok(ClassnumStatus::Ok)
    })
}

/// Checks relation `name` (`eq1`, `eq3`, `cc1`..`cc4`) for `from ≤ n ≤ to`
/// and writes a JSON report envelope. Returns `CHECK_FAILED` when the
/// relation fails somewhere in the range.
///
/// # Safety
/// `name` must be a nul-terminated string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn classnum_check_relation(
    name: *const c_char,
    from: u64,
    to: u64,
    out_json: *mut *mut c_char,
) -> ClassnumStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let id: RelationId = name.parse()?;
        if from == 0 || from > to {
            return Err(invalid(format!("need 1 <= from <= to, got {from}..{to}")));
        }
        let report = check_relation(id, from, to);
        let command = vec!["check".into(), name.into(), from.to_string(), to.to_string()];
        let (pass, json) = envelope(command, vec![report], Vec::new());
        write_string(out_json, json)?;
        Ok(pass_status(pass))
    })
}

/// # Safety
/// `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn classnum_verify_theorem(k_max: u32, prec: usize, out_json: *mut *mut c_char) -> ClassnumStatus {
    guard(|| {
        let reports = verify_theorem(k_max, prec)?;
        let command = vec!["verify-theorem".into(), k_max.to_string(), prec.to_string()];
        let (pass, json) = envelope(command, reports, Vec::new());
        write_string(out_json, json)?;
        Ok(pass_status(pass))
    })
}

/// Runs a numeric check (`rid`, `heat`, `eqfin1`, `appell`, `difftheta`,
/// `binom`) at `τ = tau_re + i·tau_im`. A negative `m` selects the default.
///
/// # Safety
/// `kind` must be a nul-terminated string and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn classnum_nonhol_check(
    kind: *const c_char,
    tau_re: f64,
    tau_im: f64,
    trunc: usize,
    m: i32,
    out_json: *mut *mut c_char,
) -> ClassnumStatus {
    guard(|| {
        let name = read_str(kind, "kind")?;
        let kind: CheckKind = name.parse().map_err(|_| invalid(format!("unknown check {name:?}")))?;
        let tau = Tau::new(tau_re, tau_im)?;
        let cfg = NumericConfig { trunc, ..NumericConfig::default() };
        cfg.validate()?;
        let m = u32::try_from(m).ok();
        let out = run_check(kind, tau, None, m, &cfg)?;
        let command = vec!["nonhol-check".into(), name.into(), format!("{tau_re},{tau_im}")];
        let (pass, json) = envelope(command, out.reports, out.residuals);
        write_string(out_json, json)?;
        Ok(pass_status(pass))
    })
}
