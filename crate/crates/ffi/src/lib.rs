//! C ABI over the `turan` library.
//!
//! Every call returns a [`TuranStatus`]. On anything but `TURAN_STATUS_OK`
//! the thread-local message from [`turan_last_error_message`] says why.
//! Handles are opaque and owned by the caller until passed to the matching
//! `_free` function. Strings returned through out-parameters are freed with
//! [`turan_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;
use turan::dispatch::{run_check, CheckParams, SequenceSpec};
use turan::partition_scan::verify_all;
use turan::exact::rat;
use turan::report;
use turan::{CheckReport, Error, ExactRational, PartitionTable, PolynomialCoeffs, SequenceWindow};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TuranStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Precondition = 5,
    NotRealRooted = 6,
    Input = 7,
    Io = 8,
    Internal = 9,
}

pub struct TuranSequence(SequenceWindow);

pub struct TuranReport(CheckReport);

/// Options for [`turan_run_check`]. Zero fields mean "default".
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct TuranCheckOptions {
    pub has_range: bool,
    pub range_lo: i64,
    pub range_hi: i64,
    /// Level for `klogconcave`; 0 selects 2.
    pub j: u32,
    /// Ratio for `criterion` as `r_num / r_den`; `r_den == 0` leaves it unset.
    pub r_num: i64,
    pub r_den: i64,
    /// Depth for `branden`; 0 selects 3.
    pub depth: u32,
    pub interior: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct TuranSummary {
    pub holds: u64,
    pub holds_strict: u64,
    pub fails: u64,
    pub not_applicable: u64,
    pub has_first_fail: bool,
    pub first_fail_index: i64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct TuranRootCertificate {
    pub distinct_real_roots: u64,
    pub degree_of_squarefree_part: u64,
    pub is_real_rooted: bool,
    pub all_roots_nonpositive: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> TuranStatus {
    match err {
        Error::Domain(_) | Error::DivisionByZero => TuranStatus::Domain,
        Error::Precondition(_) | Error::NotApplicable(_) => TuranStatus::Precondition,
        Error::NotRealRooted(_) => TuranStatus::NotRealRooted,
        Error::Parse { .. } => TuranStatus::Parse,
        Error::Input(_) => TuranStatus::Input,
        Error::Io(_) => TuranStatus::Io,
    }
}

struct Fail(TuranStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TuranStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            TuranStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TuranStatus::Internal
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(TuranStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(TuranStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn read_rationals(num: *const i64, den: *const i64, len: usize) -> Result<Vec<ExactRational>, Fail> {
    if len == 0 {
        return Err(Fail(TuranStatus::Input, "at least one term is required".into()));
    }
    if num.is_null() {
        return Err(null("numerators"));
    }
    let nums = std::slice::from_raw_parts(num, len);
    let dens = if den.is_null() {
        None
    } else {
        Some(std::slice::from_raw_parts(den, len))
    };
    (0..len)
        .map(|i| {
            let d = dens.map_or(1, |d| d[i]);
            if d == 0 {
                return Err(Fail(TuranStatus::Domain, format!("denominator {i} is zero")));
            }
            Ok(rat(nums[i], d))
        })
        .collect()
}

fn boxed_sequence(w: SequenceWindow) -> *mut TuranSequence {
    Box::into_raw(Box::new(TuranSequence(w)))
}

/// Builds a sequence from a spec string such as `partition`, `binomial:10`,
/// `geometric:5/2:20`, `hermite:6`, `laguerre:6`, `terms:1,2,1` or
/// `csv:PATH`. `partition_top` is the last index for `partition`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn turan_sequence_parse(
    spec: *const c_char,
    partition_top: usize,
    out: *mut *mut TuranSequence,
) -> TuranStatus {
    guard(|| {
        let spec: SequenceSpec = read_str(spec, "spec")?.parse()?;
        let w = spec.materialize(partition_top)?;
        write_out(out, boxed_sequence(w), "out")
    })
}

/// `p(0), …, p(n_max)`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn turan_sequence_partition(n_max: usize, out: *mut *mut TuranSequence) -> TuranStatus {
    guard(|| write_out(out, boxed_sequence(PartitionTable::shared(n_max).window(n_max)), "out"))
}

/// Terms `num[i] / den[i]` starting at `start_index`. `den` may be null for
/// integer terms.
///
/// # Safety
/// `num` (and `den` when non-null) must point to `len` readable values.
#[no_mangle]
pub unsafe extern "C" fn turan_sequence_from_terms(
    num: *const i64,
    den: *const i64,
    len: usize,
    start_index: usize,
    out: *mut *mut TuranSequence,
) -> TuranStatus {
    guard(|| {
        let terms = read_rationals(num, den, len)?;
        let w = SequenceWindow::new("terms", start_index, terms)?;
        write_out(out, boxed_sequence(w), "out")
    })
}

/// Number of terms, or 0 for a null handle.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn turan_sequence_len(seq: *const TuranSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `seq` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn turan_sequence_free(seq: *mut TuranSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Runs the named check (`hot`, `ineq1`, `marik`, …). `options` may be null.
///
/// # Safety
/// `seq` must be a live handle, `name` a NUL-terminated string, `options`
/// null or valid, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn turan_run_check(
    seq: *const TuranSequence,
    name: *const c_char,
    options: *const TuranCheckOptions,
    out: *mut *mut TuranReport,
) -> TuranStatus {
    guard(|| {
        let seq = seq.as_ref().ok_or_else(|| null("seq"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let name = read_str(name, "name")?;
        let o = options.as_ref().copied().unwrap_or_default();
        if o.r_den == 0 && o.r_num != 0 {
            return Err(Fail(TuranStatus::Domain, "r_den is zero".into()));
        }
        let params = CheckParams {
            range: o.has_range.then_some((o.range_lo, o.range_hi)),
            j: (o.j > 0).then_some(o.j as usize),
            r: (o.r_den != 0).then(|| rat(o.r_num, o.r_den)),
            depth: (o.depth > 0).then_some(o.depth as usize),
            interior: o.interior,
        };
        let report = run_check(&seq.0, name, &params)?;
        write_out(out, Box::into_raw(Box::new(TuranReport(report))), "out")
    })
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn turan_report_summary(report: *const TuranReport, out: *mut TuranSummary) -> TuranStatus {
    guard(|| {
        let r = &report.as_ref().ok_or_else(|| null("report"))?.0;
        let s = TuranSummary {
            holds: r.summary.holds as u64,
            holds_strict: r.summary.holds_strict as u64,
            fails: r.summary.fails as u64,
            not_applicable: r.summary.not_applicable as u64,
            has_first_fail: r.first_fail_index.is_some(),
            first_fail_index: r.first_fail_index.unwrap_or(0),
        };
        write_out(out, s, "out")
    })
}

unsafe fn report_string(
    report: *const TuranReport,
    out: *mut *mut c_char,
    render: fn(&CheckReport) -> String,
) -> TuranStatus {
    guard(|| {
        let r = &report.as_ref().ok_or_else(|| null("report"))?.0;
        let s = CString::new(render(r)).map_err(|_| Fail(TuranStatus::Internal, "NUL in report".into()))?;
        write_out(out, s.into_raw(), "out")
    })
}

/// The report as JSON; free with [`turan_string_free`].
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn turan_report_to_json(report: *const TuranReport, out: *mut *mut c_char) -> TuranStatus {
    report_string(report, out, report::to_json)
}

/// The report as CSV; free with [`turan_string_free`].
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn turan_report_to_csv(report: *const TuranReport, out: *mut *mut c_char) -> TuranStatus {
    report_string(report, out, report::to_csv)
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn turan_report_free(report: *mut TuranReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Sturm certificate for `Σ (num[i]/den[i]) x^i`. `den` may be null.
///
/// # Safety
/// `num` (and `den` when non-null) must point to `len` readable values and
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn turan_certify(
    num: *const i64,
    den: *const i64,
    len: usize,
    out: *mut TuranRootCertificate,
) -> TuranStatus {
    guard(|| {
        let p = PolynomialCoeffs::new(read_rationals(num, den, len)?)?;
        let c = turan::certify(&p)?;
        let c = TuranRootCertificate {
            distinct_real_roots: c.distinct_real_roots as u64,
            degree_of_squarefree_part: c.degree_of_squarefree_part as u64,
            is_real_rooted: c.is_real_rooted,
            all_roots_nonpositive: c.all_roots_nonpositive,
        };
        write_out(out, c, "out")
    })
}

/// Runs the partition tables and cited ranges up to `max_n`.
///
/// # Safety
/// `verified` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn turan_verify_claims(max_n: usize, verified: *mut bool) -> TuranStatus {
    guard(|| {
        let v = verify_all(max_n)?;
        write_out(verified, v.all_verified(), "verified")
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn turan_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn turan_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        let p = turan_last_error_message();
        assert!(!p.is_null());
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }

    #[test]
    fn parse_and_check() {
        unsafe {
            let mut seq = ptr::null_mut();
            let spec = CString::new("binomial:6").unwrap();
            assert_eq!(turan_sequence_parse(spec.as_ptr(), 0, &mut seq), TuranStatus::Ok);
            assert_eq!(turan_sequence_len(seq), 7);
            let mut rep = ptr::null_mut();
            let name = CString::new("hot").unwrap();
            assert_eq!(turan_run_check(seq, name.as_ptr(), ptr::null(), &mut rep), TuranStatus::Ok);
            let mut s = TuranSummary::default();
            assert_eq!(turan_report_summary(rep, &mut s), TuranStatus::Ok);
            assert_eq!(s.fails, 0);
            assert!(!s.has_first_fail);
            turan_report_free(rep);
            turan_sequence_free(seq);
        }
    }

    #[test]
    fn errors_set_message() {
        unsafe {
            let mut seq = ptr::null_mut();
            let spec = CString::new("fibonacci").unwrap();
            assert_eq!(turan_sequence_parse(spec.as_ptr(), 0, &mut seq), TuranStatus::Input);
            assert!(last_error().contains("fibonacci"));
            assert_eq!(turan_sequence_parse(ptr::null(), 0, &mut seq), TuranStatus::NullPointer);
            let dens = [1i64, 0];
            assert_eq!(
                turan_sequence_from_terms([1i64, 2].as_ptr(), dens.as_ptr(), 2, 0, &mut seq),
                TuranStatus::Domain
            );
            let mut c = TuranRootCertificate::default();
            assert_eq!(turan_certify([5i64].as_ptr(), ptr::null(), 1, &mut c), TuranStatus::Precondition);
        }
    }

    #[test]
    fn certify_quadratic() {
        let mut c = TuranRootCertificate::default();
        let status = unsafe { turan_certify([1i64, 3, 1].as_ptr(), ptr::null(), 3, &mut c) };
        assert_eq!(status, TuranStatus::Ok);
        assert_eq!(c.distinct_real_roots, 2);
        assert!(c.all_roots_nonpositive);
    }
}
