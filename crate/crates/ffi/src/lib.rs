//! C interface to the rejection-proof set packing solvers.
//!
//! Instances and results are opaque handles owned by the caller and released
//! with the matching `_free` function. Every fallible call returns an
//! [`RpspStatus`]; on failure a description is available from
//! [`rpsp_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rpsp_core::error::Error;
use rpsp_core::format;
use rpsp_core::kernel::{kernelize_with, KernelOptions, Verdict};
use rpsp_core::model::{Instance, Packing};
use rpsp_core::rejection::{is_candidate_solution, is_rejection_proof, RejectionBudget};
use rpsp_core::solvers::{solve, Algo, SolveResult};

/// Outcome of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RpspStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInstance = 4,
    InvalidPacking = 5,
    InvalidParameter = 6,
    SizeLimit = 7,
    Internal = 8,
    BufferTooSmall = 9,
}

/// Solver selection, see `rpsp_solve`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RpspAlgo {
    Auto = 0,
    Fpt = 1,
    OneRejection = 2,
    Brute = 3,
    Ke = 4,
}

/// A validated instance.
pub struct RpspInstance {
    inner: Instance,
}

/// The answer and witness of a solve call.
pub struct RpspSolveResult {
    inner: SolveResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: RpspStatus, msg: impl Into<String>) -> RpspStatus {
    set_error(msg.into());
    status
}

fn status_of(e: &Error) -> RpspStatus {
    match e {
        Error::Parse { .. } => RpspStatus::Parse,
        Error::InvalidInstance(_) => RpspStatus::InvalidInstance,
        Error::InvalidPacking(_) => RpspStatus::InvalidPacking,
        Error::InvalidParameter(_) => RpspStatus::InvalidParameter,
        Error::SizeLimit(_) => RpspStatus::SizeLimit,
        Error::Internal(_) => RpspStatus::Internal,
    }
}

fn from_error(e: Error) -> RpspStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, mapping panics to `Internal`.
fn guard(f: impl FnOnce() -> RpspStatus) -> RpspStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(RpspStatus::Internal, "panic inside rpsp"))
}

fn budget_of(c: i64) -> Result<RejectionBudget, RpspStatus> {
    match c {
        -1 => Ok(RejectionBudget::Unbounded),
        c if c >= 0 => Ok(RejectionBudget::Bounded(c as usize)),
        c => Err(fail(
            RpspStatus::InvalidParameter,
            format!("budget {c} is neither -1 nor non-negative"),
        )),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, RpspStatus> {
    if text.is_null() {
        return Err(fail(RpspStatus::NullPointer, "text is null"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| fail(RpspStatus::InvalidUtf8, e.to_string()))
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rpsp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses an instance in `rpsp` or `kep` text format; `kep` graphs are
/// translated to their set packing instance.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rpsp_instance_parse(text: *const c_char, out: *mut *mut RpspInstance) -> RpspStatus {
    guard(|| {
        if out.is_null() {
            return fail(RpspStatus::NullPointer, "out is null");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match format::parse_input(text).and_then(|i| i.instance()) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(RpspInstance { inner }));
                RpspStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `inst` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn rpsp_instance_free(inst: *mut RpspInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Writes the canonical `rpsp` text of `inst` to `*out`; release it with
/// `rpsp_string_free`.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rpsp_instance_serialize(
    inst: *const RpspInstance,
    out: *mut *mut c_char,
) -> RpspStatus {
    guard(|| {
        if inst.is_null() || out.is_null() {
            return fail(RpspStatus::NullPointer, "null argument");
        }
        let text = format::write_rpsp(&(*inst).inner);
        *out = CString::new(text).expect("no interior nul").into_raw();
        RpspStatus::Ok
    })
}

/// Number of sets, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rpsp_instance_num_sets(inst: *const RpspInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.num_sets())
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rpsp_instance_num_elements(inst: *const RpspInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.n())
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn rpsp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Decides the instance at rejection budget `budget` (-1 for unbounded).
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rpsp_solve(
    inst: *const RpspInstance,
    budget: i64,
    algo: RpspAlgo,
    out: *mut *mut RpspSolveResult,
) -> RpspStatus {
    guard(|| {
        if inst.is_null() || out.is_null() {
            return fail(RpspStatus::NullPointer, "null argument");
        }
        let budget = match budget_of(budget) {
            Ok(b) => b,
            Err(s) => return s,
        };
        let algo = match algo {
            RpspAlgo::Auto => Algo::Auto,
            RpspAlgo::Fpt => Algo::Fpt,
            RpspAlgo::OneRejection => Algo::OneRejection,
            RpspAlgo::Brute => Algo::Brute,
            RpspAlgo::Ke => Algo::Ke,
        };
        match solve(&(*inst).inner, budget, algo) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(RpspSolveResult { inner }));
                RpspStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// 1 for a yes answer, 0 for no or a null handle.
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rpsp_result_is_yes(res: *const RpspSolveResult) -> c_int {
    res.as_ref().is_some_and(|r| r.inner.answer.is_yes()) as c_int
}

/// Number of sets in the witness (0 when there is none).
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rpsp_result_witness_len(res: *const RpspSolveResult) -> usize {
    res.as_ref()
        .and_then(|r| r.inner.witness.as_ref())
        .map_or(0, |w| w.len())
}

/// Copies the witness set indices into `buf`, which holds `cap` entries.
/// `*written` receives the witness length, also when the buffer is too
/// small.
///
/// # Safety
/// `res` must be a live handle, `buf` valid for `cap` writes and `written` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rpsp_result_witness(
    res: *const RpspSolveResult,
    buf: *mut usize,
    cap: usize,
    written: *mut usize,
) -> RpspStatus {
    guard(|| {
        if res.is_null() || written.is_null() || (buf.is_null() && cap > 0) {
            return fail(RpspStatus::NullPointer, "null argument");
        }
        let idx = (*res).inner.witness.as_ref().map_or(&[][..], |w| w.indices());
        *written = idx.len();
        if idx.len() > cap {
            return fail(
                RpspStatus::BufferTooSmall,
                format!("witness has {} sets, buffer holds {cap}", idx.len()),
            );
        }
        if !idx.is_empty() {
            ptr::copy_nonoverlapping(idx.as_ptr(), buf, idx.len());
        }
        RpspStatus::Ok
    })
}

/// # Safety
/// `res` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn rpsp_result_free(res: *mut RpspSolveResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// Sets `*ok` to 1 when the packing given by `len` set indices covers at
/// least `k` elements and no agent rejects it within `budget` (-1 for
/// unbounded), else 0. Overlapping or unknown sets yield
/// `RPSP_STATUS_INVALID_PACKING`.
///
/// # Safety
/// `inst` must be a live handle, `sets` valid for `len` reads and `ok` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rpsp_verify(
    inst: *const RpspInstance,
    sets: *const usize,
    len: usize,
    budget: i64,
    ok: *mut c_int,
) -> RpspStatus {
    guard(|| {
        if inst.is_null() || ok.is_null() || (sets.is_null() && len > 0) {
            return fail(RpspStatus::NullPointer, "null argument");
        }
        let budget = match budget_of(budget) {
            Ok(b) => b,
            Err(s) => return s,
        };
        let inst = &(*inst).inner;
        let idx = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(sets, len)
        };
        let x = Packing::new(idx.to_vec());
        let proof = match is_rejection_proof(inst, &x, budget) {
            Ok(p) => p,
            Err(e) => return from_error(e),
        };
        *ok = (proof && is_candidate_solution(inst, &x)) as c_int;
        RpspStatus::Ok
    })
}

/// Runs the kernel. On a decided yes, `*decided_yes` is 1 and `*reduced` is
/// null; otherwise `*reduced` receives a new handle for the reduced
/// instance. A non-zero `eager` keeps reducing below the size bound.
///
/// # Safety
/// `inst` must be a live handle; `decided_yes` and `reduced` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rpsp_kernelize(
    inst: *const RpspInstance,
    eager: c_int,
    decided_yes: *mut c_int,
    reduced: *mut *mut RpspInstance,
) -> RpspStatus {
    guard(|| {
        if inst.is_null() || decided_yes.is_null() || reduced.is_null() {
            return fail(RpspStatus::NullPointer, "null argument");
        }
        match kernelize_with(&(*inst).inner, KernelOptions { eager: eager != 0 }) {
            Ok(k) => {
                *decided_yes = (k.verdict == Verdict::DecidedYes) as c_int;
                *reduced = k.instance.map_or(ptr::null_mut(), |inner| {
                    Box::into_raw(Box::new(RpspInstance { inner }))
                });
                RpspStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
