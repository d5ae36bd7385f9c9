//! C interface to the `kneser` crate.
//!
//! Families cross the boundary as opaque [`KneserFamily`] handles that the
//! caller releases with [`kneser_family_free`]. Every fallible function
//! returns a [`KneserStatus`]; on failure [`kneser_last_error`] holds a
//! message for the calling thread. Panics are caught and reported as
//! [`KneserStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use kneser::certify::{verify, InvariantKind, Violation};
use kneser::construct::{ConstructionName, ConstructionSpec};
use kneser::solve::{solve_domination, solve_rho2, threshold_predictions, SolveStatus, SolverConfig};
use kneser::{Error, KneserParams, VertexFamily};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KneserStatus {
    Ok = 0,
    NullPointer = 1,
    Parameter = 2,
    Capacity = 3,
    Undefined = 4,
    InvalidFamily = 5,
    Internal = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KneserInvariant {
    GammaK = 0,
    GammaXk = 1,
    GammaXkt = 2,
    TwoPacking = 3,
}

impl KneserInvariant {
    fn kind(self) -> InvariantKind {
        match self {
            KneserInvariant::GammaK => InvariantKind::KDom,
            KneserInvariant::GammaXk => InvariantKind::KTuple,
            KneserInvariant::GammaXkt => InvariantKind::KTupleTotal,
            KneserInvariant::TwoPacking => InvariantKind::TwoPacking,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KneserSolveStatus {
    Optimal = 0,
    Bounds = 1,
    Undefined = 2,
}

/// Result of [`kneser_verify`].
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct KneserVerifyResult {
    pub valid: bool,
    pub checked_count: u64,
}

/// Result of [`kneser_solve`]. `value`, `lo` and `hi` are 0 when undefined;
/// `lo == hi == value` when optimal.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct KneserSolveOutcome {
    pub status: KneserSolveStatus,
    pub value: u64,
    pub lo: u64,
    pub hi: u64,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub timed_out: bool,
}

/// Opaque family of vertices of K(n,r).
pub struct KneserFamily(VertexFamily);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

struct Failure(KneserStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parameter(_) => KneserStatus::Parameter,
            Error::InvalidVertex { .. } | Error::DuplicateMember(_) => KneserStatus::InvalidFamily,
            Error::Capacity { .. } => KneserStatus::Capacity,
            Error::Undefined { .. } => KneserStatus::Undefined,
            Error::Internal(_) => KneserStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(KneserStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KneserStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            KneserStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            KneserStatus::Panic
        }
    }
}

fn family_ref<'a>(f: *const KneserFamily) -> Result<&'a VertexFamily, Failure> {
    // SAFETY: the caller passes a handle from this library or null.
    unsafe { f.as_ref() }.map(|h| &h.0).ok_or_else(|| null("family"))
}

fn hand_out(out: *mut *mut KneserFamily, family: VertexFamily) {
    let handle = Box::into_raw(Box::new(KneserFamily(family)));
    // SAFETY: `out` was checked for null by the caller of this helper.
    unsafe { *out = handle };
}

/// Copies the thread's last error message into `buf` (NUL-terminated,
/// truncated to `buf_len - 1` bytes) and returns its full length in bytes.
/// `buf` may be null to query the length.
///
/// # Safety
/// `buf` must be null or point to `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn kneser_last_error(buf: *mut c_char, buf_len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && buf_len > 0 {
            let n = msg.len().min(buf_len - 1);
            // SAFETY: the caller guarantees `buf_len` bytes at `buf`.
            unsafe {
                ptr::copy_nonoverlapping(msg.as_ptr(), buf as *mut u8, n);
                *buf.add(n) = 0;
            }
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn kneser_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Builds a family of `set_count` vertices of K(n,r) from `set_count * r`
/// 1-based elements, stored set after set.
///
/// # Safety
/// `elements` must point to `set_count * r` values (it may be null when
/// `set_count` is 0); `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_new(
    n: u32,
    r: u32,
    elements: *const u32,
    set_count: usize,
    out: *mut *mut KneserFamily,
) -> KneserStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = KneserParams::new(n, r)?;
        let flat: &[u32] = if set_count == 0 {
            &[]
        } else if elements.is_null() {
            return Err(null("elements"));
        } else {
            // SAFETY: the caller guarantees `set_count * r` readable values.
            unsafe { std::slice::from_raw_parts(elements, set_count * r as usize) }
        };
        let sets: Vec<&[u32]> = flat.chunks(r as usize).collect();
        let family = VertexFamily::from_sets(params, &sets)?;
        hand_out(out, family);
        Ok(())
    })
}

/// Releases a family handle. Null is ignored.
///
/// # Safety
/// `family` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_free(family: *mut KneserFamily) {
    if !family.is_null() {
        // SAFETY: the handle came from Box::into_raw in this library.
        drop(unsafe { Box::from_raw(family) });
    }
}

/// Number of members, or 0 for null.
///
/// # Safety
/// `family` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_len(family: *const KneserFamily) -> usize {
    family_ref(family).map_or(0, |f| f.len())
}

/// # Safety
/// `family` must be null or a live handle; `n` and `r` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_params(family: *const KneserFamily, n: *mut u32, r: *mut u32) -> KneserStatus {
    guard(|| {
        let f = family_ref(family)?;
        if n.is_null() || r.is_null() {
            return Err(null("output pointer"));
        }
        // SAFETY: both pointers checked above.
        unsafe {
            *n = f.params().n();
            *r = f.params().r();
        }
        Ok(())
    })
}

/// Writes the r elements of member `index`, in increasing order, to `buf`.
///
/// # Safety
/// `family` must be null or a live handle; `buf` must point to `buf_len`
/// writable values.
#[no_mangle]
pub unsafe extern "C" fn kneser_family_member(
    family: *const KneserFamily,
    index: usize,
    buf: *mut u32,
    buf_len: usize,
) -> KneserStatus {
    guard(|| {
        let f = family_ref(family)?;
        let Some(v) = f.members().get(index) else {
            return Err(Failure(
                KneserStatus::Parameter,
                format!("member index {index} out of range for {} members", f.len()),
            ));
        };
        let r = f.params().r() as usize;
        if buf.is_null() {
            return Err(null("buf"));
        }
        if buf_len < r {
            return Err(Failure(
                KneserStatus::BufferTooSmall,
                format!("buffer holds {buf_len} values, member needs {r}"),
            ));
        }
        for (i, x) in v.elements().enumerate() {
            // SAFETY: i < r <= buf_len.
            unsafe { *buf.add(i) = x };
        }
        Ok(())
    })
}

/// Checks `family` against an invariant (`k` is ignored for 2-packings).
/// When `violation` is non-null it receives a new handle with the offending
/// vertex or pair (empty when valid).
///
/// # Safety
/// `family` must be a live handle; `out` must be valid; `violation` must be
/// null or valid.
#[no_mangle]
pub unsafe extern "C" fn kneser_verify(
    family: *const KneserFamily,
    invariant: KneserInvariant,
    k: u32,
    out: *mut KneserVerifyResult,
    violation: *mut *mut KneserFamily,
) -> KneserStatus {
    guard(|| {
        let f = family_ref(family)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let report = verify(invariant.kind(), f, k)?;
        // SAFETY: checked above.
        unsafe {
            *out = KneserVerifyResult {
                valid: report.valid,
                checked_count: report.checked_count,
            };
        }
        if !violation.is_null() {
            let members = match report.witness_violation {
                None => vec![],
                Some(Violation::Vertex(v)) => vec![v],
                Some(Violation::Pair(u, v)) => vec![u, v],
            };
            hand_out(violation, VertexFamily::new(f.params(), members)?);
        }
        Ok(())
    })
}

/// Builds a named construction (`"rho3"`, `"table3"`, ...). Integer
/// parameters equal to 0 are treated as absent; `input` may be null except
/// for lifts.
///
/// # Safety
/// `name` must be a NUL-terminated string; `input` null or a live handle;
/// `out` valid.
#[no_mangle]
pub unsafe extern "C" fn kneser_construct(
    name: *const c_char,
    k: u32,
    r: u32,
    n: u32,
    t: u32,
    a: u32,
    input: *const KneserFamily,
    out: *mut *mut KneserFamily,
) -> KneserStatus {
    guard(|| {
        if name.is_null() {
            return Err(null("name"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        // SAFETY: the caller passes a NUL-terminated string.
        let name = unsafe { CStr::from_ptr(name) }
            .to_str()
            .map_err(|_| Failure(KneserStatus::Parameter, "name is not UTF-8".into()))?;
        let name: ConstructionName = name.parse()?;
        let opt = |v: u32| (v != 0).then_some(v);
        let spec = ConstructionSpec {
            name: Some(name),
            k: opt(k),
            r: opt(r),
            n: opt(n),
            t: opt(t),
            a: opt(a),
            seed: None,
        };
        // SAFETY: null or a live handle.
        let input = unsafe { input.as_ref() }.map(|h| &h.0);
        hand_out(out, spec.build(input)?);
        Ok(())
    })
}

/// Computes an invariant of K(n,r). `k` is ignored for 2-packings.
/// `witness` may be null; otherwise it receives the best family found (or
/// null when the invariant is undefined).
///
/// # Safety
/// `out` must be valid; `witness` null or valid.
#[no_mangle]
pub unsafe extern "C" fn kneser_solve(
    invariant: KneserInvariant,
    n: u32,
    r: u32,
    k: u32,
    timeout_secs: f64,
    threads: u32,
    out: *mut KneserSolveOutcome,
    witness: *mut *mut KneserFamily,
) -> KneserStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if !(timeout_secs.is_finite() && timeout_secs > 0.0) {
            return Err(Failure(KneserStatus::Parameter, "timeout must be positive".into()));
        }
        let params = KneserParams::new(n, r)?;
        let cfg = SolverConfig {
            timeout: Duration::from_secs_f64(timeout_secs),
            thread_count: threads.max(1) as usize,
            ..SolverConfig::default()
        };
        let res = match invariant {
            KneserInvariant::TwoPacking => solve_rho2(params, &cfg)?,
            inv => solve_domination(params, inv.kind(), k, &cfg)?,
        };
        let value = res.value.unwrap_or(0);
        let (status, lo, hi) = match res.status {
            SolveStatus::Optimal => (KneserSolveStatus::Optimal, value, value),
            SolveStatus::Bounds { lo, hi } => (KneserSolveStatus::Bounds, lo, hi),
            SolveStatus::Undefined => (KneserSolveStatus::Undefined, 0, 0),
        };
        // SAFETY: checked above.
        unsafe {
            *out = KneserSolveOutcome {
                status,
                value,
                lo,
                hi,
                nodes: res.stats.nodes,
                elapsed_ms: res.stats.elapsed_ms.min(u64::MAX as u128) as u64,
                timed_out: res.stats.timed_out,
            };
        }
        if !witness.is_null() {
            match res.witness {
                Some(w) => hand_out(witness, w),
                // SAFETY: checked non-null.
                None => unsafe { *witness = ptr::null_mut() },
            }
        }
        Ok(())
    })
}

/// Closed-form 2-packing number of K(3r-t, r): writes 3 or 4, or 0 when the
/// parameters are outside both known ranges.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn kneser_threshold_prediction(r: u32, t: u32, out: *mut u64) -> KneserStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let v = threshold_predictions(r, t)?;
        // SAFETY: checked above.
        unsafe { *out = v.unwrap_or(0) };
        Ok(())
    })
}
