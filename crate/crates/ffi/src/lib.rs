//! C ABI over `zarank`.
//!
//! Objects cross the boundary as opaque handles (`ZrFamily`, `ZrGraph`,
//! `ZrLayered`) that the caller releases with the matching `*_free`. Every
//! fallible call returns a `ZrStatus`; on failure the message is available from
//! `zr_last_error_message` on the same thread. Strings returned through `out`
//! parameters are owned by the caller and released with `zr_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use zarank::attack::{run_attack, AttackConfig, AttackMode};
use zarank::bounds::{binary_entropy, BoundReport, Constants};
use zarank::construct::{certify_union_bound, random_family, CertificateMode};
use zarank::io::{family_from_json, family_to_json, graph_from_json, graph_to_json, layered_from_json, to_json};
use zarank::superconc::{verify_superconcentrator, KSelection, VerifyMode};
use zarank::witness::{has_kxk_independent_set, Verdict, WitnessConfig};
use zarank::{union_of, BicliqueFamily, BipartiteGraph, Error, LayeredGraph, RandomSource};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Domain = 5,
    BudgetExceeded = 6,
    Unbalanced = 7,
    Infeasible = 8,
    Io = 9,
    BufferTooSmall = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZrVerdict {
    Found = 0,
    Absent = 1,
    Unknown = 2,
}

pub struct ZrFamily {
    inner: BicliqueFamily,
}

pub struct ZrGraph {
    inner: BipartiteGraph,
}

pub struct ZrLayered {
    inner: LayeredGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ZrStatus {
    match e {
        Error::Parse { .. } => ZrStatus::Parse,
        Error::IndexOutOfRange { .. } | Error::InvalidParameter(_) => ZrStatus::InvalidArgument,
        Error::Domain(_) => ZrStatus::Domain,
        Error::BudgetExceeded { .. } => ZrStatus::BudgetExceeded,
        Error::Unbalanced(_) => ZrStatus::Unbalanced,
        Error::Infeasible { .. } => ZrStatus::Infeasible,
        Error::Io { .. } => ZrStatus::Io,
    }
}

struct Fail(ZrStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn fail(status: ZrStatus, msg: impl Into<String>) -> Fail {
    Fail(status, msg.into())
}

/// Runs `f`, records any error or panic, and maps it to a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ZrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            ZrStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&msg);
            ZrStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(fail(ZrStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(ZrStatus::InvalidUtf8, format!("{name} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| fail(ZrStatus::NullPointer, format!("{name} is null")))
}

unsafe fn put<T>(out: *mut T, value: T, name: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(fail(ZrStatus::NullPointer, format!("{name} is null")));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, text: String) -> Result<(), Fail> {
    let c = CString::new(text).map_err(|_| fail(ZrStatus::Panic, "output contains NUL"))?;
    put(out, c.into_raw(), "out")
}

unsafe fn read_sizes(sizes: *const usize, count: usize) -> Result<Vec<(usize, usize)>, Fail> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if sizes.is_null() {
        return Err(fail(ZrStatus::NullPointer, "sizes is null"));
    }
    let flat = std::slice::from_raw_parts(sizes, 2 * count);
    Ok(flat.chunks_exact(2).map(|c| (c[0], c[1])).collect())
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn zr_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn zr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a family document.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zr_family_from_json(json: *const c_char, out: *mut *mut ZrFamily) -> ZrStatus {
    guard(|| {
        let family = family_from_json(read_str(json, "json")?)?;
        put(out, Box::into_raw(Box::new(ZrFamily { inner: family })), "out")
    })
}

/// Uniform random placement of `count` bicliques; `sizes` holds `count` pairs
/// `(left, right)` flattened.
///
/// # Safety
/// `sizes` points to `2 * count` values (may be null when `count == 0`); `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zr_random_family(
    n: usize,
    k: usize,
    sizes: *const usize,
    count: usize,
    seed: u64,
    out: *mut *mut ZrFamily,
) -> ZrStatus {
    guard(|| {
        let sizes = read_sizes(sizes, count)?;
        let family = random_family(n, k, &sizes, &RandomSource::new(seed))?;
        put(out, Box::into_raw(Box::new(ZrFamily { inner: family })), "out")
    })
}

/// # Safety
/// `f` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zr_family_free(f: *mut ZrFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` is a live handle; `n`, `k`, `count` are writable.
#[no_mangle]
pub unsafe extern "C" fn zr_family_shape(f: *const ZrFamily, n: *mut usize, k: *mut usize, count: *mut usize) -> ZrStatus {
    guard(|| {
        let f = &handle(f, "family")?.inner;
        put(n, f.n(), "n")?;
        put(k, f.k(), "k")?;
        put(count, f.len(), "count")
    })
}

/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zr_family_to_json(f: *const ZrFamily, out: *mut *mut c_char) -> ZrStatus {
    guard(|| put_string(out, family_to_json(&handle(f, "family")?.inner)))
}

/// Union of every biclique as a bipartite graph.
///
/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zr_family_union(f: *const ZrFamily, out: *mut *mut ZrGraph) -> ZrStatus {
    guard(|| {
        let g = union_of(&handle(f, "family")?.inner);
        put(out, Box::into_raw(Box::new(ZrGraph { inner: g })), "out")
    })
}

/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zr_graph_from_json(json: *const c_char, out: *mut *mut ZrGraph) -> ZrStatus {
    guard(|| {
        let g = graph_from_json(read_str(json, "json")?)?;
        put(out, Box::into_raw(Box::new(ZrGraph { inner: g })), "out")
    })
}

/// # Safety
/// `g` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zr_graph_free(g: *mut ZrGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zr_graph_edge_count(g: *const ZrGraph, out: *mut usize) -> ZrStatus {
    guard(|| put(out, handle(g, "graph")?.inner.edge_count(), "out"))
}

/// # Safety
/// `g` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zr_graph_to_json(g: *const ZrGraph, out: *mut *mut c_char) -> ZrStatus {
    guard(|| put_string(out, graph_to_json(&handle(g, "graph")?.inner)))
}

/// Searches for a `k×k` independent set within `node_budget` search nodes.
///
/// On `ZR_VERDICT_FOUND` the first `k` entries of `s_out` and `t_out` hold the
/// witness, ascending. `capacity` is the length of each buffer and must be at least `k`.
///
/// # Safety
/// `g` is a live handle; `s_out`, `t_out` hold `capacity` values; `verdict` is writable.
#[no_mangle]
pub unsafe extern "C" fn zr_find_independent_set(
    g: *const ZrGraph,
    k: usize,
    node_budget: u64,
    s_out: *mut usize,
    t_out: *mut usize,
    capacity: usize,
    verdict: *mut ZrVerdict,
) -> ZrStatus {
    guard(|| {
        let g = &handle(g, "graph")?.inner;
        if capacity < k {
            return Err(fail(ZrStatus::BufferTooSmall, format!("capacity {capacity} < k={k}")));
        }
        if s_out.is_null() || t_out.is_null() {
            return Err(fail(ZrStatus::NullPointer, "witness buffer is null"));
        }
        let r = has_kxk_independent_set(g, k, &WitnessConfig::with_budget(node_budget))?;
        let v = match r.verdict() {
            Verdict::Found => {
                ptr::copy_nonoverlapping(r.s.as_ptr(), s_out, k);
                ptr::copy_nonoverlapping(r.t.as_ptr(), t_out, k);
                ZrVerdict::Found
            }
            Verdict::Absent => ZrVerdict::Absent,
            Verdict::Unknown => ZrVerdict::Unknown,
        };
        put(verdict, v, "verdict")
    })
}

/// Bound report (JSON) with the default constants.
///
/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zr_bounds_report_json(f: *const ZrFamily, out: *mut *mut c_char) -> ZrStatus {
    guard(|| {
        let r = BoundReport::evaluate(&handle(f, "family")?.inner, Constants::default());
        put_string(out, to_json(&r))
    })
}

/// Union-bound certificate: writes `log₂` of the failure bound and whether it is negative.
///
/// # Safety
/// `sizes` points to `2 * count` values (may be null when `count == 0`);
/// `log2_bound` and `certified` are writable.
#[no_mangle]
pub unsafe extern "C" fn zr_certify(
    n: usize,
    k: usize,
    sizes: *const usize,
    count: usize,
    exact: bool,
    log2_bound: *mut f64,
    certified: *mut bool,
) -> ZrStatus {
    guard(|| {
        let sizes = read_sizes(sizes, count)?;
        let mode = if exact { CertificateMode::Exact } else { CertificateMode::Relaxed };
        let c = certify_union_bound(n, k, &sizes, mode)?;
        put(log2_bound, c.log2_failure_bound, "log2_bound")?;
        put(certified, c.certified, "certified")
    })
}

/// Deletion attack report (JSON) with median threshold and exact truncation.
///
/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zr_attack_json(
    f: *const ZrFamily,
    seed: u64,
    trials: usize,
    asymmetric: bool,
    out: *mut *mut c_char,
) -> ZrStatus {
    guard(|| {
        let mode = if asymmetric { AttackMode::Asymmetric } else { AttackMode::Symmetric };
        let cfg = AttackConfig::new(mode, trials, RandomSource::new(seed));
        let r = run_attack(&handle(f, "family")?.inner, &cfg)?;
        put_string(out, to_json(&r))
    })
}

/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zr_layered_from_json(json: *const c_char, out: *mut *mut ZrLayered) -> ZrStatus {
    guard(|| {
        let g = layered_from_json(read_str(json, "json")?)?;
        put(out, Box::into_raw(Box::new(ZrLayered { inner: g })), "out")
    })
}

/// # Safety
/// `g` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zr_layered_free(g: *mut ZrLayered) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Exhaustive superconcentrator check over every `k` (JSON verdict).
///
/// # Safety
/// `g` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zr_sc_verify_json(g: *const ZrLayered, pair_budget: u64, out: *mut *mut c_char) -> ZrStatus {
    guard(|| {
        let g = &handle(g, "layered")?.inner;
        let v = verify_superconcentrator(g, &KSelection::All, VerifyMode::Exhaustive { budget: pair_budget })?;
        put_string(out, to_json(&v))
    })
}

/// `H(p)` in bits.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn zr_binary_entropy(p: f64, out: *mut f64) -> ZrStatus {
    guard(|| put(out, binary_entropy(p)?, "out"))
}
