//! C ABI for `ksection`.
//!
//! Objects are opaque handles created by `ksec_*_new` and released by the
//! matching `ksec_*_free`. Every fallible call returns a [`KsecStatus`]; on
//! failure a description is available from [`ksec_last_error`]. Vertex,
//! bag and part ids are 1-based.

use std::cell::RefCell;
use std::ffi::{c_char, c_double};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ksection::bounds::BoundReport;
use ksection::graph::{Graph, KSection};
use ksection::ksection::{ksection_td, ksection_tree};
use ksection::treedec::TreeDecomposition;
use ksection::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KsecStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidGraph = 2,
    NotATree = 3,
    InvalidDecomposition = 4,
    OutOfRange = 5,
    /// Width, size or memory limit exceeded.
    ResourceLimit = 6,
    /// Internal invariant violated or a panic was caught.
    Internal = 7,
}

pub struct KsecGraph(Graph);

pub struct KsecTreeDecomposition(TreeDecomposition);

pub struct KsecResult {
    section: KSection,
    report: BoundReport,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> KsecStatus {
    match e {
        Error::InvalidGraph(_) | Error::Parse { .. } => KsecStatus::InvalidGraph,
        Error::NotATree | Error::NotAForest => KsecStatus::NotATree,
        Error::InvalidDecomposition(_) | Error::RedundantDecomposition(_) => KsecStatus::InvalidDecomposition,
        Error::WidthTooLarge { .. } | Error::TooLarge { .. } | Error::MemoryLimit { .. } => KsecStatus::ResourceLimit,
        Error::Internal(_) => KsecStatus::Internal,
        _ => KsecStatus::OutOfRange,
    }
}

/// Runs `f`, recording the error message and mapping panics to `Internal`.
fn guard(f: impl FnOnce() -> Result<(), KsecStatus>) -> KsecStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KsecStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("panic inside ksection".into());
            KsecStatus::Internal
        }
    }
}

fn fail(e: Error) -> KsecStatus {
    let status = status_of(&e);
    set_error(e.to_string());
    status
}

fn null(what: &str) -> KsecStatus {
    set_error(format!("{what} is null"));
    KsecStatus::NullPointer
}

/// # Safety
/// `p` must be null or point to `len` readable values.
unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], KsecStatus> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len - 1` bytes) and returns the full message length.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ksec_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Builds a graph on `n` vertices from `m` edges given as `2m` 1-based ids.
///
/// # Safety
/// `edges` must point to `2 * m` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ksec_graph_new(n: usize, edges: *const usize, m: usize, out: *mut *mut KsecGraph) -> KsecStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let flat = slice(edges, 2 * m, "edges")?;
        let g = Graph::from_one_based(n, flat.chunks_exact(2).map(|e| (e[0], e[1]))).map_err(fail)?;
        *out = Box::into_raw(Box::new(KsecGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or come from [`ksec_graph_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ksec_graph_free(g: *mut KsecGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn ksec_graph_vertex_count(g: *const KsecGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Builds a tree decomposition. Bag `i` holds `bag_sizes[i]` 1-based vertex
/// ids, stored back to back in `bag_vertices`; `tree_edges` holds
/// `2 * edge_count` 1-based bag ids.
///
/// # Safety
/// All arrays must have the stated lengths and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ksec_td_new(
    bag_count: usize,
    bag_sizes: *const usize,
    bag_vertices: *const usize,
    tree_edges: *const usize,
    edge_count: usize,
    out: *mut *mut KsecTreeDecomposition,
) -> KsecStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let sizes = slice(bag_sizes, bag_count, "bag_sizes")?;
        let total = sizes.iter().sum();
        let flat = slice(bag_vertices, total, "bag_vertices")?;
        let mut bags = Vec::with_capacity(bag_count);
        let mut at = 0;
        for &s in sizes {
            let bag: Vec<usize> = flat[at..at + s].to_vec();
            if bag.contains(&0) {
                set_error("vertex id 0 in a bag; ids are 1-based".into());
                return Err(KsecStatus::OutOfRange);
            }
            bags.push(bag.into_iter().map(|v| v - 1).collect());
            at += s;
        }
        let edges = slice(tree_edges, 2 * edge_count, "tree_edges")?;
        let mut pairs = Vec::with_capacity(edge_count);
        for e in edges.chunks_exact(2) {
            if e[0] == 0 || e[1] == 0 {
                set_error("bag id 0 in a tree edge; ids are 1-based".into());
                return Err(KsecStatus::OutOfRange);
            }
            pairs.push((e[0] - 1, e[1] - 1));
        }
        let td = TreeDecomposition::new(bags, &pairs).map_err(fail)?;
        *out = Box::into_raw(Box::new(KsecTreeDecomposition(td)));
        Ok(())
    })
}

/// # Safety
/// `td` must be null or come from [`ksec_td_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ksec_td_free(td: *mut KsecTreeDecomposition) {
    if !td.is_null() {
        drop(Box::from_raw(td));
    }
}

/// k-section of a tree.
///
/// # Safety
/// `tree` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ksec_ksection_tree(tree: *const KsecGraph, k: usize, out: *mut *mut KsecResult) -> KsecStatus {
    guard(|| {
        let tree = tree.as_ref().ok_or_else(|| null("tree"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let (section, report) = ksection_tree(&tree.0, k).map_err(fail)?;
        *out = Box::into_raw(Box::new(KsecResult { section, report }));
        Ok(())
    })
}

/// k-section of a graph with a tree decomposition.
///
/// # Safety
/// `g` and `td` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ksec_ksection_td(
    g: *const KsecGraph,
    td: *const KsecTreeDecomposition,
    k: usize,
    out: *mut *mut KsecResult,
) -> KsecStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("g"))?;
        let td = td.as_ref().ok_or_else(|| null("td"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let (section, report) = ksection_td(&g.0, &td.0, k).map_err(fail)?;
        *out = Box::into_raw(Box::new(KsecResult { section, report }));
        Ok(())
    })
}

/// # Safety
/// `r` must be null or come from a `ksec_ksection_*` call.
#[no_mangle]
pub unsafe extern "C" fn ksec_result_free(r: *mut KsecResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of edges between different parts.
///
/// # Safety
/// `r` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ksec_result_width(r: *const KsecResult) -> usize {
    r.as_ref().map_or(0, |r| r.section.width)
}

/// # Safety
/// `r` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ksec_result_part_count(r: *const KsecResult) -> usize {
    r.as_ref().map_or(0, |r| r.section.parts.len())
}

/// 1 if the width is within every applicable bound, else 0.
///
/// # Safety
/// `r` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ksec_result_within_bounds(r: *const KsecResult) -> i32 {
    r.as_ref().map_or(0, |r| r.report.within_bounds as i32)
}

/// Smallest applicable bound, or NaN if none applies.
///
/// # Safety
/// `r` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn ksec_result_bound(r: *const KsecResult) -> c_double {
    r.as_ref().and_then(|r| r.report.binding_bound()).unwrap_or(f64::NAN)
}

/// Copies the vertices of part `part` (1-based) into `buf` when `len` is
/// large enough, and stores the part size in `size`.
///
/// # Safety
/// `r` must be a live result handle, `buf` must have room for `len` values
/// and `size` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ksec_result_part(
    r: *const KsecResult,
    part: usize,
    buf: *mut usize,
    len: usize,
    size: *mut usize,
) -> KsecStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("result"))?;
        if size.is_null() {
            return Err(null("size"));
        }
        let parts = &r.section.parts;
        if part == 0 || part > parts.len() {
            set_error(format!("part {part} outside 1..={}", parts.len()));
            return Err(KsecStatus::OutOfRange);
        }
        let vs = &parts[part - 1];
        *size = vs.len();
        if len >= vs.len() && !vs.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            for (i, &v) in vs.iter().enumerate() {
                *buf.add(i) = v + 1;
            }
        }
        Ok(())
    })
}
