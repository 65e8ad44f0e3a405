//! C ABI over the `erconn` library.
//!
//! Every fallible function returns an [`ErconnStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! read with [`erconn_last_error_message`]. Graphs cross the boundary as the
//! opaque [`ErconnGraph`] handle, released with [`erconn_graph_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use erconn::analytic::eigenvalue_moment;
use erconn::bounds::{self, NMinForm, ProbabilityStatus};
use erconn::graph::{is_connected_bfs, laplacian, union_graphs};
use erconn::montecarlo::{run_mc, trial_union, McConfig};
use erconn::spectral::{self, line_graph_lambda_min};
use erconn::{Error, GraphSample, ModelParams};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErconnStatus {
    Ok = 0,
    InvalidArgument = 1,
    Domain = 2,
    BelowNMin = 3,
    Capability = 4,
    NoConvergence = 5,
    NullPointer = 6,
    Panic = 7,
    Io = 8,
}

/// Which closed form of `N_min` to evaluate.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErconnNMinForm {
    Conservative = 0,
    Tight = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ErconnNMin {
    pub exact_real: f64,
    pub rounded_up: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ErconnProbabilityBound {
    pub value: f64,
    pub theta: f64,
    /// False when the lower bound on `E[lambda2]` is zero and `value` is 0.
    pub certified: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ErconnMcResult {
    pub trials: u64,
    pub mean_lambda2: f64,
    pub var_lambda2: f64,
    pub std_error_mean: f64,
    pub prob_connected: f64,
    pub prob_ge_lambda_min: f64,
    pub wilson_connected_low: f64,
    pub wilson_connected_high: f64,
    pub wilson_ge_lambda_min_low: f64,
    pub wilson_ge_lambda_min_high: f64,
    pub ci_reliable: bool,
}

/// Opaque graph handle.
pub struct ErconnGraph {
    inner: GraphSample,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ErconnStatus {
    match e {
        Error::InvalidParameter(_)
        | Error::DimensionMismatch { .. }
        | Error::NotSymmetric(_)
        | Error::Parse { .. } => ErconnStatus::InvalidArgument,
        Error::Domain(_) => ErconnStatus::Domain,
        Error::BelowNMin { .. } => ErconnStatus::BelowNMin,
        Error::Capability(_) => ErconnStatus::Capability,
        Error::NoConvergence(_) => ErconnStatus::NoConvergence,
        Error::Io(_) => ErconnStatus::Io,
    }
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), ErconnStatusError>) -> ErconnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ErconnStatus::Ok,
        Ok(Err(ErconnStatusError(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            ErconnStatus::Panic
        }
    }
}

struct ErconnStatusError(ErconnStatus, String);

impl From<Error> for ErconnStatusError {
    fn from(e: Error) -> Self {
        Self(status_of(&e), e.to_string())
    }
}

fn null(name: &str) -> ErconnStatusError {
    ErconnStatusError(ErconnStatus::NullPointer, format!("{name} is NULL"))
}

/// Writes `value` through `out`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
unsafe fn write<T>(out: *mut T, name: &str, value: T) -> Result<(), ErconnStatusError> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

/// Message for the most recent failure on this thread, or NULL if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn erconn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn erconn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Minimum union size `N_min(n, p)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn erconn_n_min(
    n: usize,
    p: f64,
    form: ErconnNMinForm,
    out: *mut ErconnNMin,
) -> ErconnStatus {
    guard(|| {
        let form = match form {
            ErconnNMinForm::Conservative => NMinForm::Conservative,
            ErconnNMinForm::Tight => NMinForm::Tight,
        };
        let m = bounds::n_min_with(ModelParams::new(n, p)?, form)?;
        write(
            out,
            "out",
            ErconnNMin {
                exact_real: m.exact_real,
                rounded_up: m.rounded_up,
            },
        )
    })
}

/// Large-`n` limit `-ln 3 / ln(1 - p)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn erconn_n_min_asymptotic(p: f64, out: *mut f64) -> ErconnStatus {
    guard(|| write(out, "out", bounds::n_min_asymptotic(p)?))
}

/// Lower bound on `P[lambda2 >= lambda_min]` for a union of `union_size`
/// samples. Fails with `BelowNMin` when `union_size < N_min`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn erconn_probability_bound(
    n: usize,
    p: f64,
    union_size: u64,
    out: *mut ErconnProbabilityBound,
) -> ErconnStatus {
    guard(|| {
        let b = bounds::connectivity_probability_bound(ModelParams::new(n, p)?, union_size)?;
        write(
            out,
            "out",
            ErconnProbabilityBound {
                value: b.value,
                theta: b.theta,
                certified: b.status == ProbabilityStatus::Certified,
            },
        )
    })
}

/// Bounds on `E[lambda2]` for the union.
///
/// # Safety
/// `lower` and `upper` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn erconn_expected_lambda2_bounds(
    n: usize,
    p: f64,
    union_size: u64,
    lower: *mut f64,
    upper: *mut f64,
) -> ErconnStatus {
    guard(|| {
        let u = bounds::union_effective_params(ModelParams::new(n, p)?, union_size)?;
        let (lo, hi) = bounds::expected_lambda2_bounds(&u);
        write(lower, "lower", lo)?;
        write(upper, "upper", hi)
    })
}

/// Bounds on `Var[lambda2]` for the union.
///
/// # Safety
/// `lower` and `upper` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn erconn_variance_bounds(
    n: usize,
    p: f64,
    union_size: u64,
    lower: *mut f64,
    upper: *mut f64,
) -> ErconnStatus {
    guard(|| {
        let u = bounds::union_effective_params(ModelParams::new(n, p)?, union_size)?;
        let v = bounds::lambda2_variance_bounds(&u);
        write(lower, "lower", v.lower)?;
        write(upper, "upper", v.upper)
    })
}

/// `E[l_i^k]` for a non-trivial Laplacian eigenvalue (`i >= 2`), `k` in `1..=4`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn erconn_eigenvalue_moment(
    n: usize,
    p: f64,
    k: u32,
    out: *mut f64,
) -> ErconnStatus {
    guard(|| write(out, "out", eigenvalue_moment(ModelParams::new(n, p)?, k)?))
}

/// `lambda2` of the path graph on `n >= 2` nodes.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn erconn_line_graph_lambda_min(n: usize, out: *mut f64) -> ErconnStatus {
    guard(|| {
        if n < 2 {
            return Err(ErconnStatusError(
                ErconnStatus::InvalidArgument,
                format!("n must be at least 2, got {n}"),
            ));
        }
        write(out, "out", line_graph_lambda_min(n))
    })
}

fn into_handle(g: GraphSample) -> *mut ErconnGraph {
    Box::into_raw(Box::new(ErconnGraph { inner: g }))
}

/// # Safety
/// `g` must be NULL or a live handle.
unsafe fn graph_ref<'a>(g: *const ErconnGraph) -> Result<&'a GraphSample, ErconnStatusError> {
    g.as_ref().map(|h| &h.inner).ok_or_else(|| null("graph"))
}

/// Samples the union of `union_size` independent `G(n, p)` graphs. The same
/// `(n, p, union_size, seed)` gives the same graph as `erconn sample`.
///
/// # Safety
/// `out` must be valid for writes. The handle written there must be released
/// with [`erconn_graph_free`].
#[no_mangle]
pub unsafe extern "C" fn erconn_graph_sample(
    n: usize,
    p: f64,
    union_size: u64,
    seed: u64,
    out: *mut *mut ErconnGraph,
) -> ErconnStatus {
    guard(|| {
        let config = McConfig::new(ModelParams::new(n, p)?, union_size, 1, seed);
        config.validate()?;
        if out.is_null() {
            return Err(null("out"));
        }
        write(out, "out", into_handle(trial_union(&config, 0)))
    })
}

/// Builds a graph from `edge_count` pairs stored flat in `edges`
/// (`edges[2k]`, `edges[2k + 1]`).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (it may be NULL
/// when `edge_count` is 0) and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn erconn_graph_from_edges(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut ErconnGraph,
) -> ErconnStatus {
    guard(|| {
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let g = GraphSample::from_edges(n, flat.chunks_exact(2).map(|c| (c[0], c[1])))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write(out, "out", into_handle(g))
    })
}

/// Edge-wise union of two graphs on the same node set.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn erconn_graph_union(
    a: *const ErconnGraph,
    b: *const ErconnGraph,
    out: *mut *mut ErconnGraph,
) -> ErconnStatus {
    guard(|| {
        let g = union_graphs(&[graph_ref(a)?.clone(), graph_ref(b)?.clone()])?;
        if out.is_null() {
            return Err(null("out"));
        }
        write(out, "out", into_handle(g))
    })
}

/// Number of nodes, or 0 for a NULL handle.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn erconn_graph_node_count(g: *const ErconnGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.n())
}

/// Number of edges, or 0 for a NULL handle.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn erconn_graph_edge_count(g: *const ErconnGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.edge_count())
}

/// Second-smallest Laplacian eigenvalue.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn erconn_graph_lambda2(
    g: *const ErconnGraph,
    out: *mut f64,
) -> ErconnStatus {
    guard(|| {
        let g = graph_ref(g)?;
        write(out, "out", spectral::lambda2(&laplacian(g))?)
    })
}

/// Graph connectivity by breadth-first search.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn erconn_graph_is_connected(
    g: *const ErconnGraph,
    out: *mut bool,
) -> ErconnStatus {
    guard(|| {
        let g = graph_ref(g)?;
        write(out, "out", is_connected_bfs(g))
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `g` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn erconn_graph_free(g: *mut ErconnGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Monte-Carlo estimate over `trials` sampled unions.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn erconn_mc_run(
    n: usize,
    p: f64,
    union_size: u64,
    trials: u64,
    seed: u64,
    workers: usize,
    out: *mut ErconnMcResult,
) -> ErconnStatus {
    guard(|| {
        let config =
            McConfig::new(ModelParams::new(n, p)?, union_size, trials, seed).with_workers(workers);
        let e = run_mc(&config)?;
        write(
            out,
            "out",
            ErconnMcResult {
                trials: e.trials,
                mean_lambda2: e.mean_lambda2,
                var_lambda2: e.var_lambda2,
                std_error_mean: e.std_error_mean,
                prob_connected: e.prob_connected,
                prob_ge_lambda_min: e.prob_ge_lambda_min,
                wilson_connected_low: e.wilson_connected[0],
                wilson_connected_high: e.wilson_connected[1],
                wilson_ge_lambda_min_low: e.wilson_ge_lambda_min[0],
                wilson_ge_lambda_min_high: e.wilson_ge_lambda_min[1],
                ci_reliable: e.ci_reliable,
            },
        )
    })
}
