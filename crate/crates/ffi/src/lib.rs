//! C ABI over `wordrep`.
//!
//! Graphs and representations are opaque heap handles; every fallible call
//! returns a [`WrStatus`] and leaves a message retrievable with
//! [`wr_last_error`]. Strings handed out by the library must be released
//! with [`wr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wordrep::io::{self, OutputFormat};
use wordrep::oracle::{self, OracleBudget, OracleError};
use wordrep::relabel::{represent_bipartite, represent_graph, OrderingPolicy, RelabelError};
use wordrep::{words, Graph, Representation};

/// Status codes; the nonzero values line up with the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WrStatus {
    Ok = 0,
    InvalidInput = 1,
    NotBipartite = 2,
    VerificationFailed = 3,
    BudgetExceeded = 4,
    NullPointer = 6,
    Internal = 7,
}

/// Opaque graph handle.
pub struct WrGraph(Graph);

/// Opaque handle to a verified representation.
pub struct WrRepresentation(Representation);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Fail(WrStatus, String);

impl From<RelabelError> for Fail {
    fn from(e: RelabelError) -> Self {
        let status = match e {
            RelabelError::NotBipartite(_) => WrStatus::NotBipartite,
            RelabelError::VerificationFailed(_) => WrStatus::VerificationFailed,
            _ => WrStatus::InvalidInput,
        };
        Fail(status, e.to_string())
    }
}

impl From<OracleError> for Fail {
    fn from(e: OracleError) -> Self {
        let status = match e {
            OracleError::BudgetExceeded { .. }
            | OracleError::TooLarge { .. }
            | OracleError::ExceedsMaxK { .. } => WrStatus::BudgetExceeded,
            OracleError::NotBipartite(..) => WrStatus::NotBipartite,
            _ => WrStatus::InvalidInput,
        };
        Fail(status, e.to_string())
    }
}

// The message is cleared on entry so a successful call may still leave one,
// as wr_verify does with its mismatch report.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> WrStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => WrStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            WrStatus::Internal
        }
    }
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(WrStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(WrStatus::InvalidInput, format!("{what} is not UTF-8")))
}

fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    // SAFETY: callers pass handles obtained from this library.
    unsafe { p.as_ref() }.ok_or_else(|| Fail(WrStatus::NullPointer, format!("{what} is null")))
}

fn out_arg<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(WrStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message describing the last failed call on this thread, or null. Valid
/// until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn wr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn wr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an edge list into a new graph handle.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn wr_graph_parse(text: *const c_char, out: *mut *mut WrGraph) -> WrStatus {
    guard(|| {
        out_arg(out, "out")?;
        let text = str_arg(text, "text")?;
        let g =
            io::parse_edge_list(text).map_err(|e| Fail(WrStatus::InvalidInput, e.to_string()))?;
        *out = Box::into_raw(Box::new(WrGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` is null or a handle from [`wr_graph_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wr_graph_free(g: *mut WrGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
#[no_mangle]
pub extern "C" fn wr_graph_vertex_count(g: *const WrGraph) -> usize {
    ref_arg(g, "graph").map_or(0, |g| g.0.len())
}

#[no_mangle]
pub extern "C" fn wr_graph_edge_count(g: *const WrGraph) -> usize {
    ref_arg(g, "graph").map_or(0, |g| g.0.edge_count())
}

/// Builds a verified representation. `policy` may be null for the default
/// ordering. Without `allow_isolated` isolated vertices are left out of the
/// word.
///
/// # Safety
/// `g` is a live graph handle, `policy` null or NUL-terminated, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn wr_represent(
    g: *const WrGraph,
    policy: *const c_char,
    allow_isolated: bool,
    out: *mut *mut WrRepresentation,
) -> WrStatus {
    guard(|| {
        out_arg(out, "out")?;
        let g = &ref_arg(g, "graph")?.0;
        let policy: OrderingPolicy = if policy.is_null() {
            OrderingPolicy::default()
        } else {
            str_arg(policy, "policy")?.parse()?
        };
        let rep = if allow_isolated {
            represent_graph(g, &policy)?
        } else {
            let (core, _) = g
                .split_isolated()
                .map_err(|e| Fail(WrStatus::InvalidInput, e.to_string()))?;
            represent_bipartite(&core, &policy)?
        };
        *out = Box::into_raw(Box::new(WrRepresentation(rep)));
        Ok(())
    })
}

/// # Safety
/// `r` is null or a live representation handle.
#[no_mangle]
pub unsafe extern "C" fn wr_representation_free(r: *mut WrRepresentation) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of nonempty permutations in the word, or 0 for a null handle.
#[no_mangle]
pub extern "C" fn wr_representation_perm_count(r: *const WrRepresentation) -> usize {
    ref_arg(r, "representation").map_or(0, |r| r.0.perm_count)
}

/// The word as space-separated labels; free with [`wr_string_free`].
#[no_mangle]
pub extern "C" fn wr_representation_word(r: *const WrRepresentation) -> *mut c_char {
    match ref_arg(r, "representation") {
        Ok(r) => into_c_string(r.0.word.to_string()),
        Err(Fail(_, msg)) => {
            set_error(msg);
            ptr::null_mut()
        }
    }
}

/// The JSON result document; free with [`wr_string_free`].
#[no_mangle]
pub extern "C" fn wr_representation_json(r: *const WrRepresentation) -> *mut c_char {
    let doc = ref_arg(r, "representation").and_then(|r| {
        io::emit_result(&r.0, OutputFormat::Json)
            .map_err(|e| Fail(WrStatus::VerificationFailed, e.to_string()))
    });
    match doc {
        Ok(s) => into_c_string(s),
        Err(Fail(_, msg)) => {
            set_error(msg);
            ptr::null_mut()
        }
    }
}

/// Checks whether the whitespace-separated `word` represents `g`. On a
/// mismatch `*out_ok` is false and [`wr_last_error`] describes it.
///
/// # Safety
/// `g` is a live graph handle, `word` NUL-terminated, `out_ok` writable.
#[no_mangle]
pub unsafe extern "C" fn wr_verify(
    g: *const WrGraph,
    word: *const c_char,
    out_ok: *mut bool,
) -> WrStatus {
    guard(|| {
        out_arg(out_ok, "out_ok")?;
        let g = &ref_arg(g, "graph")?.0;
        let word = io::parse_word(str_arg(word, "word")?);
        let report = words::verify(&word, g);
        if !report.ok {
            set_error(report.to_string());
        }
        *out_ok = report.ok;
        Ok(())
    })
}

/// Exact permutation representation number by exhaustive search. Zero
/// limits select the defaults (6 vertices, k <= 3).
///
/// # Safety
/// `g` is a live graph handle, `out_k` writable.
#[no_mangle]
pub unsafe extern "C" fn wr_min_perm_representation(
    g: *const WrGraph,
    max_k: usize,
    max_candidates: u64,
    out_k: *mut usize,
) -> WrStatus {
    guard(|| {
        out_arg(out_k, "out_k")?;
        let g = &ref_arg(g, "graph")?.0;
        let defaults = OracleBudget::permutations();
        let budget = OracleBudget::new(
            defaults.max_vertices,
            if max_k == 0 { defaults.max_k } else { max_k },
            if max_candidates == 0 {
                defaults.max_candidates
            } else {
                max_candidates
            },
        )?;
        *out_k = oracle::min_perm_representation(g, &budget)?.k;
        Ok(())
    })
}
