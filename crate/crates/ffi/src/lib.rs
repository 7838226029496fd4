//! C ABI over the power-cograph toolkit. Groups are opaque handles; every
//! fallible call returns a [`PcgStatus`] and stores a message retrievable via
//! [`pcg_last_error_message`]. Strings returned through out-parameters are
//! heap-allocated and must be released with [`pcg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use pcg_core::criteria::VerdictTag;
use pcg_core::groups::{build_group, parse_spec, FiniteGroup};
use pcg_core::numtheory::classify_nice;
use pcg_core::powergraph::{
    derived_graph, directed_power_graph, p2_restriction, power_graph, DerivedKind,
};
use pcg_core::report::{run_check, Method};
use pcg_core::PcgError;

/// Opaque handle to a fully enumerated finite group.
pub struct PcgGroup {
    inner: FiniteGroup,
}

/// Status of an FFI call. Values 2, 3 and 4 match the CLI exit-code contract.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcgStatus {
    Ok = 0,
    /// Bad spec text, parameter or option.
    Usage = 2,
    /// The group order exceeds the element cap.
    CapExceeded = 3,
    /// Cross-check failure: routes disagree or an internal invariant broke.
    Internal = 4,
    /// A required pointer argument was null.
    NullArgument = 5,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 6,
}

/// Verdict of a check.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PcgVerdict {
    IsCograph = 0,
    NotCograph = 1,
    Unknown = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &PcgError) -> PcgStatus {
    set_last_error(err.to_string());
    match err.exit_code() {
        2 => PcgStatus::Usage,
        3 => PcgStatus::CapExceeded,
        _ => PcgStatus::Internal,
    }
}

fn alloc_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// # Safety
/// `s` must be null or a NUL-terminated string valid for reads.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PcgStatus> {
    if s.is_null() {
        set_last_error("null string argument".into());
        return Err(PcgStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_last_error("string argument is not valid UTF-8".into());
        PcgStatus::InvalidUtf8
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn pcg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread, or NULL if none.
/// The caller owns the returned string (free with `pcg_string_free`).
#[no_mangle]
pub extern "C" fn pcg_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match &*e.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned by a `pcg_*` function
/// that transfers string ownership, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pcg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the group described by `spec` (the same mini-language as the CLI),
/// enumerating at most `cap` elements. On success stores a handle in `*out`.
///
/// # Safety
/// `spec` must be a readable NUL-terminated string and `out` a writable
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn pcg_group_new(
    spec: *const c_char,
    cap: u64,
    out: *mut *mut PcgGroup,
) -> PcgStatus {
    if out.is_null() {
        set_last_error("null out pointer".into());
        return PcgStatus::NullArgument;
    }
    let text = match read_str(spec) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let parsed = match parse_spec(text) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    match build_group(&parsed, cap) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(PcgGroup { inner: g }));
            PcgStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Releases a group handle. NULL is ignored.
///
/// # Safety
/// `g` must be NULL or a pointer from `pcg_group_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pcg_group_free(g: *mut PcgGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of elements of the group.
///
/// # Safety
/// `g` must be a valid handle from `pcg_group_new`.
#[no_mangle]
pub unsafe extern "C" fn pcg_group_order(g: *const PcgGroup) -> u64 {
    (*g).inner.order()
}

/// Order of the element with the given index, or 0 if out of range.
///
/// # Safety
/// `g` must be a valid handle from `pcg_group_new`.
#[no_mangle]
pub unsafe extern "C" fn pcg_group_element_order(g: *const PcgGroup, index: u64) -> u64 {
    let group = &(*g).inner;
    if index >= group.order() {
        return 0;
    }
    group.element_order(index as u32)
}

/// Human-readable label of the group (caller frees).
///
/// # Safety
/// `g` must be a valid handle from `pcg_group_new`.
#[no_mangle]
pub unsafe extern "C" fn pcg_group_label(g: *const PcgGroup) -> *mut c_char {
    alloc_string((*g).inner.label().to_string())
}

/// Runs the brute and/or criterion route on a spec. `method` is "brute",
/// "criterion" or "both". On success writes the verdict to `*verdict_out`
/// and, if `report_out` is non-null, a records-format report to
/// `*report_out` (caller frees). A disagreement between routes returns
/// `Internal` with the report still written.
///
/// # Safety
/// `spec` and `method` must be readable NUL-terminated strings;
/// `verdict_out` must be writable; `report_out` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn pcg_check(
    spec: *const c_char,
    method: *const c_char,
    cap: u64,
    budget: u64,
    verdict_out: *mut PcgVerdict,
    report_out: *mut *mut c_char,
) -> PcgStatus {
    if verdict_out.is_null() {
        set_last_error("null verdict_out".into());
        return PcgStatus::NullArgument;
    }
    let spec_text = match read_str(spec) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let method_text = match read_str(method) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let method: Method = match method_text.parse() {
        Ok(m) => m,
        Err(e) => return status_of(&e),
    };
    let report = match run_check(spec_text, method, cap, budget) {
        Ok(r) => r,
        Err(e) => return status_of(&e),
    };
    let tag = report
        .routes
        .iter()
        .map(|r| r.tag)
        .find(|t| *t != VerdictTag::Unknown)
        .unwrap_or(VerdictTag::Unknown);
    *verdict_out = match tag {
        VerdictTag::IsCograph => PcgVerdict::IsCograph,
        VerdictTag::NotCograph => PcgVerdict::NotCograph,
        VerdictTag::Unknown => PcgVerdict::Unknown,
    };
    if !report_out.is_null() {
        *report_out = alloc_string(report.to_records());
    }
    if report.conflict() {
        set_last_error(format!(
            "the brute-force and criterion verdicts disagree on {spec_text}"
        ));
        return PcgStatus::Internal;
    }
    PcgStatus::Ok
}

/// Classifies a decimal natural number as prime power, product of two
/// distinct primes, neither, or unknown under the budget. Writes the class
/// rendering to `*out` (caller frees).
///
/// # Safety
/// `n_decimal` must be a readable NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pcg_nice(
    n_decimal: *const c_char,
    budget: u64,
    out: *mut *mut c_char,
) -> PcgStatus {
    if out.is_null() {
        set_last_error("null out pointer".into());
        return PcgStatus::NullArgument;
    }
    let text = match read_str(n_decimal) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let n: pcg_core::numtheory::Nat = match text.parse() {
        Ok(n) => n,
        Err(_) => {
            set_last_error(format!("'{text}' is not a natural number"));
            return PcgStatus::Usage;
        }
    };
    if n == 0u32.into() {
        set_last_error("nice requires n >= 1".into());
        return PcgStatus::Usage;
    }
    *out = alloc_string(classify_nice(&n, budget).to_string());
    PcgStatus::Ok
}

/// Exports a graph of the group in DOT or hex-row format. `kind` is one of
/// power, directed, reduced, enhanced, gk, p2; `format` is dot or hex.
/// Writes the rendering to `*out` (caller frees).
///
/// # Safety
/// `spec`, `kind` and `format` must be readable NUL-terminated strings;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pcg_graph(
    spec: *const c_char,
    kind: *const c_char,
    format: *const c_char,
    cap: u64,
    out: *mut *mut c_char,
) -> PcgStatus {
    if out.is_null() {
        set_last_error("null out pointer".into());
        return PcgStatus::NullArgument;
    }
    let (spec_text, kind_text, format_text) =
        match (read_str(spec), read_str(kind), read_str(format)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            (Err(s), _, _) | (_, Err(s), _) | (_, _, Err(s)) => return s,
        };
    let parsed = match parse_spec(spec_text) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    let group = match build_group(&parsed, cap) {
        Ok(g) => g,
        Err(e) => return status_of(&e),
    };
    let dot = match format_text {
        "dot" => true,
        "hex" => false,
        other => {
            set_last_error(format!("unknown format '{other}' (expected dot or hex)"));
            return PcgStatus::Usage;
        }
    };
    let rendered = match kind_text {
        "power" => {
            let g = power_graph(&group);
            if dot { g.to_dot() } else { g.to_hex() }
        }
        "directed" => {
            let g = directed_power_graph(&group);
            if dot { g.to_dot() } else { g.to_hex() }
        }
        "reduced" => {
            let g = derived_graph(&group, DerivedKind::Reduced);
            if dot { g.to_dot() } else { g.to_hex() }
        }
        "enhanced" => {
            let g = derived_graph(&group, DerivedKind::Enhanced);
            if dot { g.to_dot() } else { g.to_hex() }
        }
        "gk" => {
            let g = derived_graph(&group, DerivedKind::Gk);
            if dot { g.to_dot() } else { g.to_hex() }
        }
        "p2" => {
            let g = p2_restriction(&group);
            if dot { g.to_dot() } else { g.to_hex() }
        }
        other => {
            set_last_error(format!(
                "unknown kind '{other}' (expected power, directed, reduced, enhanced, gk or p2)"
            ));
            return PcgStatus::Usage;
        }
    };
    *out = alloc_string(rendered);
    PcgStatus::Ok
}
