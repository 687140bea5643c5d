//! C ABI over `vf_core`.
//!
//! Handles are opaque. Every fallible call returns a [`VfStatus`]; on failure
//! [`vf_last_error`] describes the problem on the calling thread. Strings
//! returned by the library are owned by the caller and released with
//! [`vf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use vf_core::ci::exit_code;
use vf_core::pipeline::{frontend, Frontend, Pipeline};
use vf_core::report::{render_html, summarize, to_xml};
use vf_core::{default_configs, load_config, RuleConfig, ValidationResults, VfError};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VfStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    UnknownLanguage = 3,
    Config = 4,
    Io = 5,
    Internal = 6,
}

/// A language, its rule configuration and the creation timestamp.
pub struct VfSession {
    frontend: &'static dyn Frontend,
    configs: Vec<RuleConfig>,
    timestamp: Option<String>,
}

/// Results of one analysis.
pub struct VfResults {
    results: ValidationResults,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: VfStatus, message: impl Into<String>) -> VfStatus {
    set_error(message.into());
    status
}

fn status_of(err: &VfError) -> VfStatus {
    match err {
        VfError::UnknownLanguage(_) => VfStatus::UnknownLanguage,
        VfError::Io { .. } => VfStatus::Io,
        VfError::ConfigSyntax { .. } | VfError::UnknownRuleId(_) | VfError::UnknownProperty { .. } => VfStatus::Config,
        _ => VfStatus::Internal,
    }
}

/// Runs `f` with the error slot cleared and panics turned into `Internal`.
fn guard(f: impl FnOnce() -> VfStatus) -> VfStatus {
    clear_error();
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(VfStatus::Internal, "internal panic"))
}

/// # Safety
/// `ptr` is null or a NUL-terminated string valid for reads.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, VfStatus> {
    if ptr.is_null() {
        return Err(fail(VfStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| fail(VfStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text.replace('\0', " ")).expect("NUL bytes removed").into_raw()
}

impl VfSession {
    fn pipeline(&self) -> Result<Pipeline, VfError> {
        Pipeline::new(self.frontend, self.frontend.registry(), self.configs.clone())
    }

    fn created(&self) -> String {
        self.timestamp.clone().unwrap_or_else(|| chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string())
    }
}

fn publish(results: ValidationResults, out: *mut *mut VfResults) -> VfStatus {
    // SAFETY: callers check `out` for null before analysing.
    unsafe { *out = Box::into_raw(Box::new(VfResults { results })) };
    VfStatus::Ok
}

/// Creates a session for `language` ("minicpp" or "seqdiag") with every
/// built-in rule enabled.
///
/// # Safety
/// `language` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vf_session_new(language: *const c_char, out: *mut *mut VfSession) -> VfStatus {
    guard(|| {
        if out.is_null() {
            return fail(VfStatus::NullArgument, "out is null");
        }
        let language = match read_str(language, "language") {
            Ok(l) => l,
            Err(s) => return s,
        };
        match frontend(language) {
            Ok(frontend) => {
                let configs = default_configs(&frontend.registry());
                *out = Box::into_raw(Box::new(VfSession { frontend, configs, timestamp: None }));
                VfStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Replaces the rule configuration with the parsed `text`.
/// On failure the previous configuration is kept.
///
/// # Safety
/// `session` comes from [`vf_session_new`]; `text` is NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn vf_session_load_config(session: *mut VfSession, text: *const c_char) -> VfStatus {
    guard(|| {
        let Some(session) = session.as_mut() else { return fail(VfStatus::NullArgument, "session is null") };
        let text = match read_str(text, "config text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match load_config(text, &session.frontend.registry()) {
            Ok(configs) => {
                session.configs = configs;
                VfStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Fixes the creation timestamp of later results; null restores the clock.
///
/// # Safety
/// `session` comes from [`vf_session_new`]; `timestamp` is null or NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn vf_session_set_timestamp(session: *mut VfSession, timestamp: *const c_char) -> VfStatus {
    guard(|| {
        let Some(session) = session.as_mut() else { return fail(VfStatus::NullArgument, "session is null") };
        if timestamp.is_null() {
            session.timestamp = None;
            return VfStatus::Ok;
        }
        match read_str(timestamp, "timestamp") {
            Ok(t) => {
                session.timestamp = Some(t.to_string());
                VfStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Analyzes one in-memory unit named `file`.
///
/// # Safety
/// `session` comes from [`vf_session_new`]; `file` and `content` are
/// NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vf_session_analyze_source(
    session: *const VfSession,
    file: *const c_char,
    content: *const c_char,
    out: *mut *mut VfResults,
) -> VfStatus {
    guard(|| {
        let Some(session) = session.as_ref() else { return fail(VfStatus::NullArgument, "session is null") };
        if out.is_null() {
            return fail(VfStatus::NullArgument, "out is null");
        }
        let (file, content) = match (read_str(file, "file"), read_str(content, "content")) {
            (Ok(f), Ok(c)) => (f, c),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        match session.pipeline() {
            Ok(p) => publish(p.run_sources(&[(file.to_string(), content.to_string())], &session.created()), out),
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Reads and analyzes `count` files. Unreadable or unparseable files become
/// diagnostics in the results rather than errors.
///
/// # Safety
/// `session` comes from [`vf_session_new`]; `paths` points to `count`
/// NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn vf_session_analyze_files(
    session: *const VfSession,
    paths: *const *const c_char,
    count: usize,
    out: *mut *mut VfResults,
) -> VfStatus {
    guard(|| {
        let Some(session) = session.as_ref() else { return fail(VfStatus::NullArgument, "session is null") };
        if out.is_null() || (paths.is_null() && count > 0) {
            return fail(VfStatus::NullArgument, "out or paths is null");
        }
        let mut files = Vec::with_capacity(count);
        for i in 0..count {
            match read_str(*paths.add(i), "path") {
                Ok(p) => files.push(PathBuf::from(p)),
                Err(s) => return s,
            }
        }
        match session.pipeline() {
            Ok(p) => publish(p.run(&files, &session.created()), out),
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `session` is null or comes from [`vf_session_new`] and is not used again.
#[no_mangle]
pub unsafe extern "C" fn vf_session_free(session: *mut VfSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Total findings; 0 for a null handle.
///
/// # Safety
/// `results` is null or a live results handle.
#[no_mangle]
pub unsafe extern "C" fn vf_results_finding_count(results: *const VfResults) -> usize {
    results.as_ref().map_or(0, |r| r.results.total_findings())
}

/// Input problems (I/O, lexing, parsing, declarations); 0 for a null handle.
///
/// # Safety
/// `results` is null or a live results handle.
#[no_mangle]
pub unsafe extern "C" fn vf_results_diagnostic_count(results: *const VfResults) -> usize {
    results.as_ref().map_or(0, |r| r.results.diagnostics.len())
}

/// Process exit code for CI: 0 clean, 1 failing findings, 2 input errors.
/// Returns 2 for a null handle.
///
/// # Safety
/// `results` is null or a live results handle.
#[no_mangle]
pub unsafe extern "C" fn vf_results_exit_code(results: *const VfResults, strict: bool) -> i32 {
    results.as_ref().map_or(vf_core::ci::EXIT_ERROR, |r| exit_code(&r.results, strict))
}

/// XML document; null for a null handle. Free with [`vf_string_free`].
///
/// # Safety
/// `results` is null or a live results handle.
#[no_mangle]
pub unsafe extern "C" fn vf_results_to_xml(results: *const VfResults) -> *mut c_char {
    results.as_ref().map_or(ptr::null_mut(), |r| into_c_string(to_xml(&r.results)))
}

/// HTML report; null for a null handle. Free with [`vf_string_free`].
///
/// # Safety
/// `results` is null or a live results handle.
#[no_mangle]
pub unsafe extern "C" fn vf_results_to_html(results: *const VfResults) -> *mut c_char {
    results.as_ref().map_or(ptr::null_mut(), |r| into_c_string(render_html(&r.results, &summarize(&r.results))))
}

/// # Safety
/// `results` is null or a live results handle that is not used again.
#[no_mangle]
pub unsafe extern "C" fn vf_results_free(results: *mut VfResults) {
    if !results.is_null() {
        drop(Box::from_raw(results));
    }
}

/// # Safety
/// `s` is null or a string returned by this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn vf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn vf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
