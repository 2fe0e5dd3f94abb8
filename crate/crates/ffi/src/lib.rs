//! C interface to `groupbell`.
//!
//! Scenarios are opaque handles created by `gb_scenario_from_registry` or
//! `gb_scenario_from_json` and released with `gb_scenario_free`. Every
//! fallible call returns a `GbStatus`; on failure `gb_last_error_message`
//! describes the error. Strings returned by the library are freed with
//! `gb_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use groupbell::bounds::{classical_bound, quantum_maximum, QuantumMethod};
use groupbell::config::{parse_scenario, LoadedScenario, ScenarioConfig};
use groupbell::document::analyze;
use groupbell::games::QuestionPolicy;
use groupbell::registry;
use groupbell::Error;
use serde_json::Value;

/// Opaque scenario handle.
pub struct GbScenario {
    raw: Value,
    config: ScenarioConfig,
    loaded: LoadedScenario,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed input; the message names the offending JSON pointer.
    Schema = 3,
    UnknownScenario = 4,
    UnusableInitialState = 5,
    BufferTooSmall = 6,
    SearchSpaceTooLarge = 7,
    MethodUnavailable = 8,
    /// Any other library error.
    Failed = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GbMethod {
    Dense = 0,
    Gram = 1,
    Symmetry = 2,
    All = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GbGame {
    None = 0,
    Restricted = 1,
    Full = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbShape {
    pub parties: usize,
    pub observables: usize,
    pub outcomes: usize,
    pub local_dim: usize,
    pub joint_dim: usize,
    pub group_order: usize,
    pub event_count: usize,
}

impl From<GbMethod> for QuantumMethod {
    fn from(m: GbMethod) -> Self {
        match m {
            GbMethod::Dense => QuantumMethod::Dense,
            GbMethod::Gram => QuantumMethod::Gram,
            GbMethod::Symmetry => QuantumMethod::Symmetry,
            GbMethod::All => QuantumMethod::All,
        }
    }
}

impl From<GbGame> for Option<QuestionPolicy> {
    fn from(g: GbGame) -> Self {
        match g {
            GbGame::None => None,
            GbGame::Restricted => Some(QuestionPolicy::Restricted),
            GbGame::Full => Some(QuestionPolicy::Full),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn status_of(err: &Error) -> GbStatus {
    match err {
        Error::Schema { .. } => GbStatus::Schema,
        Error::UnknownScenario(_) => GbStatus::UnknownScenario,
        Error::UnusableInitialState(_) => GbStatus::UnusableInitialState,
        Error::SearchSpaceTooLarge { .. } => GbStatus::SearchSpaceTooLarge,
        Error::MethodUnavailable { .. } => GbStatus::MethodUnavailable,
        _ => GbStatus::Failed,
    }
}

fn error_text(err: &Error) -> String {
    match err {
        Error::Schema { pointer, message } => format!("{pointer}: {message}"),
        other => other.to_string(),
    }
}

/// Runs `body`, recording errors and converting panics to `Panic`.
fn guard(body: impl FnOnce() -> Result<(), (GbStatus, String)>) -> GbStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            GbStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GbStatus::Panic
        }
    }
}

fn lib_err(err: Error) -> (GbStatus, String) {
    (status_of(&err), error_text(&err))
}

fn null(what: &str) -> (GbStatus, String) {
    (GbStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (GbStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (GbStatus::InvalidUtf8, format!("`{what}`: {e}")))
}

unsafe fn handle<'a>(s: *const GbScenario) -> Result<&'a GbScenario, (GbStatus, String)> {
    s.as_ref().ok_or_else(|| null("scenario"))
}

fn into_handle(raw: Value, config: ScenarioConfig) -> Result<*mut GbScenario, (GbStatus, String)> {
    let loaded = config.load().map_err(lib_err)?;
    Ok(Box::into_raw(Box::new(GbScenario { raw, config, loaded })))
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, empty after a success.
/// Valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn gb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds one of the registry scenarios (`intro-z4`, `three-party-z6`,
/// `d3`, `z6-qubit`, `d6`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gb_scenario_from_registry(name: *const c_char, out: *mut *mut GbScenario) -> GbStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let entry = registry::lookup(read_str(name, "name")?).map_err(lib_err)?;
        let config = entry.config();
        *out = into_handle(config.to_value(), config)?;
        Ok(())
    })
}

/// Parses a scenario file's contents.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gb_scenario_from_json(json: *const c_char, out: *mut *mut GbScenario) -> GbStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let (raw, config) = parse_scenario(read_str(json, "json")?).map_err(lib_err)?;
        *out = into_handle(raw, config)?;
        Ok(())
    })
}

/// Releases a scenario; null is ignored.
///
/// # Safety
/// `scenario` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gb_scenario_free(scenario: *mut GbScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// # Safety
/// `scenario` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gb_scenario_shape(scenario: *const GbScenario, out: *mut GbShape) -> GbStatus {
    guard(|| {
        let s = &handle(scenario)?.loaded.scenario;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = GbShape {
            parties: s.parties(),
            observables: s.observables(),
            outcomes: s.outcomes(),
            local_dim: s.local_dim(),
            joint_dim: s.joint_dim(),
            group_order: s.group_order(),
            event_count: s.coefficients().len(),
        };
        Ok(())
    })
}

/// Classical bound `S_c`.
///
/// # Safety
/// `scenario` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gb_classical_bound(scenario: *const GbScenario, out: *mut u64) -> GbStatus {
    guard(|| {
        let s = &handle(scenario)?.loaded.scenario;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = classical_bound(s).map_err(lib_err)?.value;
        Ok(())
    })
}

/// Quantum maximum `S_q` by the given route.
///
/// # Safety
/// `scenario` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gb_quantum_value(scenario: *const GbScenario, method: GbMethod, out: *mut f64) -> GbStatus {
    guard(|| {
        let s = &handle(scenario)?.loaded.scenario;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = quantum_maximum(s, method.into()).map_err(lib_err)?.value;
        Ok(())
    })
}

/// Writes the optimal state's amplitudes into `re` and `im`, each of length
/// `capacity`, and its dimension into `written`. With too small a buffer
/// nothing is copied, `written` receives the needed length and
/// `BufferTooSmall` is returned.
///
/// # Safety
/// `re` and `im` must hold `capacity` doubles; `written` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gb_optimal_state(
    scenario: *const GbScenario,
    method: GbMethod,
    re: *mut f64,
    im: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> GbStatus {
    guard(|| {
        let s = &handle(scenario)?.loaded.scenario;
        let written = written.as_mut().ok_or_else(|| null("written"))?;
        let state = quantum_maximum(s, method.into()).map_err(lib_err)?.optimal_state;
        *written = state.dim();
        if capacity < state.dim() {
            return Err((
                GbStatus::BufferTooSmall,
                format!("need {} entries, have {capacity}", state.dim()),
            ));
        }
        if re.is_null() || im.is_null() {
            return Err(null("re/im"));
        }
        for (i, z) in state.entries().iter().enumerate() {
            *re.add(i) = z.re;
            *im.add(i) = z.im;
        }
        Ok(())
    })
}

/// Full result document as JSON. Free the string with `gb_string_free`.
///
/// # Safety
/// `scenario` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gb_result_json(
    scenario: *const GbScenario,
    method: GbMethod,
    game: GbGame,
    out: *mut *mut c_char,
) -> GbStatus {
    guard(|| {
        let h = handle(scenario)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let doc = analyze(&h.raw, &h.config, method.into(), game.into()).map_err(lib_err)?;
        let text = CString::new(doc.to_json_pretty()).expect("JSON has no NUL");
        *out = text.into_raw();
        Ok(())
    })
}

/// Releases a string returned by the library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
