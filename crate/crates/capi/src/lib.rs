//! C ABI over the intersection homology engine.
//!
//! Conventions: opaque handles for complexes, integer status codes for
//! errors, JSON strings (matching the CLI formats) for structured data.
//! Every `char*` returned by this library is heap-allocated and must be
//! released with `ih_string_free`; complexes with `ih_complex_free`. On a
//! non-zero status, `ih_last_error_message` returns a description of the
//! failure from the current thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use ih_core::coefficients::{CoefficientSystem, Mode, RingSpec};
use ih_core::complex::{FilteredComplex, Graph1, Simplex};
use ih_core::error::Error;
use ih_core::homology::{intersection_homology, les_check, relative_intersection_homology};
use ih_core::json::{CoefficientsJson, ComplexJson, LesJson, ResultJson, ValidationJson};
use ih_core::perversity::Perversity;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IhStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    InternalError = 5,
}

/// Opaque handle to a filtered simplicial complex.
pub struct IhComplex {
    inner: FilteredComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> IhStatus {
    match err.exit_code() {
        2 => IhStatus::ParseError,
        4 => IhStatus::InternalError,
        _ => IhStatus::ValidationError,
    }
}

fn fail(err: Error) -> IhStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

/// Message for the most recent error on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread; do not free
/// it.
#[no_mangle]
pub extern "C" fn ih_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, IhStatus> {
    if ptr.is_null() {
        set_error("null string argument".into());
        return Err(IhStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8".into());
        IhStatus::InvalidUtf8
    })
}

fn give_string(out: *mut *mut c_char, text: String) -> IhStatus {
    if out.is_null() {
        set_error("null output argument".into());
        return IhStatus::NullArgument;
    }
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            IhStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL".into());
            IhStatus::InternalError
        }
    }
}

fn give_complex(out: *mut *mut IhComplex, x: FilteredComplex) -> IhStatus {
    if out.is_null() {
        set_error("null output argument".into());
        return IhStatus::NullArgument;
    }
    unsafe { *out = Box::into_raw(Box::new(IhComplex { inner: x })) };
    IhStatus::Ok
}

unsafe fn borrow_complex<'a>(h: *const IhComplex) -> Result<&'a FilteredComplex, IhStatus> {
    if h.is_null() {
        set_error("null complex handle".into());
        return Err(IhStatus::NullArgument);
    }
    Ok(&(*h).inner)
}

/// Release a string allocated by this library.
///
/// # Safety
/// `s` must have been returned by one of the `ih_*` functions and not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn ih_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Release a complex handle.
///
/// # Safety
/// `h` must have been returned by one of the `ih_*` functions and not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn ih_complex_free(h: *mut IhComplex) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Parse a complex from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ih_complex_from_json(
    json: *const c_char,
    out: *mut *mut IhComplex,
) -> IhStatus {
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match ComplexJson::parse(text) {
        Ok(x) => give_complex(out, x),
        Err(e) => fail(e),
    }
}

/// Fetch a named builtin complex.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ih_complex_builtin(
    name: *const c_char,
    out: *mut *mut IhComplex,
) -> IhStatus {
    let name = match read_str(name) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match ih_core::builtins::builtin(name) {
        Ok(x) => give_complex(out, x),
        Err(e) => fail(e),
    }
}

/// Serialize a complex to its JSON description.
///
/// # Safety
/// `h` must be a live complex handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ih_complex_to_json(
    h: *const IhComplex,
    out: *mut *mut c_char,
) -> IhStatus {
    let x = match borrow_complex(h) {
        Ok(x) => x,
        Err(s) => return s,
    };
    give_string(out, ComplexJson::render(x))
}

/// Number of simplices (0 on a null handle).
///
/// # Safety
/// `h` must be a live complex handle or null.
#[no_mangle]
pub unsafe extern "C" fn ih_complex_size(h: *const IhComplex) -> usize {
    borrow_complex(h).map_or(0, FilteredComplex::len)
}

/// Closed cone with a fresh apex on filtration level 0.
///
/// # Safety
/// `h` must be a live complex handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ih_complex_cone(
    h: *const IhComplex,
    out: *mut *mut IhComplex,
) -> IhStatus {
    let x = match borrow_complex(h) {
        Ok(x) => x,
        Err(s) => return s,
    };
    give_complex(out, x.cone())
}

/// Suspension with two fresh apexes on filtration level 0.
///
/// # Safety
/// `h` must be a live complex handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ih_complex_suspension(
    h: *const IhComplex,
    out: *mut *mut IhComplex,
) -> IhStatus {
    let x = match borrow_complex(h) {
        Ok(x) => x,
        Err(s) => return s,
    };
    match x.suspension() {
        Ok(s) => give_complex(out, s),
        Err(e) => fail(e),
    }
}

/// First barycentric subdivision.
///
/// # Safety
/// `h` must be a live complex handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ih_complex_subdivide(
    h: *const IhComplex,
    out: *mut *mut IhComplex,
) -> IhStatus {
    let x = match borrow_complex(h) {
        Ok(x) => x,
        Err(s) => return s,
    };
    give_complex(out, x.barycentric_subdivide())
}

/// Product with a circle triangulated as a cycle on `cycle_len >= 3`
/// vertices.
///
/// # Safety
/// `h` must be a live complex handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ih_complex_product_circle(
    h: *const IhComplex,
    cycle_len: usize,
    out: *mut *mut IhComplex,
) -> IhStatus {
    let x = match borrow_complex(h) {
        Ok(x) => x,
        Err(s) => return s,
    };
    let result = Graph1::cycle(cycle_len).and_then(|g| x.product_with_graph(&g));
    match result {
        Ok(p) => give_complex(out, p),
        Err(e) => fail(e),
    }
}

/// Move the listed vertices onto filtration level 0.
///
/// # Safety
/// `h` must be a live complex handle; `vertices` must point to `len`
/// readable u32 values; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ih_complex_mark(
    h: *const IhComplex,
    vertices: *const u32,
    len: usize,
    out: *mut *mut IhComplex,
) -> IhStatus {
    let x = match borrow_complex(h) {
        Ok(x) => x,
        Err(s) => return s,
    };
    if vertices.is_null() && len > 0 {
        set_error("null vertex array".into());
        return IhStatus::NullArgument;
    }
    let vs: Vec<u32> = if len == 0 {
        Vec::new()
    } else {
        std::slice::from_raw_parts(vertices, len).to_vec()
    };
    match x.mark_points(&vs) {
        Ok(m) => give_complex(out, m),
        Err(e) => fail(e),
    }
}

/// Structural pseudomanifold report as JSON.
///
/// # Safety
/// `h` must be a live complex handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ih_complex_validate(
    h: *const IhComplex,
    out: *mut *mut c_char,
) -> IhStatus {
    let x = match borrow_complex(h) {
        Ok(x) => x,
        Err(s) => return s,
    };
    let report = ValidationJson::new(&x.validate_pseudomanifold());
    give_string(
        out,
        serde_json::to_string_pretty(&report).expect("serialization"),
    )
}

struct ComputeInputs {
    perversity: Perversity,
    system: CoefficientSystem,
    relative: Option<FilteredComplex>,
}

unsafe fn parse_inputs(
    x: &FilteredComplex,
    perversity: *const c_char,
    ring: *const c_char,
    mode: *const c_char,
    rank: usize,
    coefficients_json: *const c_char,
    relative_json: *const c_char,
) -> Result<ComputeInputs, IhStatus> {
    let perversity =
        Perversity::parse(read_str(perversity)?, x.formal_dim()).map_err(|e| fail(e))?;
    let system = if coefficients_json.is_null() {
        let ring = RingSpec::parse(read_str(ring)?).map_err(|e| fail(e))?;
        let mode = Mode::parse(read_str(mode)?).map_err(|e| fail(e))?;
        CoefficientSystem::constant(ring, mode, rank).map_err(|e| fail(e))?
    } else {
        CoefficientsJson::parse(read_str(coefficients_json)?, x).map_err(|e| fail(e))?
    };
    let relative = if relative_json.is_null() {
        None
    } else {
        let lists: Vec<Vec<u32>> = serde_json::from_str(read_str(relative_json)?)
            .map_err(|e| fail(Error::Parse(e.to_string())))?;
        let gens = lists
            .into_iter()
            .map(Simplex::new)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| fail(e))?;
        Some(x.subcomplex(&gens).map_err(|e| fail(e))?)
    };
    Ok(ComputeInputs {
        perversity,
        system,
        relative,
    })
}

/// Intersection homology as a JSON report (the CLI `compute` format).
///
/// `ring` is "Z", "Q" or "Fp:<p>"; `mode` is "g0" or "full". When
/// `coefficients_json` is non-null it overrides ring/mode/rank with a full
/// coefficient spec (transports included). When `relative_json` is
/// non-null it lists generator simplices of a subcomplex and the relative
/// groups are computed.
///
/// # Safety
/// `h` must be a live complex handle; string arguments must be
/// NUL-terminated or null as documented; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ih_compute(
    h: *const IhComplex,
    perversity: *const c_char,
    ring: *const c_char,
    mode: *const c_char,
    rank: usize,
    coefficients_json: *const c_char,
    relative_json: *const c_char,
    out: *mut *mut c_char,
) -> IhStatus {
    let x = match borrow_complex(h) {
        Ok(x) => x,
        Err(s) => return s,
    };
    let inputs = match parse_inputs(
        x,
        perversity,
        ring,
        mode,
        rank,
        coefficients_json,
        relative_json,
    ) {
        Ok(i) => i,
        Err(s) => return s,
    };
    let result = match &inputs.relative {
        Some(a) => relative_intersection_homology(x, a, &inputs.perversity, &inputs.system),
        None => intersection_homology(x, &inputs.perversity, &inputs.system),
    };
    match result {
        Ok(hres) => {
            let json = ResultJson::new(
                &hres,
                x,
                &inputs.perversity,
                &inputs.system,
                inputs.relative.is_some(),
            );
            give_string(out, json.render())
        }
        Err(e) => fail(e),
    }
}

/// Long-exact-sequence verification for the pair `(complex, subcomplex)`,
/// as a JSON report.
///
/// # Safety
/// As for `ih_compute`; `relative_json` must be non-null here.
#[no_mangle]
pub unsafe extern "C" fn ih_les_check(
    h: *const IhComplex,
    perversity: *const c_char,
    ring: *const c_char,
    mode: *const c_char,
    rank: usize,
    relative_json: *const c_char,
    out: *mut *mut c_char,
) -> IhStatus {
    let x = match borrow_complex(h) {
        Ok(x) => x,
        Err(s) => return s,
    };
    if relative_json.is_null() {
        set_error("ih_les_check needs a subcomplex".into());
        return IhStatus::NullArgument;
    }
    let inputs = match parse_inputs(x, perversity, ring, mode, rank, ptr::null(), relative_json) {
        Ok(i) => i,
        Err(s) => return s,
    };
    let a = inputs.relative.expect("checked non-null");
    match les_check(x, &a, &inputs.perversity, &inputs.system) {
        Ok(report) => give_string(
            out,
            serde_json::to_string_pretty(&LesJson::new(&report)).expect("serialization"),
        ),
        Err(e) => fail(e),
    }
}
