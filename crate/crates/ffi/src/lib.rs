//! C ABI for nullkit: opaque handles for rings, grids and polynomials,
//! status codes mirroring the CLI exit classes, and JSON strings for
//! structured data. Every returned string is owned by the caller and must be
//! released with [`nk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use serde_json::Value;

use nullkit::coefficient::{coeff_formula_general, coeff_formula_main};
use nullkit::dispatch::{run_op, Limits};
use nullkit::error::Error;
use nullkit::gridcore::Grid;
use nullkit::interpolate::{interpolate_division, invert_integral};
use nullkit::json as nj;
use nullkit::multipoly::{MultiIndex, MultiPoly};
use nullkit::ring::Ring;
use nullkit::selftest;

/// Status codes; nonzero values match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NkStatus {
    /// Success.
    Ok = 0,
    /// A precondition does not hold (domain error).
    Domain = 1,
    /// Malformed input.
    Parse = 2,
    /// An identity guaranteed by a theorem failed; indicates a bug.
    Theorem = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
}

/// Grid classification constants returned by [`nk_grid_class`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NkGridClass {
    Division = 0,
    IntegralNotDivision = 1,
    AffineNotIntegral = 2,
    NotAffine = 3,
}

pub struct NkRing(Ring);
pub struct NkGrid(Grid);
pub struct NkPoly(MultiPoly);

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(err: &Error) -> NkStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(err.to_string()));
    match err {
        Error::TheoremViolated(_) => NkStatus::Theorem,
        Error::Parse(_) => NkStatus::Parse,
        _ => NkStatus::Domain,
    }
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `input` must be a valid NUL-terminated string.
unsafe fn parse_json(input: *const c_char) -> Result<Value, Error> {
    if input.is_null() {
        return Err(Error::Parse("null input pointer".into()));
    }
    let text = CStr::from_ptr(input)
        .to_str()
        .map_err(|_| Error::Parse("input is not valid UTF-8".into()))?;
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

unsafe fn write_json(out: *mut *mut c_char, v: &Value) -> NkStatus {
    if out.is_null() {
        return NkStatus::NullPointer;
    }
    *out = to_c_string(nj::to_canonical_string(v));
    NkStatus::Ok
}

/// The message of the last error on this thread, or null. Free with
/// [`nk_string_free`].
#[no_mangle]
pub extern "C" fn nk_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => to_c_string(msg.clone()),
        None => ptr::null_mut(),
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer previously returned by a nullkit function
/// that hands ownership to the caller, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a caller-owned string.
#[no_mangle]
pub extern "C" fn nk_version() -> *mut c_char {
    to_c_string(env!("CARGO_PKG_VERSION").to_string())
}

// ---------------------------------------------------------------------------
// Rings
// ---------------------------------------------------------------------------

/// Parses a ring descriptor like {"kind":"Zm","m":6}; null on error.
///
/// # Safety
/// `json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nk_ring_from_json(json: *const c_char) -> *mut NkRing {
    clear_error();
    match parse_json(json).and_then(|v| nj::ring_from_json(&v)) {
        Ok(ring) => Box::into_raw(Box::new(NkRing(ring))),
        Err(err) => {
            set_error(&err);
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `ring` must be null or a pointer from [`nk_ring_from_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nk_ring_free(ring: *mut NkRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

/// Parses a grid {"ring":…,"axes":[[…],…]} with the given point limit
/// (0 selects the default limit); null on error.
///
/// # Safety
/// `json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nk_grid_from_json(json: *const c_char, max_points: u64) -> *mut NkGrid {
    clear_error();
    let limit = if max_points == 0 {
        nullkit::gridcore::DEFAULT_MAX_GRID_POINTS
    } else {
        max_points as u128
    };
    match parse_json(json).and_then(|v| nj::grid_from_json(&v, limit)) {
        Ok(grid) => Box::into_raw(Box::new(NkGrid(grid))),
        Err(err) => {
            set_error(&err);
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `grid` must be null or a pointer from [`nk_grid_from_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nk_grid_free(grid: *mut NkGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// # Safety
/// `grid` must be a valid handle and `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn nk_grid_class(grid: *const NkGrid, out: *mut NkGridClass) -> NkStatus {
    if grid.is_null() || out.is_null() {
        return NkStatus::NullPointer;
    }
    *out = match (*grid).0.class() {
        nullkit::gridcore::GridClass::Division => NkGridClass::Division,
        nullkit::gridcore::GridClass::IntegralNotDivision => NkGridClass::IntegralNotDivision,
        nullkit::gridcore::GridClass::AffineNotIntegral => NkGridClass::AffineNotIntegral,
        nullkit::gridcore::GridClass::NotAffine => NkGridClass::NotAffine,
    };
    NkStatus::Ok
}

/// # Safety
/// `grid` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn nk_grid_num_points(grid: *const NkGrid) -> u64 {
    if grid.is_null() {
        return 0;
    }
    (*grid).0.num_points() as u64
}

/// The grid constant N as a JSON array of {point, value}.
///
/// # Safety
/// `grid` must be a valid handle and `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn nk_grid_n_json(grid: *const NkGrid, out: *mut *mut c_char) -> NkStatus {
    if grid.is_null() {
        return NkStatus::NullPointer;
    }
    write_json(out, &nj::gridmap_to_json(&(*grid).0.n_map()))
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// Parses a polynomial {"nvars":…,"ring":…,"terms":[…]}; null on error.
///
/// # Safety
/// `json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nk_poly_from_json(json: *const c_char) -> *mut NkPoly {
    clear_error();
    match parse_json(json).and_then(|v| nj::poly_from_json(&v)) {
        Ok(poly) => Box::into_raw(Box::new(NkPoly(poly))),
        Err(err) => {
            set_error(&err);
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `poly` must be null or a pointer from a nullkit constructor, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nk_poly_free(poly: *mut NkPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// # Safety
/// `poly` must be a valid handle and `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn nk_poly_to_json(poly: *const NkPoly, out: *mut *mut c_char) -> NkStatus {
    if poly.is_null() {
        return NkStatus::NullPointer;
    }
    write_json(out, &nj::poly_to_json(&(*poly).0))
}

/// Parses the univariate ASCII syntax ("X^3+X+2") over a ring handle.
///
/// # Safety
/// `ring` must be a valid handle and `text` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn nk_poly_parse_univariate(
    ring: *const NkRing,
    text: *const c_char,
) -> *mut NkPoly {
    clear_error();
    if ring.is_null() || text.is_null() {
        set_error(&Error::Parse("null pointer argument".into()));
        return ptr::null_mut();
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error(&Error::Parse("input is not valid UTF-8".into()));
            return ptr::null_mut();
        }
    };
    match nj::parse_univariate(&(*ring).0, text) {
        Ok(poly) => Box::into_raw(Box::new(NkPoly(poly))),
        Err(err) => {
            set_error(&err);
            ptr::null_mut()
        }
    }
}

// ---------------------------------------------------------------------------
// Operations on handles
// ---------------------------------------------------------------------------

unsafe fn delta_from_raw(delta: *const u32, len: usize) -> Result<MultiIndex, Error> {
    if delta.is_null() && len > 0 {
        return Err(Error::Parse("null exponent pointer".into()));
    }
    let slice = std::slice::from_raw_parts(delta, len);
    Ok(MultiIndex::new(slice.to_vec()))
}

/// P_d by the grid sum Σ N(x)^{-1}·P(x); the result is written as a JSON
/// ring element.
///
/// # Safety
/// `grid` and `poly` must be valid handles and `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn nk_coeff_main(
    grid: *const NkGrid,
    poly: *const NkPoly,
    out: *mut *mut c_char,
) -> NkStatus {
    clear_error();
    if grid.is_null() || poly.is_null() {
        return NkStatus::NullPointer;
    }
    match coeff_formula_main(&(*grid).0, &(*poly).0) {
        Ok(value) => write_json(out, &nj::element_to_json(&value)),
        Err(err) => set_error(&err),
    }
}

/// P_e for a d-leading multiindex e of length `e_len`.
///
/// # Safety
/// `grid` and `poly` must be valid handles, `e` must point to `e_len`
/// readable u32 values, and `out` must be a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn nk_coeff_general(
    grid: *const NkGrid,
    poly: *const NkPoly,
    e: *const u32,
    e_len: usize,
    out: *mut *mut c_char,
) -> NkStatus {
    clear_error();
    if grid.is_null() || poly.is_null() {
        return NkStatus::NullPointer;
    }
    let e = match delta_from_raw(e, e_len) {
        Ok(e) => e,
        Err(err) => return set_error(&err),
    };
    match coeff_formula_general(&(*grid).0, &(*poly).0, &e) {
        Ok(value) => write_json(out, &nj::element_to_json(&value)),
        Err(err) => set_error(&err),
    }
}

/// Interpolates a value table (JSON array of {point, value}) on a division
/// grid; returns a polynomial handle through `out`.
///
/// # Safety
/// `grid` must be a valid handle, `values_json` a valid NUL-terminated
/// string, and `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn nk_interpolate(
    grid: *const NkGrid,
    values_json: *const c_char,
    out: *mut *mut NkPoly,
) -> NkStatus {
    clear_error();
    if grid.is_null() || out.is_null() {
        return NkStatus::NullPointer;
    }
    let run = || -> Result<MultiPoly, Error> {
        let v = parse_json(values_json)?;
        let values = nj::gridmap_from_json(&(*grid).0, &v)?;
        interpolate_division(&(*grid).0, &values)
    };
    match run() {
        Ok(poly) => {
            *out = Box::into_raw(Box::new(NkPoly(poly)));
            NkStatus::Ok
        }
        Err(err) => set_error(&err),
    }
}

/// Reconstructs a polynomial from its values on an integral grid.
///
/// # Safety
/// `grid` and `poly` must be valid handles and `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn nk_invert(
    grid: *const NkGrid,
    poly: *const NkPoly,
    out: *mut *mut NkPoly,
) -> NkStatus {
    clear_error();
    if grid.is_null() || poly.is_null() || out.is_null() {
        return NkStatus::NullPointer;
    }
    match invert_integral(&(*grid).0, &(*poly).0) {
        Ok(result) => {
            *out = Box::into_raw(Box::new(NkPoly(result)));
            NkStatus::Ok
        }
        Err(err) => set_error(&err),
    }
}

/// Runs a named JSON operation (the CLI subcommand names, e.g. "trim",
/// "certify", "permanent", "check-cd"); the result JSON is written to `out`.
///
/// # Safety
/// `op` and `input_json` must be valid NUL-terminated strings and `out` a
/// valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn nk_run(
    op: *const c_char,
    input_json: *const c_char,
    out: *mut *mut c_char,
) -> NkStatus {
    clear_error();
    if op.is_null() {
        return NkStatus::NullPointer;
    }
    let run = || -> Result<Value, Error> {
        let op = CStr::from_ptr(op)
            .to_str()
            .map_err(|_| Error::Parse("operation name is not valid UTF-8".into()))?;
        let v = parse_json(input_json)?;
        run_op(op, &v, Limits::default())
    };
    match run() {
        Ok(value) => write_json(out, &value),
        Err(err) => set_error(&err),
    }
}

/// Runs the embedded acceptance suite; the per-criterion reports are written
/// as JSON. Returns `Theorem` when any criterion fails.
///
/// # Safety
/// `out` must be null or a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn nk_selftest(out: *mut *mut c_char) -> NkStatus {
    clear_error();
    let reports = selftest::run_all();
    let all_passed = reports.iter().all(|r| r.passed);
    let summary = serde_json::json!({
        "criteria": reports
            .iter()
            .map(|r| serde_json::json!({
                "id": r.id,
                "name": r.name,
                "pass": r.passed,
                "millis": r.millis as u64,
                "detail": r.detail,
            }))
            .collect::<Vec<_>>(),
        "pass": all_passed,
    });
    if !out.is_null() {
        *out = to_c_string(nj::to_canonical_string(&summary));
    }
    if all_passed {
        NkStatus::Ok
    } else {
        set_error(&Error::TheoremViolated("selftest failed".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take_string(ptr: *mut c_char) -> String {
        assert!(!ptr.is_null());
        let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
        nk_string_free(ptr);
        s
    }

    #[test]
    fn ring_and_poly_handles() {
        unsafe {
            let ring = nk_ring_from_json(cstr(r#"{"kind":"Zm","m":4}"#).as_ptr());
            assert!(!ring.is_null());
            let poly = nk_poly_parse_univariate(ring, cstr("X^3+X+2").as_ptr());
            assert!(!poly.is_null());
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(nk_poly_to_json(poly, &mut out), NkStatus::Ok);
            let json = take_string(out);
            assert!(json.contains(r#""exp":[3]"#), "json: {json}");
            nk_poly_free(poly);
            nk_ring_free(ring);
        }
    }

    #[test]
    fn bad_input_sets_error() {
        unsafe {
            let ring = nk_ring_from_json(cstr(r#"{"kind":"Q"}"#).as_ptr());
            assert!(ring.is_null());
            let msg = take_string(nk_last_error_message());
            assert!(msg.contains("unknown ring kind"), "msg: {msg}");
        }
    }

    #[test]
    fn grid_classification_and_constants() {
        unsafe {
            let grid = nk_grid_from_json(
                cstr(r#"{"ring":{"kind":"Zm","m":12},"axes":[[0,2]]}"#).as_ptr(),
                0,
            );
            assert!(!grid.is_null());
            let mut class = NkGridClass::Division;
            assert_eq!(nk_grid_class(grid, &mut class), NkStatus::Ok);
            assert_eq!(class, NkGridClass::AffineNotIntegral);
            assert_eq!(nk_grid_num_points(grid), 2);
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(nk_grid_n_json(grid, &mut out), NkStatus::Ok);
            let n = take_string(out);
            assert!(n.contains(r#""value":10"#), "N: {n}");
            nk_grid_free(grid);
        }
    }

    #[test]
    fn coeff_main_through_ffi() {
        unsafe {
            let grid = nk_grid_from_json(
                cstr(r#"{"ring":{"kind":"Z"},"axes":[[0,1],[0,1]]}"#).as_ptr(),
                0,
            );
            let poly = nk_poly_from_json(
                cstr(r#"{"nvars":2,"ring":{"kind":"Z"},"terms":[{"exp":[1,1],"coef":1}]}"#)
                    .as_ptr(),
            );
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(nk_coeff_main(grid, poly, &mut out), NkStatus::Ok);
            assert_eq!(take_string(out), "1");

            let mut out2: *mut c_char = ptr::null_mut();
            let e = [1u32, 1];
            assert_eq!(
                nk_coeff_general(grid, poly, e.as_ptr(), 2, &mut out2),
                NkStatus::Ok
            );
            assert_eq!(take_string(out2), "1");
            nk_poly_free(poly);
            nk_grid_free(grid);
        }
    }

    #[test]
    fn interpolate_and_invert_round_trip() {
        unsafe {
            let grid = nk_grid_from_json(
                cstr(r#"{"ring":{"kind":"Z"},"axes":[[0,1],[0,1]]}"#).as_ptr(),
                0,
            );
            let values = cstr(
                r#"[{"point":[0,0],"value":0},{"point":[0,1],"value":0},
                    {"point":[1,0],"value":0},{"point":[1,1],"value":1}]"#,
            );
            let mut poly: *mut NkPoly = ptr::null_mut();
            assert_eq!(
                nk_interpolate(grid, values.as_ptr(), &mut poly),
                NkStatus::Ok
            );
            let mut back: *mut NkPoly = ptr::null_mut();
            assert_eq!(nk_invert(grid, poly, &mut back), NkStatus::Ok);
            let mut a: *mut c_char = ptr::null_mut();
            let mut b: *mut c_char = ptr::null_mut();
            nk_poly_to_json(poly, &mut a);
            nk_poly_to_json(back, &mut b);
            assert_eq!(take_string(a), take_string(b));
            nk_poly_free(poly);
            nk_poly_free(back);
            nk_grid_free(grid);
        }
    }

    #[test]
    fn run_dispatches_named_operations() {
        unsafe {
            let mut out: *mut c_char = ptr::null_mut();
            let status = nk_run(
                cstr("check-cd").as_ptr(),
                cstr(r#"{"p":5,"a":[0,1],"b":[0,1]}"#).as_ptr(),
                &mut out,
            );
            assert_eq!(status, NkStatus::Ok);
            assert_eq!(take_string(out), r#"{"bound":3,"ok":true,"sumsetSize":3}"#);

            // domain error surfaces as a status and a message
            let mut out2: *mut c_char = ptr::null_mut();
            let status = nk_run(
                cstr("check-cd").as_ptr(),
                cstr(r#"{"p":6,"a":[0],"b":[0]}"#).as_ptr(),
                &mut out2,
            );
            assert_eq!(status, NkStatus::Domain);
            let msg = take_string(nk_last_error_message());
            assert!(msg.contains("not prime"), "msg: {msg}");
        }
    }

    #[test]
    fn null_pointer_discipline() {
        unsafe {
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(
                nk_coeff_main(ptr::null(), ptr::null(), &mut out),
                NkStatus::NullPointer
            );
            assert!(nk_ring_from_json(ptr::null()).is_null());
            nk_string_free(ptr::null_mut());
            nk_ring_free(ptr::null_mut());
            nk_grid_free(ptr::null_mut());
            nk_poly_free(ptr::null_mut());
        }
    }
}
