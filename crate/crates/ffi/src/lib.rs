//! C ABI over the `trimoduli` library.
//!
//! Every fallible function returns a [`TmStatus`] and writes results through
//! out-pointers. On failure the out-pointers are left untouched and
//! [`tm_last_error_message`] describes the error for the calling thread.
//! Weighted shape sets are opaque handles released with
//! [`tm_weighted_set_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use trimoduli::diophantine::{approximate_shape, dirichlet_2d};
use trimoduli::enumeration::{enumerate_naive, enumerate_weighted, LatticeBox};
use trimoduli::moduli;
use trimoduli::randgeom::{mean_pair_distance, obtuse_probability, McEstimate};
use trimoduli::{
    AngleClass, Error, LatticePoint, LatticeTriangle, ModuliRegion, ShapeTriple, SimilarityKey,
    WeightedShapeSet,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Guard = 3,
    Precision = 4,
    OutOfRange = 5,
    Empty = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TmAngleClass {
    Acute = 0,
    Right = 1,
    Obtuse = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TmRegion {
    ObtuseAll = 0,
    Acute = 1,
    Full = 2,
}

/// Reduced sorted squared side lengths `p <= q <= r`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TmKey {
    pub p: u64,
    pub q: u64,
    pub r: u64,
}

/// Side lengths divided by the semi-perimeter, sorted ascending.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TmShape {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TmPoint {
    pub x: i32,
    pub y: i32,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TmTriangle {
    pub a: TmPoint,
    pub b: TmPoint,
    pub c: TmPoint,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TmEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// `|m x - nx| = err_x` and `|m y - ny| = err_y`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TmApproximant {
    pub m: u64,
    pub nx: i64,
    pub ny: i64,
    pub err_x: f64,
    pub err_y: f64,
}

/// Opaque weighted set of similarity classes.
pub struct TmWeightedSet {
    set: WeightedShapeSet,
    entries: Vec<(SimilarityKey, u64)>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(TmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::InvalidInput(_) | Error::Degenerate(_) | Error::Config(_) | Error::Parse(_) => {
                TmStatus::InvalidInput
            }
            Error::Guard(_) => TmStatus::Guard,
            Error::Precision(_) => TmStatus::Precision,
            Error::CoordinateOutOfRange(_) => TmStatus::OutOfRange,
            Error::EmptySet => TmStatus::Empty,
            _ => TmStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn call<F>(f: F) -> TmStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            TmStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside trimoduli");
            TmStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(TmStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out<'a, T>(ptr: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    ptr.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a>(ptr: *const TmWeightedSet) -> Result<&'a TmWeightedSet, Failure> {
    ptr.as_ref().ok_or_else(|| null("set"))
}

fn key_to_c(k: &SimilarityKey) -> Result<TmKey, Failure> {
    let narrow = |v: u128| {
        u64::try_from(v).map_err(|_| {
            Failure(
                TmStatus::OutOfRange,
                format!("key component {v} does not fit in 64 bits"),
            )
        })
    };
    Ok(TmKey {
        p: narrow(k.p())?,
        q: narrow(k.q())?,
        r: narrow(k.r())?,
    })
}

fn key_from_c(k: TmKey) -> Result<SimilarityKey, Failure> {
    Ok(SimilarityKey::new(
        u128::from(k.p),
        u128::from(k.q),
        u128::from(k.r),
    )?)
}

fn point_from_c(p: TmPoint) -> LatticePoint {
    LatticePoint::new(p.x, p.y)
}

fn point_to_c(p: LatticePoint) -> TmPoint {
    TmPoint { x: p.x, y: p.y }
}

fn region_from_c(r: TmRegion) -> ModuliRegion {
    match r {
        TmRegion::ObtuseAll => ModuliRegion::ObtuseAll,
        TmRegion::Acute => ModuliRegion::Acute,
        TmRegion::Full => ModuliRegion::Full,
    }
}

fn estimate_to_c(e: McEstimate) -> TmEstimate {
    TmEstimate {
        mean: e.mean,
        std_error: e.std_error,
        samples: e.samples,
        seed: e.seed,
    }
}

fn into_handle(set: WeightedShapeSet) -> *mut TmWeightedSet {
    let entries = set.iter().map(|(k, w)| (*k, w)).collect();
    Box::into_raw(Box::new(TmWeightedSet { set, entries }))
}

/// Similarity key of a nondegenerate lattice triangle.
///
/// # Safety
/// `triangle` and `key_out` must be valid pointers or null.
#[no_mangle]
pub unsafe extern "C" fn tm_similarity_key(
    triangle: *const TmTriangle,
    key_out: *mut TmKey,
) -> TmStatus {
    call(|| {
        let t = triangle.as_ref().ok_or_else(|| null("triangle"))?;
        let out = out(key_out, "key_out")?;
        let tri = LatticeTriangle::new(point_from_c(t.a), point_from_c(t.b), point_from_c(t.c))?;
        *out = key_to_c(&tri.similarity_key())?;
        Ok(())
    })
}

/// # Safety
/// `class_out` must be a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn tm_classify_angle(key: TmKey, class_out: *mut TmAngleClass) -> TmStatus {
    call(|| {
        let out = out(class_out, "class_out")?;
        *out = match key_from_c(key)?.angle_class() {
            AngleClass::Acute => TmAngleClass::Acute,
            AngleClass::Right => TmAngleClass::Right,
            AngleClass::Obtuse => TmAngleClass::Obtuse,
        };
        Ok(())
    })
}

/// # Safety
/// `shape_out` must be a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn tm_shape_of(key: TmKey, shape_out: *mut TmShape) -> TmStatus {
    call(|| {
        let out = out(shape_out, "shape_out")?;
        let [a, b, c] = key_from_c(key)?.shape().as_array();
        *out = TmShape { a, b, c };
        Ok(())
    })
}

/// Weighted census of all triangles in `[-n, n]^2`. The handle must be
/// released with [`tm_weighted_set_free`].
///
/// # Safety
/// `set_out` must be a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn tm_enumerate_weighted(n: u32, set_out: *mut *mut TmWeightedSet) -> TmStatus {
    call(|| {
        let out = out(set_out, "set_out")?;
        *out = into_handle(enumerate_weighted(n)?);
        Ok(())
    })
}

/// Brute-force census over an arbitrary inclusive rectangle.
///
/// # Safety
/// `set_out` must be a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn tm_enumerate_naive(
    x_min: i32,
    x_max: i32,
    y_min: i32,
    y_max: i32,
    set_out: *mut *mut TmWeightedSet,
) -> TmStatus {
    call(|| {
        let out = out(set_out, "set_out")?;
        let bx = LatticeBox {
            x_min,
            x_max,
            y_min,
            y_max,
        };
        *out = into_handle(enumerate_naive(bx)?);
        Ok(())
    })
}

/// Number of distinct similarity classes.
///
/// # Safety
/// `set` must be a handle from this library or null; `len_out` valid or null.
#[no_mangle]
pub unsafe extern "C" fn tm_weighted_set_len(set: *const TmWeightedSet, len_out: *mut usize) -> TmStatus {
    call(|| {
        let h = handle(set)?;
        *out(len_out, "len_out")? = h.entries.len();
        Ok(())
    })
}

/// # Safety
/// As [`tm_weighted_set_len`].
#[no_mangle]
pub unsafe extern "C" fn tm_weighted_set_total_weight(
    set: *const TmWeightedSet,
    weight_out: *mut u64,
) -> TmStatus {
    call(|| {
        let h = handle(set)?;
        *out(weight_out, "weight_out")? = h.set.total_weight();
        Ok(())
    })
}

/// Entry `index` in ascending key order.
///
/// # Safety
/// As [`tm_weighted_set_len`].
#[no_mangle]
pub unsafe extern "C" fn tm_weighted_set_entry(
    set: *const TmWeightedSet,
    index: usize,
    key_out: *mut TmKey,
    weight_out: *mut u64,
) -> TmStatus {
    call(|| {
        let h = handle(set)?;
        let key_out = out(key_out, "key_out")?;
        let weight_out = out(weight_out, "weight_out")?;
        let (k, w) = h.entries.get(index).ok_or_else(|| {
            Failure(
                TmStatus::OutOfRange,
                format!("index {index} out of range for {} entries", h.entries.len()),
            )
        })?;
        *key_out = key_to_c(k)?;
        *weight_out = *w;
        Ok(())
    })
}

/// Weighted fraction of the set lying in `region`.
///
/// # Safety
/// As [`tm_weighted_set_len`].
#[no_mangle]
pub unsafe extern "C" fn tm_weighted_set_dirac_ratio(
    set: *const TmWeightedSet,
    region: TmRegion,
    ratio_out: *mut f64,
) -> TmStatus {
    call(|| {
        let h = handle(set)?;
        *out(ratio_out, "ratio_out")? = h.set.dirac_ratio(region_from_c(region))?;
        Ok(())
    })
}

/// # Safety
/// As [`tm_weighted_set_len`].
#[no_mangle]
pub unsafe extern "C" fn tm_weighted_set_obtuse_ratio(
    set: *const TmWeightedSet,
    ratio_out: *mut f64,
) -> TmStatus {
    tm_weighted_set_dirac_ratio(set, TmRegion::ObtuseAll, ratio_out)
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `set` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tm_weighted_set_free(set: *mut TmWeightedSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// # Safety
/// `out_approx` must be a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn tm_dirichlet_2d(
    x: f64,
    y: f64,
    eps: f64,
    out_approx: *mut TmApproximant,
) -> TmStatus {
    call(|| {
        let out = out(out_approx, "out_approx")?;
        let w = dirichlet_2d(x, y, eps)?;
        *out = TmApproximant {
            m: w.m,
            nx: w.nx,
            ny: w.ny,
            err_x: w.err_x,
            err_y: w.err_y,
        };
        Ok(())
    })
}

/// Lattice triangle whose shape lies within `eps` of `target`.
/// `distance_out` may be null.
///
/// # Safety
/// `triangle_out` must be valid or null; `distance_out` valid or null.
#[no_mangle]
pub unsafe extern "C" fn tm_approximate_shape(
    target: TmShape,
    eps: f64,
    triangle_out: *mut TmTriangle,
    distance_out: *mut f64,
) -> TmStatus {
    call(|| {
        let tri_out = out(triangle_out, "triangle_out")?;
        let shape = ShapeTriple::new(target.a, target.b, target.c)?;
        let approx = approximate_shape(&shape, eps)?;
        let [a, b, c] = approx.triangle.vertices();
        *tri_out = TmTriangle {
            a: point_to_c(a),
            b: point_to_c(b),
            c: point_to_c(c),
        };
        if let Some(d) = distance_out.as_mut() {
            *d = approx.distance;
        }
        Ok(())
    })
}

/// # Safety
/// `estimate_out` must be a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn tm_obtuse_probability(
    samples: u64,
    seed: u64,
    estimate_out: *mut TmEstimate,
) -> TmStatus {
    call(|| {
        let out = out(estimate_out, "estimate_out")?;
        *out = estimate_to_c(obtuse_probability(samples, seed)?);
        Ok(())
    })
}

/// # Safety
/// `estimate_out` must be a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn tm_mean_pair_distance(
    samples: u64,
    seed: u64,
    estimate_out: *mut TmEstimate,
) -> TmStatus {
    call(|| {
        let out = out(estimate_out, "estimate_out")?;
        *out = estimate_to_c(mean_pair_distance(samples, seed)?);
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn tm_measure_teich() -> f64 {
    moduli::measure_teich()
}

#[no_mangle]
pub extern "C" fn tm_measure_moduli() -> f64 {
    moduli::measure_moduli()
}

#[no_mangle]
pub extern "C" fn tm_obtuse_region_measure() -> f64 {
    moduli::obtuse_region_measure()
}

#[no_mangle]
pub extern "C" fn tm_uniform_target(region: TmRegion) -> f64 {
    moduli::uniform_target(region_from_c(region))
}

#[no_mangle]
pub extern "C" fn tm_langford_probability() -> f64 {
    trimoduli::LANGFORD_OBTUSE_PROBABILITY
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn tm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
