//! C ABI over `timelike_hilbert`.
//!
//! Points are `double[3]` on the sphere (any nonzero length), chart points and tangent
//! vectors are `double[2]`. Every fallible call returns a [`TlhStatus`] and writes its
//! result through an out pointer only on success. Panics never cross the boundary.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use nalgebra::Vector3;
use timelike_hilbert::bodies::{AntipodalSimplexPair, OrthantConePair};
use timelike_hilbert::finsler::{minkowski_functional, normed_functional, ChartTangent, Quadrant, RegionKind};
use timelike_hilbert::metrics::{euclidean_hilbert, funk, hilbert, reverse_funk, TimelikeDistance};
use timelike_hilbert::order::{chord, relate, CausalRelation};
use timelike_hilbert::sphere::{lift, project, Chart, ChartPoint, Sign, SpherePoint};
use timelike_hilbert::symmetry::GroupElement;
use timelike_hilbert::GeometryError;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TlhStatus {
    Ok = 0,
    NullPointer,
    InvalidArgument,
    ZeroVector,
    DegeneratePair,
    OffCircle,
    AllDegenerate,
    OutsideHemisphere,
    OnCoordinateCircle,
    NoIntersection,
    NotInOmega,
    NotRelated,
    InternalMismatch,
    NonPositiveInput,
    OutOfRegion,
    BaseOutsideQuadrant,
    NotInGoodPosition,
    Panic,
}

impl From<&GeometryError> for TlhStatus {
    fn from(e: &GeometryError) -> Self {
        use GeometryError as G;
        match e {
            G::ZeroVector => TlhStatus::ZeroVector,
            G::DegeneratePair => TlhStatus::DegeneratePair,
            G::OffCircle(_) => TlhStatus::OffCircle,
            G::AllDegenerate => TlhStatus::AllDegenerate,
            G::OutsideHemisphere(_) => TlhStatus::OutsideHemisphere,
            G::OnCoordinateCircle => TlhStatus::OnCoordinateCircle,
            G::NoIntersection(_) => TlhStatus::NoIntersection,
            G::NotInOmega => TlhStatus::NotInOmega,
            G::NotRelated => TlhStatus::NotRelated,
            G::InternalMismatch { .. } => TlhStatus::InternalMismatch,
            G::NonPositiveInput => TlhStatus::NonPositiveInput,
            G::OutOfRegion => TlhStatus::OutOfRegion,
            G::BaseOutsideQuadrant => TlhStatus::BaseOutsideQuadrant,
            G::NotInGoodPosition => TlhStatus::NotInGoodPosition,
            G::InvalidArgument(_) => TlhStatus::InvalidArgument,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TlhRelation {
    Equal = 0,
    Before,
    After,
    Unrelated,
}

impl From<CausalRelation> for TlhRelation {
    fn from(r: CausalRelation) -> Self {
        match r {
            CausalRelation::Equal => TlhRelation::Equal,
            CausalRelation::Before => TlhRelation::Before,
            CausalRelation::After => TlhRelation::After,
            CausalRelation::Unrelated => TlhRelation::Unrelated,
        }
    }
}

/// Opaque handle to an antipodal simplex pair.
pub struct TlhPair(AntipodalSimplexPair);

enum Fail {
    Null,
    Geometry(GeometryError),
}

impl From<GeometryError> for Fail {
    fn from(e: GeometryError) -> Self {
        Fail::Geometry(e)
    }
}

type Outcome = Result<(), Fail>;

fn guard(f: impl FnOnce() -> Outcome) -> TlhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TlhStatus::Ok,
        Ok(Err(Fail::Null)) => TlhStatus::NullPointer,
        Ok(Err(Fail::Geometry(e))) => (&e).into(),
        Err(_) => TlhStatus::Panic,
    }
}

unsafe fn read<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null)
}

unsafe fn write<T>(p: *mut T, value: T) -> Outcome {
    if p.is_null() {
        return Err(Fail::Null);
    }
    p.write(value);
    Ok(())
}

unsafe fn array<const N: usize>(p: *const f64) -> Result<[f64; N], Fail> {
    if p.is_null() {
        return Err(Fail::Null);
    }
    Ok(std::array::from_fn(|i| *p.add(i)))
}

unsafe fn write_array<const N: usize>(p: *mut f64, value: [f64; N]) -> Outcome {
    if p.is_null() {
        return Err(Fail::Null);
    }
    for (i, x) in value.into_iter().enumerate() {
        p.add(i).write(x);
    }
    Ok(())
}

unsafe fn point(p: *const f64) -> Result<SpherePoint, Fail> {
    Ok(SpherePoint::from_array(array(p)?)?)
}

fn chart(axis: u32, sign: i32) -> Result<Chart, GeometryError> {
    let sign = match sign {
        1 => Sign::Plus,
        -1 => Sign::Minus,
        _ => return Err(GeometryError::InvalidArgument(format!("chart sign must be 1 or -1, got {sign}"))),
    };
    match axis {
        1..=3 => Chart::new(axis as usize - 1, sign),
        _ => Err(GeometryError::InvalidArgument(format!("chart axis must be 1, 2 or 3, got {axis}"))),
    }
}

fn quadrant(q: u32) -> Result<Quadrant, GeometryError> {
    match q {
        1 => Ok(Quadrant::Q1),
        2 => Ok(Quadrant::Q2),
        _ => Err(GeometryError::InvalidArgument(format!("quadrant must be 1 or 2, got {q}"))),
    }
}

/// The standard pair: the positive and negative octant triangles.
#[no_mangle]
pub extern "C" fn tlh_pair_new_standard() -> *mut TlhPair {
    Box::into_raw(Box::new(TlhPair(AntipodalSimplexPair::standard())))
}

/// The image of the standard pair under `diag(d)`, normalized to determinant one.
///
/// # Safety
/// `d` must point to three doubles and `out` to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn tlh_pair_new_deformed(d: *const f64, out: *mut *mut TlhPair) -> TlhStatus {
    guard(|| {
        let pair = AntipodalSimplexPair::deformed(array(d)?)?;
        write(out, Box::into_raw(Box::new(TlhPair(pair))))
    })
}

/// # Safety
/// `pair` must come from a `tlh_pair_new_*` call and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tlh_pair_free(pair: *mut TlhPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// # Safety
/// `pair` must be a live handle; `p`, `q` point to three doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tlh_relate(
    pair: *const TlhPair,
    p: *const f64,
    q: *const f64,
    out: *mut TlhRelation,
) -> TlhStatus {
    guard(|| write(out, relate(&read(pair)?.0, &point(p)?, &point(q)?)?.into()))
}

type Distance = fn(&AntipodalSimplexPair, &SpherePoint, &SpherePoint) -> timelike_hilbert::Result<TimelikeDistance>;

unsafe fn distance(f: Distance, pair: *const TlhPair, p: *const f64, q: *const f64, out: *mut f64) -> TlhStatus {
    guard(|| write(out, f(&read(pair)?.0, &point(p)?, &point(q)?)?.value()))
}

/// Timelike Hilbert distance from `p` to `q`; `p` must precede `q`.
///
/// # Safety
/// As for [`tlh_relate`], with `out` a writable double.
#[no_mangle]
pub unsafe extern "C" fn tlh_hilbert(
    pair: *const TlhPair,
    p: *const f64,
    q: *const f64,
    out: *mut f64,
) -> TlhStatus {
    distance(hilbert, pair, p, q, out)
}

/// # Safety
/// As for [`tlh_hilbert`].
#[no_mangle]
pub unsafe extern "C" fn tlh_funk(pair: *const TlhPair, p: *const f64, q: *const f64, out: *mut f64) -> TlhStatus {
    distance(funk, pair, p, q, out)
}

/// # Safety
/// As for [`tlh_hilbert`].
#[no_mangle]
pub unsafe extern "C" fn tlh_reverse_funk(
    pair: *const TlhPair,
    p: *const f64,
    q: *const f64,
    out: *mut f64,
) -> TlhStatus {
    distance(reverse_funk, pair, p, q, out)
}

/// Past and future endpoints of the chord through `p` before `q`.
///
/// # Safety
/// As for [`tlh_relate`]; `a1` and `a2` each receive three doubles.
#[no_mangle]
pub unsafe extern "C" fn tlh_chord(
    pair: *const TlhPair,
    p: *const f64,
    q: *const f64,
    a1: *mut f64,
    a2: *mut f64,
) -> TlhStatus {
    guard(|| {
        if a1.is_null() || a2.is_null() {
            return Err(Fail::Null);
        }
        let c = chord(&read(pair)?.0, &point(p)?, &point(q)?)?;
        write_array(a1, c.a1.point.coords())?;
        write_array(a2, c.a2.point.coords())
    })
}

/// Coordinates of `p` in the chart `{x_axis = sign}`, `axis` in 1..=3, `sign` ±1.
///
/// # Safety
/// `p` points to three doubles, `out` to two.
#[no_mangle]
pub unsafe extern "C" fn tlh_project(axis: u32, sign: i32, p: *const f64, out: *mut f64) -> TlhStatus {
    guard(|| write_array(out, project(chart(axis, sign)?, &point(p)?)?.coords))
}

/// # Safety
/// `uv` points to two doubles, `out` to three.
#[no_mangle]
pub unsafe extern "C" fn tlh_lift(axis: u32, sign: i32, uv: *const f64, out: *mut f64) -> TlhStatus {
    guard(|| {
        let c = chart(axis, sign)?;
        let [u, v] = array(uv)?;
        write_array(out, lift(c, &ChartPoint::new(c, u, v))?.coords())
    })
}

/// Hilbert distance between points of ℝ³ for the pair of closed orthant cones.
///
/// # Safety
/// `x`, `y` point to three doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tlh_euclidean_hilbert(x: *const f64, y: *const f64, out: *mut f64) -> TlhStatus {
    guard(|| {
        let (x, y) = (Vector3::from(array(x)?), Vector3::from(array(y)?));
        write(out, euclidean_hilbert(&OrthantConePair, &x, &y)?.value())
    })
}

/// Minkowski functional of `v` at `base` in quadrant 1 or 2.
///
/// # Safety
/// `base`, `v` point to two doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tlh_minkowski_functional(
    quadrant_index: u32,
    base: *const f64,
    v: *const f64,
    out: *mut f64,
) -> TlhStatus {
    guard(|| {
        let t = ChartTangent::new(array(base)?, array(v)?);
        write(out, minkowski_functional(&t, quadrant(quadrant_index)?)?)
    })
}

/// Norm of a log-coordinate vector for region type 1 or 2.
///
/// # Safety
/// `w` points to two doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tlh_normed_functional(kind: u32, w: *const f64, out: *mut f64) -> TlhStatus {
    guard(|| {
        let kind = match kind {
            1 => RegionKind::TypeQ1,
            2 => RegionKind::TypeQ2,
            _ => return Err(GeometryError::InvalidArgument(format!("region type must be 1 or 2, got {kind}")).into()),
        };
        write(out, normed_functional(array(w)?, kind)?)
    })
}

/// Applies `diag(scale₁, scale₂, 1)`, then the cycle `cycle` times, then the antipodal map if `flip`.
///
/// # Safety
/// `scale` points to two doubles, `p` to three, `out` to three.
#[no_mangle]
pub unsafe extern "C" fn tlh_group_apply(
    scale: *const f64,
    cycle: u8,
    flip: bool,
    p: *const f64,
    out: *mut f64,
) -> TlhStatus {
    guard(|| {
        let g = GroupElement::new(array(scale)?, cycle, flip)?;
        write_array(out, g.apply(&point(p)?).coords())
    })
}

/// Static, NUL-terminated description of a status.
#[no_mangle]
pub extern "C" fn tlh_status_message(status: TlhStatus) -> *const c_char {
    let s: &'static CStr = match status {
        TlhStatus::Ok => c"ok",
        TlhStatus::NullPointer => c"null pointer argument",
        TlhStatus::InvalidArgument => c"invalid argument",
        TlhStatus::ZeroVector => c"vector is zero or not finite",
        TlhStatus::DegeneratePair => c"points are equal or antipodal",
        TlhStatus::OffCircle => c"point is not on the great circle",
        TlhStatus::AllDegenerate => c"cross ratio is 0/0",
        TlhStatus::OutsideHemisphere => c"point lies outside the chart hemisphere",
        TlhStatus::OnCoordinateCircle => c"point lies on a coordinate circle",
        TlhStatus::NoIntersection => c"great circle misses a boundary",
        TlhStatus::NotInOmega => c"point is not in the region between the two simplices",
        TlhStatus::NotRelated => c"points are not causally related",
        TlhStatus::InternalMismatch => c"independent evaluations disagree",
        TlhStatus::NonPositiveInput => c"input must be strictly positive",
        TlhStatus::OutOfRegion => c"point lies outside the required chart region",
        TlhStatus::BaseOutsideQuadrant => c"base point is not strictly inside the quadrant",
        TlhStatus::NotInGoodPosition => c"bodies are not in good position",
        TlhStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

#[no_mangle]
pub extern "C" fn tlh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_error_has_a_status() {
        let e = GeometryError::InternalMismatch { primary: 1.0, check: 2.0 };
        assert_eq!(TlhStatus::from(&e), TlhStatus::InternalMismatch);
        assert_eq!(TlhStatus::from(&GeometryError::NotRelated), TlhStatus::NotRelated);
    }

    #[test]
    fn charts_are_one_based() {
        assert_eq!(chart(2, -1).unwrap(), "2-".parse().unwrap());
        assert!(chart(0, 1).is_err());
        assert!(chart(1, 0).is_err());
    }

    #[test]
    fn messages_are_static_c_strings() {
        let s = unsafe { CStr::from_ptr(tlh_status_message(TlhStatus::NotRelated)) };
        assert_eq!(s.to_str().unwrap(), "points are not causally related");
        let v = unsafe { CStr::from_ptr(tlh_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
