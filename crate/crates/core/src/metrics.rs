//! Funk, reverse Funk and Hilbert distances, their Euclidean and Lorentzian counterparts,
//! and the closed forms in planar charts.

use nalgebra::Vector3;
use serde::Serialize;

use crate::bodies::{sign_definite, AntipodalSimplexPair, OrthantConePair, Region};
use crate::error::{GeometryError, Result};
use crate::order::{chord, Chord, EQUAL_TOL};
use crate::sphere::{spherical_cross_ratio, Chart, ChartPoint, Sign, SpherePoint};

/// Maximal disagreement tolerated between the two Hilbert evaluations.
pub const ROUTE_TOL: f64 = 1e-8;

/// A distance in natural-log units.
///
/// Hilbert values are nonnegative. Funk values on chords longer than π/2 may dip below zero
/// when `p` sits close to a₁, since sin d(p,a₂) then falls under sin d(q,a₂).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct TimelikeDistance(pub f64);

impl TimelikeDistance {
    pub const ZERO: TimelikeDistance = TimelikeDistance(0.0);

    pub fn value(self) -> f64 {
        self.0
    }
}

enum Ordered {
    Same,
    Chord(Box<Chord>),
}

fn ordered(pair: &AntipodalSimplexPair, p: &SpherePoint, q: &SpherePoint) -> Result<Ordered> {
    for x in [p, q] {
        if pair.region_membership(x) != Region::Omega {
            return Err(GeometryError::NotInOmega);
        }
    }
    if p.chordal(q) <= EQUAL_TOL {
        return Ok(Ordered::Same);
    }
    Ok(Ordered::Chord(Box::new(chord(pair, p, q)?)))
}

fn funk_on(c: &Chord) -> f64 {
    let a2 = &c.a2.point;
    (c.p.sin_distance(a2) / c.q.sin_distance(a2)).ln()
}

fn reverse_funk_on(c: &Chord) -> f64 {
    let a1 = &c.a1.point;
    (c.q.sin_distance(a1) / c.p.sin_distance(a1)).ln()
}

/// `log(sin d(p,a₂) / sin d(q,a₂))` along the chord of `p < q`.
pub fn funk(pair: &AntipodalSimplexPair, p: &SpherePoint, q: &SpherePoint) -> Result<TimelikeDistance> {
    match ordered(pair, p, q)? {
        Ordered::Same => Ok(TimelikeDistance::ZERO),
        Ordered::Chord(c) => Ok(TimelikeDistance(funk_on(&c))),
    }
}

/// `log(sin d(q,a₁) / sin d(p,a₁))` along the chord of `p < q`.
pub fn reverse_funk(pair: &AntipodalSimplexPair, p: &SpherePoint, q: &SpherePoint) -> Result<TimelikeDistance> {
    match ordered(pair, p, q)? {
        Ordered::Same => Ok(TimelikeDistance::ZERO),
        Ordered::Chord(c) => Ok(TimelikeDistance(reverse_funk_on(&c))),
    }
}

/// Both evaluations of the Hilbert distance: `½(F + F̄)` and `½ log [a₁,p,q,a₂]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HilbertRoutes {
    pub funk: f64,
    pub reverse_funk: f64,
    pub via_funk: f64,
    pub via_cross_ratio: f64,
}

pub fn hilbert_routes(pair: &AntipodalSimplexPair, p: &SpherePoint, q: &SpherePoint) -> Result<HilbertRoutes> {
    match ordered(pair, p, q)? {
        Ordered::Same => Ok(HilbertRoutes { funk: 0.0, reverse_funk: 0.0, via_funk: 0.0, via_cross_ratio: 0.0 }),
        Ordered::Chord(c) => {
            let (f, fr) = (funk_on(&c), reverse_funk_on(&c));
            let cr = spherical_cross_ratio(&c.a1.point, &c.p, &c.q, &c.a2.point, &c.circle)?;
            Ok(HilbertRoutes { funk: f, reverse_funk: fr, via_funk: 0.5 * (f + fr), via_cross_ratio: 0.5 * cr.ln() })
        }
    }
}

/// Half the log of the spherical cross ratio of the chord, cross-checked against `½(F + F̄)`.
pub fn hilbert(pair: &AntipodalSimplexPair, p: &SpherePoint, q: &SpherePoint) -> Result<TimelikeDistance> {
    let r = hilbert_routes(pair, p, q)?;
    if (r.via_funk - r.via_cross_ratio).abs() > ROUTE_TOL {
        return Err(GeometryError::InternalMismatch { primary: r.via_cross_ratio, check: r.via_funk });
    }
    Ok(TimelikeDistance(r.via_cross_ratio))
}

/// Parameter interval `{t : x + t·d ∈ closed orthant of sign s}`, or `None` if empty.
fn orthant_interval(x: &Vector3<f64>, d: &Vector3<f64>, s: f64) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for i in 0..3 {
        let (xi, di) = (s * x[i], s * d[i]);
        if di == 0.0 {
            if xi < 0.0 {
                return None;
            }
        } else if di > 0.0 {
            lo = lo.max(-xi / di);
        } else {
            hi = hi.min(-xi / di);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Endpoints of a Euclidean chord in the parameter `t` of `x + t(y − x)`; `None` is ideal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanChord {
    pub t1: Option<f64>,
    pub t2: Option<f64>,
}

pub fn euclidean_chord(cones: &OrthantConePair, x: &Vector3<f64>, y: &Vector3<f64>) -> Result<EuclideanChord> {
    for p in [x, y] {
        if cones.in_closed_future(p) || cones.in_closed_past(p) {
            return Err(GeometryError::NotInOmega);
        }
    }
    let plane = x.cross(y);
    if plane.norm() <= 1e-12 * x.norm() * y.norm() || sign_definite(&plane.normalize()) {
        return Err(GeometryError::NotRelated);
    }
    let d = y - x;
    let scale = d.norm();
    let heads_future = d.iter().all(|&c| c >= -1e-12 * scale);
    let t2 = match orthant_interval(x, &d, 1.0) {
        Some((lo, _)) if lo > 1.0 => Some(lo),
        Some(_) => return Err(GeometryError::NotRelated),
        None if heads_future => None,
        None => return Err(GeometryError::NotRelated),
    };
    let t1 = match orthant_interval(x, &d, -1.0) {
        Some((_, hi)) if hi < 0.0 => Some(hi),
        Some(_) => return Err(GeometryError::NotRelated),
        None if heads_future => None,
        None => return Err(GeometryError::NotRelated),
    };
    if t1.is_none() && t2.is_none() {
        return Err(GeometryError::NotRelated);
    }
    Ok(EuclideanChord { t1, t2 })
}

/// Half the log of the Euclidean cross ratio `[a₁,x,y,a₂]`, with ideal endpoints in the limit.
pub fn euclidean_hilbert(cones: &OrthantConePair, x: &Vector3<f64>, y: &Vector3<f64>) -> Result<TimelikeDistance> {
    if (x - y).norm() <= EQUAL_TOL * x.norm().max(1.0) {
        if cones.in_closed_future(x) || cones.in_closed_past(x) {
            return Err(GeometryError::NotInOmega);
        }
        return Ok(TimelikeDistance::ZERO);
    }
    let EuclideanChord { t1, t2 } = euclidean_chord(cones, x, y)?;
    let near = t1.map_or(1.0, |t1| (1.0 - t1) / -t1);
    let far = t2.map_or(1.0, |t2| t2 / (t2 - 1.0));
    Ok(TimelikeDistance(0.5 * (near * far).ln()))
}

/// Radial projection ℝ³∖{0} → S².
pub fn cone_project(x: &Vector3<f64>) -> Result<SpherePoint> {
    SpherePoint::from_vector(*x)
}

/// A point of affine Lorentz space; the first coordinate is time.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzEvent(pub Vec<f64>);

/// `√λ(y − x)` for `x` before `y`. Null separations are not ordered.
pub fn lorentz_distance(x: &LorentzEvent, y: &LorentzEvent) -> Result<TimelikeDistance> {
    let n = x.0.len();
    if n < 2 || y.0.len() != n {
        return Err(GeometryError::InvalidArgument(format!(
            "events need equal dimension at least 2 (got {} and {})",
            n,
            y.0.len()
        )));
    }
    let delta: Vec<f64> = y.0.iter().zip(&x.0).map(|(b, a)| b - a).collect();
    let norm2: f64 = delta.iter().map(|d| d * d).sum();
    if norm2.sqrt() <= EQUAL_TOL {
        return Ok(TimelikeDistance::ZERO);
    }
    let lambda = delta[0] * delta[0] - delta[1..].iter().map(|d| d * d).sum::<f64>();
    if delta[0] <= 0.0 || lambda <= 1e-12 * norm2 {
        return Err(GeometryError::NotRelated);
    }
    Ok(TimelikeDistance(lambda.sqrt()))
}

fn check_positive(p: [f64; 2], q: [f64; 2]) -> Result<()> {
    if p.iter().chain(&q).all(|&c| c > 0.0 && c.is_finite()) {
        Ok(())
    } else {
        Err(GeometryError::NonPositiveInput)
    }
}

/// Classical Hilbert metric of the open quadrant, closed form.
pub fn quadrant_hilbert_max(p: [f64; 2], q: [f64; 2]) -> Result<f64> {
    check_positive(p, q)?;
    let a = (p[0] / q[0]).ln().abs();
    let b = (p[1] / q[1]).ln().abs();
    let c = ((p[0] * q[1]) / (q[0] * p[1])).ln().abs();
    Ok(0.5 * a.max(b).max(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Landing {
    /// the axis `x₁ = 0`
    YAxis,
    /// the axis `x₂ = 0`
    XAxis,
    Infinity,
}

/// Classical quadrant Hilbert metric by locating where the line pq leaves the quadrant.
pub fn quadrant_hilbert_cases(p: [f64; 2], q: [f64; 2]) -> Result<f64> {
    check_positive(p, q)?;
    if p == q {
        return Ok(0.0);
    }
    let d = [q[0] - p[0], q[1] - p[1]];
    let crossing = |i: usize| (d[i] != 0.0).then(|| -p[i] / d[i]);
    let mut behind = (Landing::Infinity, f64::NEG_INFINITY);
    let mut ahead = (Landing::Infinity, f64::INFINITY);
    for (axis, t) in [(Landing::YAxis, crossing(0)), (Landing::XAxis, crossing(1))] {
        let Some(t) = t else { continue };
        if t < 0.0 && t > behind.1 {
            behind = (axis, t);
        } else if t > 1.0 && t < ahead.1 {
            ahead = (axis, t);
        }
    }
    let l1 = (q[0] / p[0]).ln();
    let l2 = (q[1] / p[1]).ln();
    let h = match (behind.0, ahead.0) {
        (Landing::YAxis, Landing::XAxis) => 0.5 * (-l2 + l1),
        (Landing::XAxis, Landing::YAxis) => 0.5 * (l2 - l1),
        (Landing::YAxis, Landing::Infinity) => 0.5 * l1,
        (Landing::Infinity, Landing::YAxis) => -0.5 * l1,
        (Landing::XAxis, Landing::Infinity) => 0.5 * l2,
        (Landing::Infinity, Landing::XAxis) => -0.5 * l2,
        _ => return Err(GeometryError::InternalMismatch { primary: f64::NAN, check: f64::NAN }),
    };
    Ok(h)
}

/// Classical quadrant Hilbert metric, max formula checked against the case analysis.
pub fn classical_hilbert_quadrant(p: [f64; 2], q: [f64; 2]) -> Result<f64> {
    let closed = quadrant_hilbert_max(p, q)?;
    let cases = quadrant_hilbert_cases(p, q)?;
    if (closed - cases).abs() > 1e-12 * closed.max(1.0) {
        return Err(GeometryError::InternalMismatch { primary: closed, check: cases });
    }
    Ok(closed)
}

/// Timelike Hilbert distance read off a chart in which the past simplex is the third quadrant
/// and the future simplex sits at infinity: `½ min{log(q₁/p₁), log(q₂/p₂)}`.
///
/// For a `−` chart the points must lie in the first quadrant. A `+` chart shows the future
/// simplex as its first quadrant; there the points must lie in the third quadrant and the
/// antipodal map brings them back to the first case.
pub fn degenerate_chart_hilbert(p: &ChartPoint, q: &ChartPoint, chart: Chart) -> Result<TimelikeDistance> {
    if p.chart != chart || q.chart != chart {
        return Err(GeometryError::InvalidArgument("chart points belong to a different chart".into()));
    }
    let s = match chart.sign() {
        Sign::Minus => 1.0,
        Sign::Plus => -1.0,
    };
    let (a, b) = (p.coords.map(|c| s * c), q.coords.map(|c| s * c));
    if a.iter().chain(&b).any(|&c| !(c > 0.0 && c.is_finite())) {
        return Err(GeometryError::OutOfRegion);
    }
    // The antipodal map reverses order: p < q becomes −q < −p.
    let (lo, hi) = if s > 0.0 { (a, b) } else { (b, a) };
    if lo == hi {
        return Ok(TimelikeDistance::ZERO);
    }
    if !(lo[0] < hi[0] && lo[1] < hi[1]) {
        return Err(GeometryError::NotRelated);
    }
    let h = 0.5 * (hi[0] / lo[0]).ln().min((hi[1] / lo[1]).ln());
    Ok(TimelikeDistance(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::lift;
    use std::f64::consts::{E, LN_2};

    fn sp(x: f64, y: f64, z: f64) -> SpherePoint {
        SpherePoint::new(x, y, z).unwrap()
    }

    fn chart() -> Chart {
        "2-".parse().unwrap()
    }

    fn cp(u: f64, v: f64) -> ChartPoint {
        ChartPoint::new(chart(), u, v)
    }

    fn on_sphere(u: f64, v: f64) -> SpherePoint {
        lift(chart(), &cp(u, v)).unwrap()
    }

    #[test]
    fn pinned_pair_distances() {
        let pair = AntipodalSimplexPair::standard();
        let (p, q) = (sp(1.0, -1.0, 1.0), sp(E, -1.0, E));
        let f = funk(&pair, &p, &q).unwrap().value();
        assert!((f - 0.5 * ((2.0 * E * E + 1.0) / 3.0).ln()).abs() < 1e-12);
        let fr = reverse_funk(&pair, &p, &q).unwrap().value();
        assert!((fr - (1.0 + 0.5 * 3f64.ln() - 0.5 * (2.0 * E * E + 1.0).ln())).abs() < 1e-12);
        let h = hilbert(&pair, &p, &q).unwrap().value();
        assert!((h - 0.5).abs() < 1e-12);
        assert!((0.5 * (f + fr) - h).abs() < 1e-12);
    }

    #[test]
    fn identity_and_unrelated() {
        let pair = AntipodalSimplexPair::standard();
        let p = on_sphere(1.0, 1.0);
        assert_eq!(hilbert(&pair, &p, &p).unwrap(), TimelikeDistance::ZERO);
        assert_eq!(funk(&pair, &p, &p).unwrap(), TimelikeDistance::ZERO);
        assert_eq!(reverse_funk(&pair, &p, &p).unwrap(), TimelikeDistance::ZERO);
        let q = on_sphere(2.0, 0.5);
        assert_eq!(funk(&pair, &p, &q), Err(GeometryError::NotRelated));
        assert_eq!(hilbert(&pair, &q, &p), Err(GeometryError::NotRelated));
    }

    #[test]
    fn chart_pair_is_half_log_two() {
        let pair = AntipodalSimplexPair::standard();
        let h = hilbert(&pair, &on_sphere(1.0, 2.0), &on_sphere(3.0, 4.0)).unwrap().value();
        assert!((h - 0.5 * LN_2).abs() < 1e-12, "{h}");
        let d = degenerate_chart_hilbert(&cp(1.0, 2.0), &cp(3.0, 4.0), chart()).unwrap().value();
        assert!((d - h).abs() < 1e-12);
    }

    #[test]
    fn chart_formula_examples() {
        let d = degenerate_chart_hilbert(&cp(1.0, 1.0), &cp(E, E), chart()).unwrap().value();
        assert!((d - 0.5).abs() < 1e-15);
        assert_eq!(degenerate_chart_hilbert(&cp(1.0, 1.0), &cp(1.0, 1.0), chart()).unwrap(), TimelikeDistance::ZERO);
        assert_eq!(degenerate_chart_hilbert(&cp(1.0, 1.0), &cp(2.0, 0.5), chart()), Err(GeometryError::NotRelated));
        assert_eq!(degenerate_chart_hilbert(&cp(-1.0, 1.0), &cp(2.0, 2.0), chart()), Err(GeometryError::OutOfRegion));
    }

    #[test]
    fn plus_chart_matches_sphere() {
        let pair = AntipodalSimplexPair::standard();
        let c: Chart = "3+".parse().unwrap();
        let (p, q) = (ChartPoint::new(c, -3.0, -2.0), ChartPoint::new(c, -1.0, -1.5));
        let on = |x: &ChartPoint| lift(c, x).unwrap();
        let h = hilbert(&pair, &on(&p), &on(&q)).unwrap().value();
        let d = degenerate_chart_hilbert(&p, &q, c).unwrap().value();
        assert!((h - d).abs() < 1e-12, "{h} {d}");
    }

    #[test]
    fn euclidean_examples() {
        let cones = OrthantConePair;
        let h = euclidean_hilbert(&cones, &Vector3::new(-1.0, -2.0, 1.0), &Vector3::new(1.0, -1.0, 2.0)).unwrap();
        assert!((h.value() - LN_2).abs() < 1e-14);
        let h = euclidean_hilbert(&cones, &Vector3::new(1.0, -1.0, 1.0), &Vector3::new(E, -1.0, E)).unwrap();
        assert!((h.value() - 0.5).abs() < 1e-14);
        let x = Vector3::new(1.0, -1.0, 1.0);
        assert_eq!(euclidean_hilbert(&cones, &x, &x).unwrap(), TimelikeDistance::ZERO);
        let r = euclidean_hilbert(&cones, &Vector3::new(1.0, 1.0, 1.0), &x);
        assert_eq!(r, Err(GeometryError::NotInOmega));
    }

    #[test]
    fn projection() {
        let p = cone_project(&Vector3::new(3.0, 0.0, 3.0)).unwrap();
        assert!(p.chordal(&sp(1.0, 0.0, 1.0)) < 1e-15);
        assert_eq!(cone_project(&Vector3::zeros()), Err(GeometryError::ZeroVector));
    }

    #[test]
    fn lorentz_examples() {
        let o = LorentzEvent(vec![0.0; 3]);
        let d = lorentz_distance(&o, &LorentzEvent(vec![2.0, 1.0, 1.0])).unwrap();
        assert!((d.value() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(lorentz_distance(&o, &LorentzEvent(vec![1.0, 1.0, 0.0])), Err(GeometryError::NotRelated));
        assert_eq!(lorentz_distance(&o, &LorentzEvent(vec![-1.0, 0.0, 0.0])), Err(GeometryError::NotRelated));
        assert_eq!(lorentz_distance(&o, &o).unwrap(), TimelikeDistance::ZERO);
        assert!(lorentz_distance(&LorentzEvent(vec![0.0]), &LorentzEvent(vec![1.0])).is_err());
    }

    #[test]
    fn quadrant_examples() {
        assert!((classical_hilbert_quadrant([1.0, 1.0], [2.0, 2.0]).unwrap() - 0.5 * LN_2).abs() < 1e-15);
        assert!((classical_hilbert_quadrant([1.0, 2.0], [2.0, 1.0]).unwrap() - LN_2).abs() < 1e-15);
        assert_eq!(classical_hilbert_quadrant([1.0, 2.0], [1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(classical_hilbert_quadrant([0.0, 2.0], [1.0, 2.0]), Err(GeometryError::NonPositiveInput));
        for (p, q) in [([1.0, 3.0], [5.0, 0.5]), ([2.0, 1.0], [2.0, 7.0]), ([4.0, 4.0], [1.0, 2.0])] {
            let a = quadrant_hilbert_max(p, q).unwrap();
            let b = quadrant_hilbert_cases(p, q).unwrap();
            assert!((a - b).abs() < 1e-14, "{p:?} {q:?}: {a} {b}");
        }
    }
}
