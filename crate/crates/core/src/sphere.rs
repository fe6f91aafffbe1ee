//! Points, great circles, charts and multi-signs on the unit sphere S² ⊂ ℝ³.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;

use crate::error::{GeometryError, Result};

/// Tolerance for "point lies on a great circle".
pub const ON_CIRCLE_TOL: f64 = 1e-9;
/// Zero band used for coordinate signs.
pub const SIGN_ZERO_BAND: f64 = 1e-12;
/// Minimal |p×q| for two points to span a unique great circle.
pub const PAIR_TOL: f64 = 1e-10;

/// A unit vector in ℝ³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint(Vector3<f64>);

impl SpherePoint {
    /// Normalizes any finite nonzero vector onto the sphere.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_vector(Vector3::new(x, y, z))
    }

    pub fn from_array(c: [f64; 3]) -> Result<Self> {
        Self::new(c[0], c[1], c[2])
    }

    pub fn from_vector(v: Vector3<f64>) -> Result<Self> {
        let n = v.norm();
        if !n.is_finite() || n <= f64::MIN_POSITIVE {
            return Err(GeometryError::ZeroVector);
        }
        Ok(SpherePoint(v / n))
    }

    /// The basis vector `sign·e_axis` (axis is 0-based).
    pub fn pole(axis: usize, sign: Sign) -> Self {
        let mut v = Vector3::zeros();
        v[axis] = sign.value();
        SpherePoint(v)
    }

    pub fn vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.0[0], self.0[1], self.0[2]]
    }

    pub fn antipode(&self) -> Self {
        SpherePoint(-self.0)
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        let (a, b) = (&self.0, &other.0);
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    /// |p × q|, the sine of the spherical distance.
    pub fn sin_distance(&self, other: &SpherePoint) -> f64 {
        self.0.cross(&other.0).norm()
    }

    /// Chordal distance |p − q|.
    pub fn chordal(&self, other: &SpherePoint) -> f64 {
        (self.0 - other.0).norm()
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

/// Spherical distance in [0, π].
pub fn spherical_distance(p: &SpherePoint, q: &SpherePoint) -> f64 {
    p.dot(q).clamp(-1.0, 1.0).acos()
}

/// A great circle, stored as unit normal plus an oriented orthonormal basis of its plane.
/// Angles along the circle are measured from `basis[0]` towards `basis[1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreatCircle {
    normal: SpherePoint,
    basis: [Vector3<f64>; 2],
}

impl GreatCircle {
    /// Circle with the given normal; `start` is projected into the plane and becomes angle 0.
    pub fn with_start(normal: SpherePoint, start: &Vector3<f64>) -> Result<Self> {
        let n = normal.vector();
        let e1 = start - n * n.dot(start);
        let e1 = SpherePoint::from_vector(e1)?.0;
        let e2 = n.cross(&e1);
        Ok(GreatCircle { normal, basis: [e1, e2] })
    }

    /// Circle with the given normal and an arbitrary start direction.
    pub fn from_normal(normal: SpherePoint) -> Self {
        let n = normal.vector();
        let axis = (0..3)
            .min_by(|&i, &j| n[i].abs().total_cmp(&n[j].abs()))
            .unwrap_or(0);
        let mut e = Vector3::zeros();
        e[axis] = 1.0;
        Self::with_start(normal, &e).expect("coordinate axis least aligned with a unit normal")
    }

    pub fn normal(&self) -> &SpherePoint {
        &self.normal
    }

    pub fn basis(&self) -> &[Vector3<f64>; 2] {
        &self.basis
    }

    pub fn contains(&self, p: &SpherePoint) -> bool {
        self.normal.dot(p).abs() <= ON_CIRCLE_TOL
    }

    fn check_on(&self, p: &SpherePoint) -> Result<()> {
        let off = self.normal.dot(p).abs();
        if off > ON_CIRCLE_TOL {
            return Err(GeometryError::OffCircle(off));
        }
        Ok(())
    }

    /// Angle of (the projection of) `p` in [0, 2π).
    pub fn angle_of(&self, p: &Vector3<f64>) -> f64 {
        let a = p.dot(&self.basis[1]).atan2(p.dot(&self.basis[0]));
        if a < 0.0 {
            (a + TAU).min(TAU.next_down())
        } else {
            a
        }
    }

    pub fn point_at(&self, angle: f64) -> SpherePoint {
        let v = self.basis[0] * angle.cos() + self.basis[1] * angle.sin();
        SpherePoint::from_vector(v).expect("orthonormal basis gives a unit vector")
    }
}

/// The great circle through two points; `p` sits at angle 0 and `q` in (0, π).
pub fn great_circle_through(p: &SpherePoint, q: &SpherePoint) -> Result<GreatCircle> {
    let c = p.vector().cross(q.vector());
    if c.norm() <= PAIR_TOL {
        return Err(GeometryError::DegeneratePair);
    }
    let normal = SpherePoint::from_vector(c)?;
    GreatCircle::with_start(normal, p.vector())
}

/// Value of a cross ratio, possibly infinite.
pub type CrossRatio = f64;

/// Sine cross ratio `[p₁,p₂,p₃,p₄] = sin d(p₂,p₄)·sin d(p₃,p₁) / (sin d(p₃,p₄)·sin d(p₂,p₁))`.
///
/// The points are expected in order along `circle`; only membership is checked.
pub fn spherical_cross_ratio(
    p1: &SpherePoint,
    p2: &SpherePoint,
    p3: &SpherePoint,
    p4: &SpherePoint,
    circle: &GreatCircle,
) -> Result<CrossRatio> {
    for p in [p1, p2, p3, p4] {
        circle.check_on(p)?;
    }
    let (n1, n2) = (p2.sin_distance(p4), p3.sin_distance(p1));
    let (d1, d2) = (p3.sin_distance(p4), p2.sin_distance(p1));
    let vanish = |s: f64| s <= 1e-15;
    let num_zero = vanish(n1) || vanish(n2);
    let den_zero = vanish(d1) || vanish(d2);
    match (num_zero, den_zero) {
        (true, true) => Err(GeometryError::AllDegenerate),
        (false, true) => Ok(f64::INFINITY),
        (true, false) => Ok(0.0),
        (false, false) => Ok((n1 * n2) / (d1 * d2)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One of the six central-projection charts: tangent plane `{x_axis = sign}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Chart {
    axis: usize,
    sign: Sign,
}

impl Chart {
    /// `axis` is 0-based.
    pub fn new(axis: usize, sign: Sign) -> Result<Self> {
        if axis > 2 {
            return Err(GeometryError::InvalidArgument(format!("chart axis {} out of range", axis + 1)));
        }
        Ok(Chart { axis, sign })
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn pole(&self) -> SpherePoint {
        SpherePoint::pole(self.axis, self.sign)
    }

    /// The two remaining axes in increasing order.
    pub fn coordinate_axes(&self) -> [usize; 2] {
        match self.axis {
            0 => [1, 2],
            1 => [0, 2],
            _ => [0, 1],
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.axis + 1, self.sign.symbol())
    }
}

impl FromStr for Chart {
    type Err = GeometryError;

    /// Parses `"2-"`, `"3+"` and the like (1-based axis).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || GeometryError::InvalidArgument(format!("bad chart '{s}', expected e.g. 2- or 3+"));
        let s = s.trim();
        let mut chars = s.chars();
        let axis = chars.next().and_then(|c| c.to_digit(10)).ok_or_else(bad)?;
        let sign = match chars.next() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return Err(bad()),
        };
        if chars.next().is_some() || !(1..=3).contains(&axis) {
            return Err(bad());
        }
        Chart::new(axis as usize - 1, sign)
    }
}

/// A point of a chart's tangent plane in its natural coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPoint {
    pub chart: Chart,
    pub coords: [f64; 2],
}

impl ChartPoint {
    pub fn new(chart: Chart, u: f64, v: f64) -> Self {
        ChartPoint { chart, coords: [u, v] }
    }
}

/// Central projection of the open hemisphere `sign·x_axis > 0` onto the tangent plane.
pub fn project(chart: Chart, p: &SpherePoint) -> Result<ChartPoint> {
    let c = p.coords();
    let a = chart.sign.value() * c[chart.axis];
    if a <= SIGN_ZERO_BAND {
        return Err(GeometryError::OutsideHemisphere(chart.to_string()));
    }
    let [j, k] = chart.coordinate_axes();
    Ok(ChartPoint::new(chart, c[j] / a, c[k] / a))
}

/// Inverse of [`project`].
pub fn lift(chart: Chart, c: &ChartPoint) -> Result<SpherePoint> {
    let [j, k] = chart.coordinate_axes();
    let mut v = Vector3::zeros();
    v[chart.axis] = chart.sign.value();
    v[j] = c.coords[0];
    v[k] = c.coords[1];
    SpherePoint::from_vector(v)
}

/// Sign triple of a point off the coordinate circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiSign(pub [Sign; 3]);

impl MultiSign {
    pub const FUTURE: MultiSign = MultiSign([Sign::Plus; 3]);
    pub const PAST: MultiSign = MultiSign([Sign::Minus; 3]);

    pub fn negated(self) -> MultiSign {
        MultiSign(self.0.map(Sign::flipped))
    }

    pub fn is_mixed(&self) -> bool {
        !(self.0[0] == self.0[1] && self.0[1] == self.0[2])
    }

    pub fn all() -> impl Iterator<Item = MultiSign> {
        (0..8u8).map(|bits| {
            MultiSign([0, 1, 2].map(|i| if bits >> (2 - i) & 1 == 1 { Sign::Minus } else { Sign::Plus }))
        })
    }
}

impl fmt::Display for MultiSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0.map(Sign::symbol);
        write!(f, "({a},{b},{c})")
    }
}

pub fn multi_sign(p: &SpherePoint) -> Result<MultiSign> {
    let c = p.coords();
    if c.iter().any(|x| x.abs() <= SIGN_ZERO_BAND) {
        return Err(GeometryError::OnCoordinateCircle);
    }
    Ok(MultiSign(c.map(Sign::of)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_3, FRAC_PI_6, PI};

    fn sp(x: f64, y: f64, z: f64) -> SpherePoint {
        SpherePoint::new(x, y, z).unwrap()
    }

    #[test]
    fn distance_basics() {
        let (a, b) = (sp(1.0, 0.0, 0.0), sp(0.0, 1.0, 0.0));
        assert!((spherical_distance(&a, &b) - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(spherical_distance(&a, &a), 0.0);
        assert_eq!(spherical_distance(&a, &a.antipode()), PI);
    }

    #[test]
    fn zero_vector_rejected() {
        assert_eq!(SpherePoint::new(0.0, 0.0, 0.0), Err(GeometryError::ZeroVector));
        assert!(SpherePoint::new(f64::NAN, 1.0, 0.0).is_err());
    }

    #[test]
    fn cross_ratio_at_sixth_angles() {
        let c = GreatCircle::from_normal(sp(0.3, -0.2, 0.9));
        let pts: Vec<_> = [0.0, FRAC_PI_6, FRAC_PI_3, FRAC_PI_2].iter().map(|&t| c.point_at(t)).collect();
        let r = spherical_cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3], &c).unwrap();
        assert!((r - 3.0).abs() < 1e-12);
        let one = spherical_cross_ratio(&pts[0], &pts[1], &pts[1], &pts[3], &c).unwrap();
        assert!((one - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cross_ratio_degenerate_cases() {
        let c = GreatCircle::from_normal(sp(0.0, 0.0, 1.0));
        let a = c.point_at(0.0);
        let b = c.point_at(1.0);
        assert_eq!(spherical_cross_ratio(&a, &b, &b, &b, &c), Err(GeometryError::AllDegenerate));
        assert_eq!(spherical_cross_ratio(&a, &a, &b, &c.point_at(2.0), &c).unwrap(), f64::INFINITY);
        let off = sp(0.0, 0.0, 1.0);
        assert!(matches!(spherical_cross_ratio(&a, &off, &b, &b, &c), Err(GeometryError::OffCircle(_))));
    }

    #[test]
    fn cross_ratio_multiplicative() {
        let c = GreatCircle::from_normal(sp(1.0, 2.0, -0.5));
        let [a1, p, q, r, a2] = [0.0, 0.3, 0.7, 1.1, 1.5].map(|t| c.point_at(t));
        let whole = spherical_cross_ratio(&a1, &p, &r, &a2, &c).unwrap();
        let parts = spherical_cross_ratio(&a1, &p, &q, &a2, &c).unwrap()
            * spherical_cross_ratio(&a1, &q, &r, &a2, &c).unwrap();
        assert!((whole / parts - 1.0).abs() < 1e-12);
    }

    #[test]
    fn circle_through_points() {
        let c = great_circle_through(&sp(1.0, 0.0, 0.0), &sp(0.0, 1.0, 0.0)).unwrap();
        assert!((c.normal().coords()[2] - 1.0).abs() < 1e-15);
        let p = sp(1.0, -1.0, 1.0);
        let q = sp(E, -1.0, E);
        let c = great_circle_through(&p, &q).unwrap();
        let n = c.normal().coords();
        assert!(n[1].abs() < 1e-15 && (n[0] + n[2]).abs() < 1e-15 && n[2] > 0.0);
        assert!(c.contains(&p) && c.contains(&q));
        assert!(c.angle_of(p.vector()).abs() < 1e-15);
        let tq = c.angle_of(q.vector());
        assert!(tq > 0.0 && tq < PI);
        assert_eq!(great_circle_through(&p, &p.antipode()), Err(GeometryError::DegeneratePair));
    }

    #[test]
    fn basis_is_orthonormal() {
        let c = GreatCircle::from_normal(sp(0.2, -0.7, 0.4));
        let [e1, e2] = c.basis();
        let n = c.normal().vector();
        for x in [e1.dot(e2), e1.dot(n), e2.dot(n), e1.norm() - 1.0, e2.norm() - 1.0] {
            assert!(x.abs() < 1e-12);
        }
    }

    #[test]
    fn chart_parse_and_display() {
        let c: Chart = "2-".parse().unwrap();
        assert_eq!((c.axis(), c.sign()), (1, Sign::Minus));
        assert_eq!(c.to_string(), "2-");
        assert!("4+".parse::<Chart>().is_err());
        assert!("2".parse::<Chart>().is_err());
        assert!("2-x".parse::<Chart>().is_err());
    }

    #[test]
    fn projection_examples() {
        let c3: Chart = "3+".parse().unwrap();
        let c2: Chart = "2-".parse().unwrap();
        assert_eq!(project(c3, &sp(0.0, 0.0, 1.0)).unwrap().coords, [0.0, 0.0]);
        let t = project(c2, &sp(1.0, -1.0, 1.0)).unwrap().coords;
        assert!((t[0] - 1.0).abs() < 1e-15 && (t[1] - 1.0).abs() < 1e-15);
        assert!(matches!(project(c3, &sp(1.0, 0.0, 0.0)), Err(GeometryError::OutsideHemisphere(_))));
    }

    #[test]
    fn lift_examples() {
        let c2: Chart = "2-".parse().unwrap();
        let p = lift(c2, &ChartPoint::new(c2, 1.0, 1.0)).unwrap();
        let s = 1.0 / 3f64.sqrt();
        for (a, b) in p.coords().iter().zip([s, -s, s]) {
            assert!((a - b).abs() < 1e-15);
        }
        let c1: Chart = "1+".parse().unwrap();
        assert_eq!(lift(c1, &ChartPoint::new(c1, 0.0, 0.0)).unwrap().coords(), [1.0, 0.0, 0.0]);
    }

    #[test]
    fn round_trip() {
        for chart in ["1+", "1-", "2+", "2-", "3+", "3-"].map(|s| s.parse::<Chart>().unwrap()) {
            let c = ChartPoint::new(chart, 0.37, -2.5);
            let back = project(chart, &lift(chart, &c).unwrap()).unwrap();
            assert!((back.coords[0] - 0.37).abs() < 1e-12 && (back.coords[1] + 2.5).abs() < 1e-12);
        }
    }

    #[test]
    fn multi_sign_examples() {
        assert_eq!(multi_sign(&sp(1.0, 1.0, 1.0)).unwrap(), MultiSign::FUTURE);
        assert_eq!(multi_sign(&sp(1.0, -1.0, 1.0)).unwrap().to_string(), "(+,-,+)");
        assert_eq!(multi_sign(&sp(1.0, 0.0, 0.0)), Err(GeometryError::OnCoordinateCircle));
        assert_eq!(MultiSign::all().filter(MultiSign::is_mixed).count(), 6);
    }
}
