//! The antipodal simplex pair, its boundary, and the good-position predicate.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector3;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{GeometryError, Result};
use crate::sampling::stream_rng;
use crate::sphere::{
    great_circle_through, multi_sign, GreatCircle, MultiSign, Sign, SpherePoint, ON_CIRCLE_TOL, PAIR_TOL,
    SIGN_ZERO_BAND,
};

/// Tolerance for contact with a supporting circle.
pub const SUPPORT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Future,
    Past,
    Omega,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Past,
    Future,
}

/// The open positive octant Δ₂ (future) and its antipode Δ̃₂ (past), optionally
/// pushed through a positive diagonal map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntipodalSimplexPair {
    deformation: [f64; 3],
}

impl Default for AntipodalSimplexPair {
    fn default() -> Self {
        Self::standard()
    }
}

impl AntipodalSimplexPair {
    pub fn standard() -> Self {
        AntipodalSimplexPair { deformation: [1.0; 3] }
    }

    /// Pair deformed by `diag(d)`, rescaled to unit determinant.
    pub fn deformed(d: [f64; 3]) -> Result<Self> {
        if d.iter().any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(GeometryError::NonPositiveInput);
        }
        let det = (d[0] * d[1] * d[2]).cbrt();
        Ok(AntipodalSimplexPair { deformation: d.map(|x| x / det) })
    }

    pub fn deformation(&self) -> [f64; 3] {
        self.deformation
    }

    /// Applies `D⁻¹` and renormalizes.
    pub fn undeform(&self, p: &SpherePoint) -> SpherePoint {
        let c = p.coords();
        let d = self.deformation;
        SpherePoint::new(c[0] / d[0], c[1] / d[1], c[2] / d[2]).expect("positive diagonal is invertible")
    }

    pub fn deform(&self, p: &SpherePoint) -> SpherePoint {
        let c = p.coords();
        let d = self.deformation;
        SpherePoint::new(c[0] * d[0], c[1] * d[1], c[2] * d[2]).expect("positive diagonal is invertible")
    }

    pub fn region_membership(&self, p: &SpherePoint) -> Region {
        match multi_sign(&self.undeform(p)) {
            Err(_) => Region::Boundary,
            Ok(MultiSign::FUTURE) => Region::Future,
            Ok(MultiSign::PAST) => Region::Past,
            Ok(_) => Region::Omega,
        }
    }

    /// Intersections of `circle` with K₁ ∪ K₂, sorted by circle angle.
    pub fn chord_boundary_hits(&self, circle: &GreatCircle) -> Result<BoundaryHits> {
        // Positive diagonal maps fix every closed octant, so K₁ and K₂ are the coordinate-plane arcs.
        let n = circle.normal().vector();
        let face_plane = (0..3).find(|&i| n[(i + 1) % 3].abs() <= 1e-15 && n[(i + 2) % 3].abs() <= 1e-15);
        let mut candidates: Vec<Vector3<f64>> = Vec::with_capacity(6);
        for i in 0..3 {
            let mut e = Vector3::zeros();
            e[i] = 1.0;
            let Ok(u) = SpherePoint::from_vector(n.cross(&e)) else { continue };
            let mut u = *u.vector();
            u[i] = 0.0;
            candidates.push(u);
            candidates.push(-u);
        }
        let mut hits: Vec<BoundaryHit> = Vec::new();
        for v in candidates {
            let side = if v.iter().all(|&x| x >= -SIGN_ZERO_BAND) {
                Side::Future
            } else if v.iter().all(|&x| x <= SIGN_ZERO_BAND) {
                Side::Past
            } else {
                continue;
            };
            let mut c = v;
            let mut faces = [false; 3];
            for a in 0..3 {
                if c[a].abs() <= SIGN_ZERO_BAND {
                    c[a] = 0.0;
                    faces[a] = true;
                }
            }
            let point = SpherePoint::from_vector(c)?;
            match hits.iter_mut().find(|h| h.point.chordal(&point) <= 1e-12) {
                Some(h) => (0..3).for_each(|a| h.faces[a] |= faces[a]),
                None => hits.push(BoundaryHit { point, faces, side, angle: circle.angle_of(point.vector()) }),
            }
        }
        if !hits.iter().any(|h| h.side == Side::Future) {
            return Err(GeometryError::NoIntersection("future"));
        }
        if !hits.iter().any(|h| h.side == Side::Past) {
            return Err(GeometryError::NoIntersection("past"));
        }
        hits.sort_by(|a, b| a.angle.total_cmp(&b.angle));
        Ok(BoundaryHits { hits, face_plane })
    }

    /// Whether the open arc ]a,b[ lies in a great circle supporting Δ₂ or Δ̃₂.
    ///
    /// A circle supports the pair when its normal is sign-definite and it touches the
    /// closed simplices; besides the coordinate circles this includes circles through a vertex.
    pub fn in_supporting_circle(&self, a: &SpherePoint, b: &SpherePoint) -> Result<bool> {
        let c = self.undeform(a).vector().cross(self.undeform(b).vector());
        if c.norm() <= PAIR_TOL {
            return Err(GeometryError::DegeneratePair);
        }
        let n = *SpherePoint::from_vector(c)?.vector();
        Ok(sign_definite(&n) && n.iter().any(|x| x.abs() <= SUPPORT_TOL))
    }

    /// Barycenter of the future simplex and its antipode.
    pub fn antipodal_witness(&self) -> (SpherePoint, SpherePoint) {
        let w = self.deform(&SpherePoint::new(1.0, 1.0, 1.0).expect("nonzero"));
        (w, w.antipode())
    }

    /// The pair as two generic convex bodies.
    pub fn bodies(&self) -> (ConvexBody, ConvexBody) {
        (ConvexBody::Simplex(MultiSign::PAST), ConvexBody::Simplex(MultiSign::FUTURE))
    }
}

/// True when the normal has no strictly positive or no strictly negative component, i.e.
/// the circle does not pass through the interior of either simplex.
pub fn sign_definite(n: &Vector3<f64>) -> bool {
    !(n.iter().any(|&x| x > SUPPORT_TOL) && n.iter().any(|&x| x < -SUPPORT_TOL))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryHit {
    pub point: SpherePoint,
    /// Coordinate planes containing the point: one on an edge, two at a vertex.
    pub faces: [bool; 3],
    pub side: Side,
    /// Angle in the parametrization of the circle that produced the hit.
    pub angle: f64,
}

impl BoundaryHit {
    pub fn is_vertex(&self) -> bool {
        self.faces.iter().filter(|&&f| f).count() == 2
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryHits {
    pub hits: Vec<BoundaryHit>,
    /// Set when the whole circle is a coordinate circle (0-based plane index).
    pub face_plane: Option<usize>,
}

impl BoundaryHits {
    pub fn count(&self, side: Side) -> usize {
        self.hits.iter().filter(|h| h.side == side).count()
    }
}

/// Euclidean cone pair: C₁ the open negative orthant (past), C₂ the open positive orthant.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OrthantConePair;

impl OrthantConePair {
    pub fn in_closed_future(&self, x: &Vector3<f64>) -> bool {
        x.iter().all(|&c| c >= 0.0)
    }

    pub fn in_closed_past(&self, x: &Vector3<f64>) -> bool {
        x.iter().all(|&c| c <= 0.0)
    }
}

/// A closed convex spherical body used by the good-position check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConvexBody {
    /// Closed octant with the given signs.
    Simplex(MultiSign),
    /// Closed cap of angular radius `radius` < π/2.
    Cap { center: SpherePoint, radius: f64 },
}

impl ConvexBody {
    fn representative(&self) -> SpherePoint {
        match self {
            ConvexBody::Simplex(ms) => SpherePoint::from_array(ms.0.map(Sign::value)).expect("nonzero"),
            ConvexBody::Cap { center, .. } => *center,
        }
    }

    /// Angular distance from a point to the body (0 inside).
    fn distance_to(&self, x: &SpherePoint) -> f64 {
        match self {
            ConvexBody::Cap { center, radius } => (center.dot(x).clamp(-1.0, 1.0).acos() - radius).max(0.0),
            ConvexBody::Simplex(ms) => {
                let s = ms.0.map(Sign::value);
                let c = x.coords();
                let aligned = [0, 1, 2].map(|i| s[i] * c[i]);
                let clipped = Vector3::from(aligned.map(|v| v.max(0.0)));
                let norm = clipped.norm();
                if norm > 0.0 {
                    norm.min(1.0).acos()
                } else {
                    aligned.iter().copied().fold(f64::NEG_INFINITY, f64::max).clamp(-1.0, 1.0).acos()
                }
            }
        }
    }

    fn closures_disjoint(&self, other: &ConvexBody) -> bool {
        match (self, other) {
            (ConvexBody::Simplex(a), ConvexBody::Simplex(b)) => *a == b.negated(),
            (ConvexBody::Cap { center: c1, radius: r1 }, ConvexBody::Cap { center: c2, radius: r2 }) => {
                c1.dot(c2).clamp(-1.0, 1.0).acos() > r1 + r2
            }
            (ConvexBody::Simplex(_), ConvexBody::Cap { center, radius })
            | (ConvexBody::Cap { center, radius }, ConvexBody::Simplex(_)) => {
                let simplex = if matches!(self, ConvexBody::Simplex(_)) { self } else { other };
                simplex.distance_to(center) > *radius
            }
        }
    }

    /// The arc cut out on `circle`, as (start angle, length) going counterclockwise.
    fn arc_on(&self, circle: &GreatCircle) -> Option<(f64, f64)> {
        let n = circle.normal().vector();
        match self {
            ConvexBody::Cap { center, radius } => {
                let off = center.vector().dot(n).clamp(-1.0, 1.0).asin().abs();
                if off > *radius {
                    return None;
                }
                let mid = circle.angle_of(center.vector());
                let half = (radius.cos() / off.cos()).clamp(-1.0, 1.0).acos();
                Some(((mid - half).rem_euclid(TAU), 2.0 * half))
            }
            ConvexBody::Simplex(ms) => {
                let s = Vector3::from(ms.0.map(Sign::value));
                let inside = |v: &Vector3<f64>| v.iter().zip(s.iter()).all(|(x, s)| x * s >= -SIGN_ZERO_BAND);
                let mut angles: Vec<f64> = Vec::new();
                for i in 0..3 {
                    let mut e = Vector3::zeros();
                    e[i] = 1.0;
                    let cand = n.cross(&e);
                    let cand = if cand.norm() <= 1e-15 {
                        // circle is the coordinate circle of another plane; use the vertices
                        let mut v = Vector3::zeros();
                        v[(i + 1) % 3] = 1.0;
                        v
                    } else {
                        cand.normalize()
                    };
                    for v in [cand, -cand] {
                        if inside(&v) && circle.contains(&SpherePoint::from_vector(v).ok()?) {
                            let a = circle.angle_of(&v);
                            if !angles.iter().any(|b| angular_gap(a, *b) <= 1e-12) {
                                angles.push(a);
                            }
                        }
                    }
                }
                match angles.as_slice() {
                    [] => None,
                    [a] => Some((*a, 0.0)),
                    [a, b, ..] => {
                        let fwd = (b - a).rem_euclid(TAU);
                        Some(if fwd <= PI { (*a, fwd) } else { (*b, TAU - fwd) })
                    }
                }
            }
        }
    }
}

fn angular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

#[derive(Debug, Clone, PartialEq)]
pub enum GoodPosition {
    Pass,
    Fail(GoodPositionWitness),
}

#[derive(Debug, Clone, PartialEq)]
pub enum GoodPositionWitness {
    /// Condition (1): the closures meet.
    ClosuresIntersect,
    /// Condition (2): a circle meeting both bodies leaves a complementary arc that is too long.
    LongArc { circle: GreatCircle, arcs: [f64; 2] },
}

/// Complement arcs of two disjoint arcs on the same circle, or `None` if either body misses it.
fn complement_arcs(b1: &ConvexBody, b2: &ConvexBody, circle: &GreatCircle) -> Option<[f64; 2]> {
    let (s1, l1) = b1.arc_on(circle)?;
    let (s2, l2) = b2.arc_on(circle)?;
    let gap12 = (s2 - (s1 + l1)).rem_euclid(TAU);
    let gap21 = (s1 - (s2 + l2)).rem_euclid(TAU);
    Some([gap12, gap21])
}

fn long_arc(b1: &ConvexBody, b2: &ConvexBody, circle: &GreatCircle) -> Option<GoodPositionWitness> {
    let arcs = complement_arcs(b1, b2, circle)?;
    arcs.iter()
        .any(|&a| a >= PI - ON_CIRCLE_TOL)
        .then_some(GoodPositionWitness::LongArc { circle: *circle, arcs })
}

/// Checks condition (1) exactly and condition (2) on the circle through the two
/// representatives plus `samples` random circles.
pub fn good_position_check(b1: &ConvexBody, b2: &ConvexBody, samples: usize, seed: u64) -> GoodPosition {
    if !b1.closures_disjoint(b2) {
        return GoodPosition::Fail(GoodPositionWitness::ClosuresIntersect);
    }
    if let Ok(c) = great_circle_through(&b1.representative(), &b2.representative()) {
        if let Some(w) = long_arc(b1, b2, &c) {
            return GoodPosition::Fail(w);
        }
    }
    let witness = (0..samples as u64).into_par_iter().find_map_first(|i| {
        let mut rng = stream_rng(seed, i);
        let v = Vector3::new(rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal));
        let circle = GreatCircle::from_normal(SpherePoint::from_vector(v).ok()?);
        long_arc(b1, b2, &circle)
    });
    match witness {
        Some(w) => GoodPosition::Fail(w),
        None => GoodPosition::Pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(x: f64, y: f64, z: f64) -> SpherePoint {
        SpherePoint::new(x, y, z).unwrap()
    }

    fn close(a: &SpherePoint, b: &SpherePoint) -> bool {
        a.chordal(b) < 1e-12
    }

    #[test]
    fn membership() {
        let pair = AntipodalSimplexPair::standard();
        assert_eq!(pair.region_membership(&sp(1.0, 1.0, 1.0)), Region::Future);
        assert_eq!(pair.region_membership(&sp(-1.0, -1.0, -2.0)), Region::Past);
        assert_eq!(pair.region_membership(&sp(1.0, -1.0, 1.0)), Region::Omega);
        assert_eq!(pair.region_membership(&sp(1.0, 0.0, 1.0)), Region::Boundary);
    }

    #[test]
    fn hits_on_diagonal_plane() {
        let pair = AntipodalSimplexPair::standard();
        let c = GreatCircle::from_normal(sp(-1.0, 0.0, 1.0));
        let h = pair.chord_boundary_hits(&c).unwrap();
        assert_eq!((h.count(Side::Future), h.count(Side::Past)), (2, 2));
        assert!(h.hits.iter().any(|x| x.side == Side::Future && close(&x.point, &sp(1.0, 0.0, 1.0))));
        let vertex = h.hits.iter().find(|x| x.side == Side::Past && close(&x.point, &sp(0.0, -1.0, 0.0))).unwrap();
        assert!(vertex.is_vertex());
        assert!(h.hits.windows(2).all(|w| w[0].angle <= w[1].angle));
    }

    #[test]
    fn hits_on_coordinate_circle() {
        let pair = AntipodalSimplexPair::standard();
        let c = GreatCircle::from_normal(sp(0.0, 0.0, 1.0));
        let h = pair.chord_boundary_hits(&c).unwrap();
        assert_eq!(h.face_plane, Some(2));
        assert!(h.hits.iter().all(|x| x.point.coords()[2] == 0.0 && x.faces[2]));
    }

    #[test]
    fn hits_future_pair() {
        let pair = AntipodalSimplexPair::standard();
        let c = GreatCircle::from_normal(sp(2.0, -1.0, -1.0));
        let h = pair.chord_boundary_hits(&c).unwrap();
        let fut: Vec<_> = h.hits.iter().filter(|x| x.side == Side::Future).collect();
        assert_eq!(fut.len(), 2);
        for want in [sp(1.0, 0.0, 2.0), sp(1.0, 2.0, 0.0)] {
            assert!(fut.iter().any(|x| close(&x.point, &want)));
        }
    }

    #[test]
    fn hits_antipodal_symmetry() {
        let pair = AntipodalSimplexPair::standard();
        let h = pair.chord_boundary_hits(&GreatCircle::from_normal(sp(0.3, -1.1, 0.5))).unwrap();
        for x in h.hits.iter().filter(|x| x.side == Side::Future) {
            let anti = x.point.antipode();
            assert!(h.hits.iter().any(|y| y.side == Side::Past && close(&y.point, &anti)));
        }
    }

    #[test]
    fn missing_circle() {
        let pair = AntipodalSimplexPair::standard();
        let c = GreatCircle::from_normal(sp(1.0, 1.0, 1.0));
        assert_eq!(pair.chord_boundary_hits(&c), Err(GeometryError::NoIntersection("future")));
    }

    #[test]
    fn supporting_circles() {
        let pair = AntipodalSimplexPair::standard();
        assert!(pair.in_supporting_circle(&sp(1.0, 0.0, 0.0), &sp(0.0, 0.0, 1.0)).unwrap());
        assert!(!pair.in_supporting_circle(&sp(0.0, -1.0, 0.0), &sp(1.0, 0.0, 1.0)).unwrap());
        assert!(pair.in_supporting_circle(&sp(0.0, 0.0, 1.0), &sp(1.0, -1.0, 0.3)).unwrap());
        assert_eq!(
            pair.in_supporting_circle(&sp(0.0, 1.0, 0.0), &sp(0.0, -1.0, 0.0)),
            Err(GeometryError::DegeneratePair)
        );
    }

    #[test]
    fn witnesses() {
        let (w, m) = AntipodalSimplexPair::standard().antipodal_witness();
        assert!(close(&w, &sp(1.0, 1.0, 1.0)) && close(&m, &sp(-1.0, -1.0, -1.0)));
        let d = AntipodalSimplexPair::deformed([2.0, 1.0, 1.0]).unwrap();
        let (w, _) = d.antipodal_witness();
        assert!(close(&w, &sp(2.0, 1.0, 1.0)));
        assert_eq!(d.region_membership(&w), Region::Future);
        assert!(AntipodalSimplexPair::deformed([1.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn standard_pair_in_good_position() {
        let (a, b) = AntipodalSimplexPair::standard().bodies();
        assert_eq!(good_position_check(&a, &b, 2000, 1), GoodPosition::Pass);
    }

    #[test]
    fn identical_simplices_fail() {
        let f = ConvexBody::Simplex(MultiSign::FUTURE);
        assert_eq!(good_position_check(&f, &f, 10, 1), GoodPosition::Fail(GoodPositionWitness::ClosuresIntersect));
    }

    #[test]
    fn small_caps_fail_with_long_arc() {
        let c1 = ConvexBody::Cap { center: sp(0.1f64.sin(), 0.0, 0.1f64.cos()), radius: 0.05 };
        let c2 = ConvexBody::Cap { center: sp(-(0.1f64.sin()), 0.0, 0.1f64.cos()), radius: 0.05 };
        match good_position_check(&c1, &c2, 100, 3) {
            GoodPosition::Fail(GoodPositionWitness::LongArc { arcs, .. }) => {
                let long = arcs[0].max(arcs[1]);
                assert!((long - (TAU - 0.3)).abs() < 1e-12, "{long}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn simplex_cap_disjointness() {
        let f = ConvexBody::Simplex(MultiSign::FUTURE);
        let far = ConvexBody::Cap { center: sp(-1.0, -1.0, -1.0), radius: 0.3 };
        let near = ConvexBody::Cap { center: sp(-0.1, 1.0, 1.0), radius: 0.2 };
        assert!(f.closures_disjoint(&far));
        assert!(!f.closures_disjoint(&near));
    }
}
