//! Causal order on Ω and the chord (a₁, p, q, a₂) realizing it.

use serde::Serialize;

use crate::bodies::{sign_definite, AntipodalSimplexPair, BoundaryHit, Region, Side};
use crate::error::{GeometryError, Result};
use crate::sphere::{great_circle_through, GreatCircle, SpherePoint as P};

/// Chordal distance below which two points are the same.
pub const EQUAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalRelation {
    Equal,
    Before,
    After,
    Unrelated,
}

impl CausalRelation {
    pub fn reversed(self) -> Self {
        match self {
            CausalRelation::Before => CausalRelation::After,
            CausalRelation::After => CausalRelation::Before,
            r => r,
        }
    }
}

/// Ordered quadruple a₁, p, q, a₂ on a great circle. The circle is re-parametrized so that
/// a₁ sits at angle 0 and angles increase towards a₂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chord {
    pub circle: GreatCircle,
    pub a1: BoundaryHit,
    pub a2: BoundaryHit,
    pub p: P,
    pub q: P,
    /// Angles of a₁, p, q, a₂.
    pub angles: [f64; 4],
}

impl Chord {
    pub fn length(&self) -> f64 {
        self.angles[3]
    }
}

fn check_omega(pair: &AntipodalSimplexPair, p: &P) -> Result<()> {
    match pair.region_membership(p) {
        Region::Omega => Ok(()),
        _ => Err(GeometryError::NotInOmega),
    }
}

pub fn relate(pair: &AntipodalSimplexPair, p: &P, q: &P) -> Result<CausalRelation> {
    check_omega(pair, p)?;
    check_omega(pair, q)?;
    if p.chordal(q) <= EQUAL_TOL {
        return Ok(CausalRelation::Equal);
    }
    if chord_unchecked(pair, p, q).is_ok() {
        Ok(CausalRelation::Before)
    } else if chord_unchecked(pair, q, p).is_ok() {
        Ok(CausalRelation::After)
    } else {
        Ok(CausalRelation::Unrelated)
    }
}

/// The chord of a pair with `p` before `q`.
pub fn chord(pair: &AntipodalSimplexPair, p: &P, q: &P) -> Result<Chord> {
    check_omega(pair, p)?;
    check_omega(pair, q)?;
    chord_unchecked(pair, p, q)
}

fn chord_unchecked(pair: &AntipodalSimplexPair, p: &P, q: &P) -> Result<Chord> {
    let circle = great_circle_through(p, q).map_err(|_| GeometryError::NotRelated)?;
    // A sign-definite normal means the circle supports the simplices or misses them.
    if sign_definite(circle.normal().vector()) {
        return Err(GeometryError::NotRelated);
    }
    let hits = pair.chord_boundary_hits(&circle).map_err(|_| GeometryError::NotRelated)?;
    if hits.count(Side::Future) != 2 || hits.count(Side::Past) != 2 {
        return Err(GeometryError::NotRelated);
    }
    // p is at angle 0 and q in (0, π); walk forward and backward from p to the boundary.
    let tq = circle.angle_of(q.vector());
    let forward = hits.hits.iter().find(|h| h.angle > 0.0).ok_or(GeometryError::NotRelated)?;
    let backward = hits.hits.iter().rev().find(|h| h.angle > 0.0).ok_or(GeometryError::NotRelated)?;
    let (a1, a2, reversed) = if tq < forward.angle {
        (backward, forward, false)
    } else if tq > backward.angle {
        (forward, backward, true)
    } else {
        return Err(GeometryError::NotRelated);
    };
    if a1.side != Side::Past || a2.side != Side::Future {
        return Err(GeometryError::NotRelated);
    }
    let normal = if reversed { circle.normal().antipode() } else { *circle.normal() };
    let oriented = GreatCircle::with_start(normal, a1.point.vector())?;
    let angle = |x: &P| oriented.angle_of(x.vector());
    let angles = [0.0, angle(p), angle(q), angle(&a2.point)];
    if !(angles[1] < angles[2] && angles[2] < angles[3]) {
        return Err(GeometryError::NotRelated);
    }
    let rehit = |h: &BoundaryHit| BoundaryHit { angle: angle(&h.point), ..*h };
    Ok(Chord { circle: oriented, a1: BoundaryHit { angle: 0.0, ..*a1 }, a2: rehit(a2), p: *p, q: *q, angles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::{lift, Chart, ChartPoint, SpherePoint};
    use std::f64::consts::E;

    fn sp(x: f64, y: f64, z: f64) -> SpherePoint {
        SpherePoint::new(x, y, z).unwrap()
    }

    fn chart_point(u: f64, v: f64) -> SpherePoint {
        let c: Chart = "2-".parse().unwrap();
        lift(c, &ChartPoint::new(c, u, v)).unwrap()
    }

    #[test]
    fn chart_slope_decides_order() {
        let pair = AntipodalSimplexPair::standard();
        let p = chart_point(1.0, 1.0);
        assert_eq!(relate(&pair, &p, &chart_point(E, E)).unwrap(), CausalRelation::Before);
        assert_eq!(relate(&pair, &chart_point(E, E), &p).unwrap(), CausalRelation::After);
        assert_eq!(relate(&pair, &p, &chart_point(2.0, 0.5)).unwrap(), CausalRelation::Unrelated);
        assert_eq!(relate(&pair, &p, &p).unwrap(), CausalRelation::Equal);
    }

    #[test]
    fn outside_omega() {
        let pair = AntipodalSimplexPair::standard();
        let r = relate(&pair, &sp(1.0, 1.0, 1.0), &sp(1.0, -1.0, 1.0));
        assert_eq!(r, Err(GeometryError::NotInOmega));
    }

    #[test]
    fn pinned_chord() {
        let pair = AntipodalSimplexPair::standard();
        let c = chord(&pair, &sp(1.0, -1.0, 1.0), &sp(E, -1.0, E)).unwrap();
        assert!(c.a1.point.chordal(&sp(0.0, -1.0, 0.0)) < 1e-12);
        assert!(c.a2.point.chordal(&sp(1.0, 0.0, 1.0)) < 1e-12);
        assert!(c.angles.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn projected_euclidean_chord() {
        let pair = AntipodalSimplexPair::standard();
        let c = chord(&pair, &sp(-1.0, -2.0, 1.0), &sp(1.0, -1.0, 2.0)).unwrap();
        assert!(c.a1.point.chordal(&sp(-1.0, -1.0, 0.0)) < 1e-12);
        assert!(c.a2.point.chordal(&sp(1.0, 0.0, 1.0)) < 1e-12);
        for x in [c.a1.point, c.p, c.q, c.a2.point] {
            assert!(c.circle.contains(&x));
        }
    }

    #[test]
    fn unrelated_has_no_chord() {
        let pair = AntipodalSimplexPair::standard();
        let r = chord(&pair, &chart_point(1.0, 1.0), &chart_point(2.0, 0.5));
        assert_eq!(r, Err(GeometryError::NotRelated));
        let r = chord(&pair, &sp(1.0, -1.0, 1.0), &sp(-1.0, 1.0, -1.0));
        assert_eq!(r, Err(GeometryError::NotRelated));
    }

    #[test]
    fn antipodal_duality() {
        let pair = AntipodalSimplexPair::standard();
        let (p, q) = (chart_point(1.0, 2.0), chart_point(3.0, 4.0));
        assert_eq!(relate(&pair, &p, &q).unwrap(), CausalRelation::Before);
        assert_eq!(relate(&pair, &q.antipode(), &p.antipode()).unwrap(), CausalRelation::Before);
    }

    #[test]
    fn supporting_circle_is_not_a_chord() {
        let pair = AntipodalSimplexPair::standard();
        // both on the circle with normal (1,1,0), which touches the simplices at ±e₃
        let (p, q) = (sp(1.0, -1.0, 0.5), sp(1.0, -1.0, 2.0));
        assert_eq!(relate(&pair, &p, &q).unwrap(), CausalRelation::Unrelated);
    }
}
