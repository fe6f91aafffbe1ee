//! Minkowski functionals of the timelike Hilbert metric in planar charts, their
//! logarithmic normal forms, light cones and indicatrices.

use serde::Serialize;

use crate::error::{GeometryError, Result};

/// Relative band in which a component counts as zero for cone classification.
pub const NULL_TOL: f64 = 1e-12;

/// Where the base point of a tangent vector sits in the chart plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Quadrant {
    /// x > 0, y > 0
    Q1,
    /// x < 0, y > 0
    Q2,
}

/// The two normal forms of the functional after the logarithmic change of variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RegionKind {
    TypeQ1,
    TypeQ2,
}

impl From<Quadrant> for RegionKind {
    fn from(q: Quadrant) -> Self {
        match q {
            Quadrant::Q1 => RegionKind::TypeQ1,
            Quadrant::Q2 => RegionKind::TypeQ2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartTangent {
    pub base: [f64; 2],
    pub vector: [f64; 2],
}

impl ChartTangent {
    pub fn new(base: [f64; 2], vector: [f64; 2]) -> Self {
        ChartTangent { base, vector }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogTangent {
    pub base: [f64; 2],
    pub vector: [f64; 2],
}

impl LogTangent {
    /// The norm of the vector; the base point plays no role.
    pub fn normed(&self, kind: RegionKind) -> Result<f64> {
        normed_functional(self.vector, kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeClass {
    #[serde(rename = "future")]
    FuturePointing,
    #[serde(rename = "past")]
    PastPointing,
    Null,
    Spacelike,
}

fn check_base(base: [f64; 2], quadrant: Quadrant) -> Result<()> {
    let [x, y] = base;
    let inside = match quadrant {
        Quadrant::Q1 => x > 0.0 && y > 0.0,
        Quadrant::Q2 => x < 0.0 && y > 0.0,
    } && x.is_finite()
        && y.is_finite();
    if inside {
        Ok(())
    } else {
        Err(GeometryError::BaseOutsideQuadrant)
    }
}

/// Logarithmic coordinates: `(log x, log y)` on Q1 and `(log(−x), log y)` on Q2. Vectors map
/// to `(v₁/x, v₂/y)` on Q1 and `(v₁/(−x), v₂/y)` on Q2.
pub fn to_log_coords(t: &ChartTangent, quadrant: Quadrant) -> Result<LogTangent> {
    check_base(t.base, quadrant)?;
    let [x, y] = t.base;
    let [v1, v2] = t.vector;
    Ok(match quadrant {
        Quadrant::Q1 => LogTangent { base: [x.ln(), y.ln()], vector: [v1 / x, v2 / y] },
        Quadrant::Q2 => LogTangent { base: [(-x).ln(), y.ln()], vector: [v1 / -x, v2 / y] },
    })
}

/// Inverse of the vector part of [`to_log_coords`].
pub fn from_log_vector(base: [f64; 2], log_vector: [f64; 2], quadrant: Quadrant) -> Result<[f64; 2]> {
    check_base(base, quadrant)?;
    let [x, y] = base;
    Ok(match quadrant {
        Quadrant::Q1 => [log_vector[0] * x, log_vector[1] * y],
        Quadrant::Q2 => [log_vector[0] * -x, log_vector[1] * y],
    })
}

fn in_open_past(w: [f64; 2], kind: RegionKind, tol: f64) -> bool {
    match kind {
        RegionKind::TypeQ1 => w[0] < -tol && w[1] < -tol,
        RegionKind::TypeQ2 => w[1] < -tol && w[0] + w[1] < -tol,
    }
}

fn on_null_line(w: [f64; 2], kind: RegionKind, tol: f64) -> bool {
    match kind {
        RegionKind::TypeQ1 => w[0].abs() <= tol || w[1].abs() <= tol,
        RegionKind::TypeQ2 => w[1].abs() <= tol || (w[0] + w[1]).abs() <= tol,
    }
}

/// Cone class of a log-coordinate vector.
pub fn classify_log(w: [f64; 2], kind: RegionKind) -> ConeClass {
    let tol = NULL_TOL * w[0].hypot(w[1]);
    if on_null_line(w, kind, tol) {
        ConeClass::Null
    } else if in_open_past(w, kind, tol) {
        ConeClass::PastPointing
    } else if in_open_past([-w[0], -w[1]], kind, tol) {
        ConeClass::FuturePointing
    } else {
        ConeClass::Spacelike
    }
}

/// Light-cone class of a tangent vector at a base point in the given quadrant.
pub fn cone_classify(t: &ChartTangent, quadrant: Quadrant) -> Result<ConeClass> {
    let w = to_log_coords(t, quadrant)?.vector;
    Ok(classify_log(w, quadrant.into()))
}

/// `½|v|(1/r⁺ + 1/r⁻)` evaluated case by case in the chart plane. Zero off the timelike cone.
pub fn minkowski_functional(t: &ChartTangent, quadrant: Quadrant) -> Result<f64> {
    if t.vector == [0.0, 0.0] {
        return Err(GeometryError::ZeroVector);
    }
    let class = cone_classify(t, quadrant)?;
    let [x, y] = t.base;
    let [v1, v2] = match class {
        ConeClass::Null | ConeClass::Spacelike => return Ok(0.0),
        ConeClass::PastPointing => t.vector,
        ConeClass::FuturePointing => [-t.vector[0], -t.vector[1]],
    };
    Ok(match quadrant {
        Quadrant::Q1 => {
            // the ray leaves through the negative x-axis when v₂/v₁ < y/x
            if v2 / v1 < y / x {
                -0.5 * v2 / y
            } else {
                -0.5 * v1 / x
            }
        }
        Quadrant::Q2 => {
            if v1 <= 0.0 {
                -0.5 * v2 / y
            } else {
                // the ray crosses Q₃ and exits through the negative y-axis at distance r̂⁻ = −x/sin θ
                -0.5 * v2 / y + 0.5 * v1 / x
            }
        }
    })
}

/// The base-independent norm in logarithmic coordinates.
pub fn normed_functional(w: [f64; 2], kind: RegionKind) -> Result<f64> {
    if w == [0.0, 0.0] {
        return Err(GeometryError::ZeroVector);
    }
    let [a, b] = match classify_log(w, kind) {
        ConeClass::Null | ConeClass::Spacelike => return Ok(0.0),
        ConeClass::PastPointing => w,
        ConeClass::FuturePointing => [-w[0], -w[1]],
    };
    Ok(match kind {
        RegionKind::TypeQ1 => {
            if a < b {
                -0.5 * b
            } else {
                -0.5 * a
            }
        }
        RegionKind::TypeQ2 => {
            if a <= 0.0 {
                -0.5 * b
            } else {
                -0.5 * (a + b)
            }
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Past,
    Future,
}

/// Half-extent of the drawing box for the unbounded indicatrix branches.
pub const INDICATRIX_EXTENT: f64 = 8.0;

/// Past branch of `{p̃ = 1}` as a two-leg polyline clipped to the drawing box.
fn past_polyline(kind: RegionKind) -> [[f64; 2]; 3] {
    let e = INDICATRIX_EXTENT;
    match kind {
        RegionKind::TypeQ1 => [[-2.0, -e], [-2.0, -2.0], [-e, -2.0]],
        RegionKind::TypeQ2 => [[-e, -2.0], [0.0, -2.0], [e - 2.0, -e]],
    }
}

/// Null rays through the origin in logarithmic coordinates.
pub fn null_directions(kind: RegionKind) -> [[f64; 2]; 4] {
    match kind {
        RegionKind::TypeQ1 => [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]],
        RegionKind::TypeQ2 => [[-1.0, 0.0], [1.0, -1.0], [1.0, 0.0], [-1.0, 1.0]],
    }
}

/// `count` points per branch on the unit level set, ordered along the polyline. The corner is
/// included whenever `count ≥ 3`; `count = 2` gives the two ends.
pub fn indicatrix_sample(kind: RegionKind, count: usize) -> Result<Vec<([f64; 2], Branch)>> {
    if count < 2 {
        return Err(GeometryError::InvalidArgument("indicatrix needs at least 2 points per branch".into()));
    }
    let [start, corner, end] = past_polyline(kind);
    let lerp = |a: [f64; 2], b: [f64; 2], s: f64| [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
    let past: Vec<[f64; 2]> = if count == 2 {
        vec![start, end]
    } else {
        let len = |a: [f64; 2], b: [f64; 2]| (b[0] - a[0]).hypot(b[1] - a[1]);
        let (l1, l2) = (len(start, corner), len(corner, end));
        let rest = count - 1;
        let k1 = ((rest as f64 * l1 / (l1 + l2)).round() as usize).clamp(1, rest - 1);
        let k2 = rest - k1;
        let mut pts: Vec<[f64; 2]> = (0..k1).map(|i| lerp(start, corner, i as f64 / k1 as f64)).collect();
        pts.push(corner);
        pts.extend((1..=k2).map(|j| lerp(corner, end, j as f64 / k2 as f64)));
        pts
    };
    let future = past.iter().map(|p| [-p[0], -p[1]]);
    Ok(past
        .iter()
        .map(|&p| (p, Branch::Past))
        .chain(future.map(|p| (p, Branch::Future)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(base: [f64; 2], v: [f64; 2]) -> ChartTangent {
        ChartTangent::new(base, v)
    }

    #[test]
    fn classification() {
        assert_eq!(cone_classify(&t([2.0, 1.0], [-1.0, -1.0]), Quadrant::Q1).unwrap(), ConeClass::PastPointing);
        assert_eq!(cone_classify(&t([2.0, 1.0], [1.0, 3.0]), Quadrant::Q1).unwrap(), ConeClass::FuturePointing);
        assert_eq!(cone_classify(&t([2.0, 1.0], [0.0, 1.0]), Quadrant::Q1).unwrap(), ConeClass::Null);
        assert_eq!(cone_classify(&t([2.0, 1.0], [1.0, -1.0]), Quadrant::Q1).unwrap(), ConeClass::Spacelike);
        assert_eq!(cone_classify(&t([-1.0, 1.0], [3.0, -1.0]), Quadrant::Q2).unwrap(), ConeClass::Spacelike);
        assert_eq!(cone_classify(&t([-1.0, 1.0], [1.0, -3.0]), Quadrant::Q2).unwrap(), ConeClass::PastPointing);
        assert_eq!(cone_classify(&t([-1.0, 1.0], [1.0, -1.0]), Quadrant::Q2).unwrap(), ConeClass::Null);
        assert_eq!(cone_classify(&t([1.0, 1.0], [1.0, 1.0]), Quadrant::Q2), Err(GeometryError::BaseOutsideQuadrant));
    }

    #[test]
    fn functional_examples() {
        let p = |b, v, q| minkowski_functional(&t(b, v), q).unwrap();
        assert_eq!(p([2.0, 1.0], [-1.0, -1.0], Quadrant::Q1), 0.25);
        assert_eq!(p([2.0, 1.0], [-1.0, -0.25], Quadrant::Q1), 0.125);
        assert_eq!(p([1.0, 1.0], [1.0, 1.0], Quadrant::Q1), 0.5);
        assert_eq!(p([2.0, 1.0], [0.0, 1.0], Quadrant::Q1), 0.0);
        assert_eq!(p([-1.0, 1.0], [1.0, -3.0], Quadrant::Q2), 1.0);
        assert_eq!(minkowski_functional(&t([1.0, 1.0], [0.0, 0.0]), Quadrant::Q1), Err(GeometryError::ZeroVector));
    }

    #[test]
    fn functional_is_even() {
        for (b, v, q) in [([2.0, 1.0], [-1.0, -0.3], Quadrant::Q1), ([-0.5, 2.0], [0.7, -3.0], Quadrant::Q2)] {
            let a = minkowski_functional(&t(b, v), q).unwrap();
            let c = minkowski_functional(&t(b, [-v[0], -v[1]]), q).unwrap();
            assert_eq!(a, c);
        }
    }

    #[test]
    fn log_coordinates() {
        let l = to_log_coords(&t([2.0, 1.0], [-1.0, -1.0]), Quadrant::Q1).unwrap();
        assert_eq!(l.vector, [-0.5, -1.0]);
        let l = to_log_coords(&t([1.0, 1.0], [0.3, -7.0]), Quadrant::Q1).unwrap();
        assert_eq!(l.vector, [0.3, -7.0]);
        let l = to_log_coords(&t([-1.0, 1.0], [1.0, -3.0]), Quadrant::Q2).unwrap();
        assert_eq!(l.vector, [1.0, -3.0]);
        let back = from_log_vector([-2.0, 3.0], [0.5, -1.0], Quadrant::Q2).unwrap();
        assert_eq!(to_log_coords(&t([-2.0, 3.0], back), Quadrant::Q2).unwrap().vector, [0.5, -1.0]);
    }

    #[test]
    fn normed_examples() {
        assert_eq!(normed_functional([-1.0, -2.0], RegionKind::TypeQ1).unwrap(), 0.5);
        assert_eq!(normed_functional([1.0, -3.0], RegionKind::TypeQ2).unwrap(), 1.0);
        assert_eq!(normed_functional([3.0, -1.0], RegionKind::TypeQ2).unwrap(), 0.0);
        assert_eq!(normed_functional([0.0, -1.0], RegionKind::TypeQ1).unwrap().to_bits(), 0f64.to_bits());
        assert_eq!(normed_functional([0.0, 0.0], RegionKind::TypeQ1), Err(GeometryError::ZeroVector));
    }

    #[test]
    fn functional_matches_normal_form() {
        for (b, v, q) in [
            ([2.0, 1.0], [-1.0, -0.25], Quadrant::Q1),
            ([0.3, 5.0], [2.0, 1.0], Quadrant::Q1),
            ([-0.5, 2.0], [0.7, -3.0], Quadrant::Q2),
            ([-4.0, 0.2], [-1.0, -0.1], Quadrant::Q2),
        ] {
            let tan = t(b, v);
            let w = to_log_coords(&tan, q).unwrap().vector;
            let a = minkowski_functional(&tan, q).unwrap();
            let n = normed_functional(w, q.into()).unwrap();
            assert!((a - n).abs() <= 1e-12 * a.max(1.0), "{a} {n}");
        }
    }

    #[test]
    fn indicatrix_on_level_set() {
        for kind in [RegionKind::TypeQ1, RegionKind::TypeQ2] {
            let pts = indicatrix_sample(kind, 64).unwrap();
            assert_eq!(pts.len(), 128);
            for (w, _) in &pts {
                assert!((normed_functional(*w, kind).unwrap() - 1.0).abs() <= 1e-12);
                assert!((normed_functional([2.0 * w[0], 2.0 * w[1]], kind).unwrap() - 2.0).abs() <= 1e-12);
            }
        }
        let ends = indicatrix_sample(RegionKind::TypeQ2, 2).unwrap();
        assert_eq!(ends.len(), 4);
        assert_eq!(ends[0].0, [-INDICATRIX_EXTENT, -2.0]);
        assert!(indicatrix_sample(RegionKind::TypeQ1, 1).is_err());
    }
}
