//! Deterministic random sampling of points, chords and chains.
//!
//! Every sample draws from its own ChaCha8 stream, keyed by the root seed and the sample
//! index, so serial and parallel runs see identical inputs.
//!
//! Ordered pairs come from chords rather than chart light cones: draw a great circle whose
//! normal has both signs (margin [`SIGN_MARGIN`]), pick one of its two Ω arcs, and place points
//! at fractions of that arc in `[ARC_MARGIN, 1 − ARC_MARGIN]`. Chains continue through a
//! second random circle.

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::bodies::{AntipodalSimplexPair, Side};
use crate::sphere::{GreatCircle, SpherePoint};

pub const SIGN_MARGIN: f64 = 0.02;
pub const ARC_MARGIN: f64 = 0.02;
const MAX_TRIES: usize = 1000;

/// Generator for sample `index` under `seed`; independent of evaluation order.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_vector<R: Rng>(rng: &mut R) -> Vector3<f64> {
    Vector3::new(rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_sphere_point<R: Rng>(rng: &mut R) -> SpherePoint {
    loop {
        if let Ok(p) = SpherePoint::from_vector(gaussian_vector(rng)) {
            return p;
        }
    }
}

/// A point of Ω at least `margin` away from every coordinate circle.
pub fn random_omega_point<R: Rng>(rng: &mut R, margin: f64) -> SpherePoint {
    loop {
        let p = random_sphere_point(rng);
        let c = p.coords();
        let mixed = c.iter().any(|&x| x > 0.0) && c.iter().any(|&x| x < 0.0);
        if mixed && c.iter().all(|x| x.abs() > margin) {
            return p;
        }
    }
}

/// Log-uniform value in `[lo, hi]`.
pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo.ln()..=hi.ln()).exp()
}

fn well_mixed(n: &Vector3<f64>) -> bool {
    n.iter().any(|&x| x > SIGN_MARGIN) && n.iter().any(|&x| x < -SIGN_MARGIN)
}

/// A random great circle crossing both open simplices.
pub fn random_transversal_circle<R: Rng>(rng: &mut R) -> GreatCircle {
    loop {
        let n = random_sphere_point(rng);
        if well_mixed(n.vector()) {
            return GreatCircle::from_normal(n);
        }
    }
}

/// An arc ]a₁, a₂[ ⊂ Ω on an oriented circle, with a₁ at angle 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaArc {
    pub circle: GreatCircle,
    pub a1: SpherePoint,
    pub a2: SpherePoint,
    pub length: f64,
}

impl OmegaArc {
    pub fn at_fraction(&self, f: f64) -> SpherePoint {
        self.circle.point_at(f * self.length)
    }

    /// Past-to-future Ω arc of `circle` in its own orientation.
    pub fn on_circle(pair: &AntipodalSimplexPair, circle: &GreatCircle) -> Option<OmegaArc> {
        let hits = pair.chord_boundary_hits(circle).ok()?.hits;
        let n = hits.len();
        let i = (0..n).find(|&i| hits[i].side == Side::Past && hits[(i + 1) % n].side == Side::Future)?;
        let (a1, a2) = (hits[i].point, hits[(i + 1) % n].point);
        let oriented = GreatCircle::with_start(*circle.normal(), a1.vector()).ok()?;
        let length = oriented.angle_of(a2.vector());
        Some(OmegaArc { circle: oriented, a1, a2, length })
    }
}

pub fn random_arc<R: Rng>(pair: &AntipodalSimplexPair, rng: &mut R) -> OmegaArc {
    for _ in 0..MAX_TRIES {
        let c = random_transversal_circle(rng);
        let c = if rng.random_bool(0.5) { GreatCircle::from_normal(c.normal().antipode()) } else { c };
        if let Some(arc) = OmegaArc::on_circle(pair, &c) {
            return arc;
        }
    }
    unreachable!("transversal circles always carry an Ω arc")
}

/// `k` sorted fractions in `[ARC_MARGIN, 1 − ARC_MARGIN]`, pairwise separated.
pub fn sorted_fractions<R: Rng, const K: usize>(rng: &mut R) -> [f64; K] {
    loop {
        let mut f = [0.0; K];
        for x in f.iter_mut() {
            *x = rng.random_range(ARC_MARGIN..=1.0 - ARC_MARGIN);
        }
        f.sort_by(f64::total_cmp);
        if f.windows(2).all(|w| w[1] - w[0] > 1e-3) {
            return f;
        }
    }
}

/// `p < q` on a common random chord.
pub fn random_before_pair<R: Rng>(pair: &AntipodalSimplexPair, rng: &mut R) -> (SpherePoint, SpherePoint) {
    let arc = random_arc(pair, rng);
    let [u, v] = sorted_fractions(rng);
    (arc.at_fraction(u), arc.at_fraction(v))
}

/// `p < q < r` on one chord.
pub fn random_collinear_chain<R: Rng>(
    pair: &AntipodalSimplexPair,
    rng: &mut R,
) -> (SpherePoint, SpherePoint, SpherePoint) {
    let arc = random_arc(pair, rng);
    let [u, v, w] = sorted_fractions(rng);
    (arc.at_fraction(u), arc.at_fraction(v), arc.at_fraction(w))
}

/// A point after `q` on a random chord through `q`.
pub fn random_successor<R: Rng>(pair: &AntipodalSimplexPair, q: &SpherePoint, rng: &mut R) -> SpherePoint {
    for _ in 0..MAX_TRIES {
        let Ok(n) = SpherePoint::from_vector(q.vector().cross(&gaussian_vector(rng))) else { continue };
        if !well_mixed(n.vector()) {
            continue;
        }
        for normal in [n, n.antipode()] {
            let Ok(circle) = GreatCircle::with_start(normal, q.vector()) else { continue };
            let Ok(hits) = pair.chord_boundary_hits(&circle) else { continue };
            let Some(first) = hits.hits.iter().find(|h| h.angle > 0.0) else { continue };
            if first.side == Side::Future {
                let f = rng.random_range(ARC_MARGIN..=1.0 - ARC_MARGIN);
                return circle.point_at(f * first.angle);
            }
        }
    }
    unreachable!("a transversal circle through an Ω point leaves towards the future one way")
}

/// `p < q` and `q < r` on two different chords.
pub fn random_chain<R: Rng>(pair: &AntipodalSimplexPair, rng: &mut R) -> (SpherePoint, SpherePoint, SpherePoint) {
    let (p, q) = random_before_pair(pair, rng);
    let r = random_successor(pair, &q, rng);
    (p, q, r)
}

/// Random positive diagonal with log-uniform entries.
pub fn random_diagonal<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> [f64; 3] {
    [0; 3].map(|_| log_uniform(rng, lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::Region;
    use crate::order::{relate, CausalRelation};

    #[test]
    fn streams_are_reproducible() {
        let a: f64 = stream_rng(7, 3).random();
        let b: f64 = stream_rng(7, 3).random();
        let c: f64 = stream_rng(7, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn pairs_are_ordered() {
        let pair = AntipodalSimplexPair::standard();
        for i in 0..200 {
            let mut rng = stream_rng(11, i);
            let (p, q) = random_before_pair(&pair, &mut rng);
            assert_eq!(pair.region_membership(&p), Region::Omega);
            assert_eq!(relate(&pair, &p, &q).unwrap(), CausalRelation::Before, "sample {i}");
            let r = random_successor(&pair, &q, &mut rng);
            assert_eq!(relate(&pair, &q, &r).unwrap(), CausalRelation::Before, "sample {i}");
        }
    }

    #[test]
    fn arcs_run_from_past_to_future() {
        let pair = AntipodalSimplexPair::standard();
        let mut rng = stream_rng(5, 0);
        for _ in 0..100 {
            let arc = random_arc(&pair, &mut rng);
            assert!(arc.a1.coords().iter().all(|&x| x <= 1e-12));
            assert!(arc.a2.coords().iter().all(|&x| x >= -1e-12));
            assert!(arc.length > 0.0 && arc.length < std::f64::consts::PI);
        }
    }
}
