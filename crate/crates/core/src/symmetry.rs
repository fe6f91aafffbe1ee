//! The six regions of Ω and the action of (ℝ₊)² × ℤ₃ × ℤ₂ on them.

use std::fmt;

use nalgebra::Vector3;
use serde::Serialize;

use crate::bodies::AntipodalSimplexPair;
use crate::error::{GeometryError, Result};
use crate::finsler::{Quadrant, RegionKind};
use crate::metrics::hilbert;
use crate::order::{relate, CausalRelation};
use crate::sampling::{random_before_pair, stream_rng};
use crate::sphere::{multi_sign, Chart, MultiSign, Sign, SpherePoint};
use rayon::prelude::*;

/// A mixed multi-sign, labelling one of the six components of Ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegionId(MultiSign);

impl RegionId {
    pub fn new(ms: MultiSign) -> Result<Self> {
        if ms.is_mixed() {
            Ok(RegionId(ms))
        } else {
            Err(GeometryError::NotInOmega)
        }
    }

    pub fn all() -> impl Iterator<Item = RegionId> {
        MultiSign::all().filter(MultiSign::is_mixed).map(RegionId)
    }

    pub fn signs(&self) -> MultiSign {
        self.0
    }

    /// The axis whose sign differs from the other two.
    fn odd_axis(&self) -> (usize, Sign) {
        let s = self.0 .0;
        let i = (0..3).find(|&i| s[i] != s[(i + 1) % 3] && s[i] != s[(i + 2) % 3]).expect("mixed signs");
        (i, s[i])
    }

    pub fn frame(&self) -> RegionFrame {
        RegionFrame::of(*self)
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for RegionId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Chart and coordinate order in which a region shows up as Q1 or Q2, with the past simplex as Q3.
///
/// A region with a single `−` at axis `a` uses the chart `(a, −)` in its natural order and is Q1.
/// A region with a single `+` at axis `k` (its past-adjacent sign pattern) is the Q2 of the
/// chart `(k+2, −)`, read with first coordinate `x_{k+1}` and second `x_k`. Orientation
/// determinants differ between frames; only the quadrant structure matters here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionFrame {
    pub region: RegionId,
    pub chart: Chart,
    /// Ambient axes read as the planar (x, y).
    pub axes: [usize; 2],
    pub quadrant: Quadrant,
}

impl RegionFrame {
    pub fn of(region: RegionId) -> Self {
        let (i, sign) = region.odd_axis();
        match sign {
            Sign::Minus => {
                let chart = Chart::new(i, Sign::Minus).expect("axis in range");
                RegionFrame { region, chart, axes: chart.coordinate_axes(), quadrant: Quadrant::Q1 }
            }
            Sign::Plus => {
                let chart = Chart::new((i + 2) % 3, Sign::Minus).expect("axis in range");
                RegionFrame { region, chart, axes: [(i + 1) % 3, i], quadrant: Quadrant::Q2 }
            }
        }
    }

    pub fn kind(&self) -> RegionKind {
        self.quadrant.into()
    }

    /// Planar coordinates of a point in the open chart hemisphere.
    pub fn coords(&self, p: &SpherePoint) -> Result<[f64; 2]> {
        let c = p.coords();
        let a = -c[self.chart.axis()];
        if a <= 0.0 {
            return Err(GeometryError::OutsideHemisphere(self.chart.to_string()));
        }
        Ok([c[self.axes[0]] / a, c[self.axes[1]] / a])
    }

    pub fn lift(&self, xy: [f64; 2]) -> Result<SpherePoint> {
        let mut v = Vector3::zeros();
        v[self.chart.axis()] = -1.0;
        v[self.axes[0]] = xy[0];
        v[self.axes[1]] = xy[1];
        SpherePoint::from_vector(v)
    }
}

pub fn region_of(pair: &AntipodalSimplexPair, p: &SpherePoint) -> Result<RegionId> {
    RegionId::new(multi_sign(&pair.undeform(p))?)
}

/// `flip ∘ cycleᵏ ∘ diag(λ₁, λ₂, 1)` acting projectively on S².
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupElement {
    pub scale: [f64; 2],
    /// Power of `(x₁,x₂,x₃) ↦ (x₂,x₃,x₁)`, in 0..3.
    pub cycle: u8,
    pub flip: bool,
}

impl Default for GroupElement {
    fn default() -> Self {
        Self::IDENTITY
    }
}

fn cycle_vec(v: [f64; 3], k: u8) -> [f64; 3] {
    let k = (k % 3) as usize;
    [v[k % 3], v[(1 + k) % 3], v[(2 + k) % 3]]
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { scale: [1.0, 1.0], cycle: 0, flip: false };

    pub fn new(scale: [f64; 2], cycle: u8, flip: bool) -> Result<Self> {
        if scale.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(GeometryError::NonPositiveInput);
        }
        Ok(GroupElement { scale, cycle: cycle % 3, flip })
    }

    pub fn scaling(l1: f64, l2: f64) -> Result<Self> {
        Self::new([l1, l2], 0, false)
    }

    pub fn cycled(k: u8) -> Self {
        GroupElement { cycle: k % 3, ..Self::IDENTITY }
    }

    pub fn flipped() -> Self {
        GroupElement { flip: true, ..Self::IDENTITY }
    }

    fn diagonal(&self) -> [f64; 3] {
        [self.scale[0], self.scale[1], 1.0]
    }

    fn from_diagonal(d: [f64; 3], cycle: u8, flip: bool) -> Self {
        GroupElement { scale: [d[0] / d[2], d[1] / d[2]], cycle: cycle % 3, flip }
    }

    pub fn is_scale_free(&self) -> bool {
        self.scale == [1.0, 1.0]
    }

    pub fn apply_vector(&self, v: &Vector3<f64>) -> Vector3<f64> {
        let d = self.diagonal();
        let scaled = [v[0] * d[0], v[1] * d[1], v[2] * d[2]];
        let c = Vector3::from(cycle_vec(scaled, self.cycle));
        if self.flip {
            -c
        } else {
            c
        }
    }

    pub fn apply(&self, p: &SpherePoint) -> SpherePoint {
        SpherePoint::from_vector(self.apply_vector(p.vector())).expect("invertible map")
    }

    /// `self ∘ other`: apply `other` first.
    ///
    /// The ℤ₃ factor permutes the diagonal entries, so cycles and scalings do not commute.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        // Cᵏ·D = D'·Cᵏ with D' the diagonal read through the cycle.
        let dg = self.diagonal();
        let dh = other.diagonal();
        let k = other.cycle as usize;
        let moved = [0, 1, 2].map(|j| dg[(j + 3 - k) % 3]);
        let d = [0, 1, 2].map(|j| moved[j] * dh[j]);
        Self::from_diagonal(d, self.cycle + other.cycle, self.flip ^ other.flip)
    }

    pub fn inverse(&self) -> GroupElement {
        let k = self.cycle as usize;
        let inv = self.diagonal().map(|x| 1.0 / x);
        let d = [0, 1, 2].map(|j| inv[(j + k) % 3]);
        Self::from_diagonal(d, (3 - self.cycle) % 3, self.flip)
    }

    /// The six scale-free elements.
    pub fn scale_free() -> impl Iterator<Item = GroupElement> {
        (0..3u8).flat_map(|k| [false, true].map(|f| GroupElement { cycle: k, flip: f, ..Self::IDENTITY }))
    }
}

/// Image of a region under a scale-free element.
pub fn act_on_region(g: &GroupElement, r: RegionId) -> RegionId {
    let s = r.signs().0.map(Sign::value);
    let v = g.apply_vector(&Vector3::from(s));
    RegionId(MultiSign([v[0], v[1], v[2]].map(Sign::of)))
}

/// A group element mapping `p` to `q`: the unique scale-free part matching regions,
/// followed by the diagonal solving the remaining coordinate ratios.
pub fn transitivity_witness(pair: &AntipodalSimplexPair, p: &SpherePoint, q: &SpherePoint) -> Result<GroupElement> {
    let (rp, rq) = (region_of(pair, p)?, region_of(pair, q)?);
    let base = GroupElement::scale_free()
        .find(|g| act_on_region(g, rp) == rq)
        .expect("scale-free elements act transitively on regions");
    let target = base.inverse().apply(q).coords();
    let pc = p.coords();
    let d = [0, 1, 2].map(|i| target[i] / pc[i]);
    let scale = GroupElement::from_diagonal(d, 0, false);
    Ok(base.compose(&scale))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitReport {
    pub samples: usize,
    pub max_deviation: f64,
    /// Every image pair kept (or, under the flip, reversed) its order.
    pub order_ok: bool,
}

/// Compares `hilbert(p, q)` with the distance of the image pair over sampled ordered pairs of
/// the standard simplex pair.
pub fn orbit_check(g: &GroupElement, samples: usize, seed: u64) -> OrbitReport {
    let pair = AntipodalSimplexPair::standard();
    let per_sample: Vec<(f64, bool)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let (p, q) = random_before_pair(&pair, &mut rng);
            let (gp, gq) = (g.apply(&p), g.apply(&q));
            let (a, b) = if g.flip { (gq, gp) } else { (gp, gq) };
            let ordered = relate(&pair, &a, &b) == Ok(CausalRelation::Before);
            let dev = match (hilbert(&pair, &p, &q), hilbert(&pair, &a, &b)) {
                (Ok(h), Ok(k)) => (h.value() - k.value()).abs(),
                _ => f64::INFINITY,
            };
            (dev, ordered)
        })
        .collect();
    OrbitReport {
        samples,
        max_deviation: per_sample.iter().map(|s| s.0).fold(0.0, f64::max),
        order_ok: per_sample.iter().all(|s| s.1),
    }
}
