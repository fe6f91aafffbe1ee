//! Reproducible property suites behind `tlh verify`.
//!
//! Each suite is a list of checks. A sampled check evaluates a closure on per-sample ChaCha
//! streams in parallel and assembles results in index order, so reports depend only on the
//! seed and flags. The suite reports the check with the largest deviation-to-tolerance ratio;
//! its deviation and tolerance are the suite's, which keeps `pass` equivalent to
//! `max_deviation ≤ tolerance`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nalgebra::Vector3;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bodies::{good_position_check, AntipodalSimplexPair, ConvexBody, GoodPosition, GoodPositionWitness, OrthantConePair};
use crate::error::{GeometryError, Result};
use crate::finsler::{
    from_log_vector, minkowski_functional, normed_functional, null_directions, to_log_coords, ChartTangent, LogTangent,
    Quadrant, RegionKind,
};
use crate::golden;
use crate::metrics::{
    degenerate_chart_hilbert, euclidean_hilbert, funk, hilbert, hilbert_routes, lorentz_distance, quadrant_hilbert_cases,
    quadrant_hilbert_max, reverse_funk, LorentzEvent,
};
use crate::order::{relate, CausalRelation};
use crate::sampling::{
    log_uniform, random_arc, random_before_pair, random_chain, random_collinear_chain, random_diagonal, random_omega_point,
    random_sphere_point, sorted_fractions, stream_rng,
};
use crate::sphere::{great_circle_through, lift, spherical_cross_ratio, Chart, ChartPoint, GreatCircle, Sign, SpherePoint};
use crate::symmetry::{act_on_region, region_of, transitivity_witness, GroupElement, RegionFrame, RegionId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    TimeInequality,
    Additivity,
    PhiIsometry,
    ProjectiveInvariance,
    GroupOrbit,
    Linearization,
    EqConsistency,
    GoodPosition,
    Golden,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::TimeInequality,
        Suite::Additivity,
        Suite::PhiIsometry,
        Suite::ProjectiveInvariance,
        Suite::GroupOrbit,
        Suite::Linearization,
        Suite::EqConsistency,
        Suite::GoodPosition,
        Suite::Golden,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TimeInequality => "time-inequality",
            Suite::Additivity => "additivity",
            Suite::PhiIsometry => "phi-isometry",
            Suite::ProjectiveInvariance => "projective-invariance",
            Suite::GroupOrbit => "group-orbit",
            Suite::Linearization => "linearization",
            Suite::EqConsistency => "eq-consistency",
            Suite::GoodPosition => "good-position",
            Suite::Golden => "golden",
        }
    }

    pub fn default_samples(self) -> usize {
        match self {
            Suite::Linearization => 1_000,
            _ => 10_000,
        }
    }

    /// Tolerance of the suite's headline checks; `--tol` replaces it.
    pub fn default_tolerance(self) -> f64 {
        match self {
            Suite::EqConsistency => 1e-12,
            Suite::Linearization => 1e-12,
            _ => 1e-9,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| GeometryError::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyOptions {
    pub samples: Option<usize>,
    pub seed: u64,
    pub tol: Option<f64>,
    pub timing: bool,
}


#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub samples: usize,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl SubCheck {
    /// Deviations of NaN count as infinite. The counterexample is the first failing sample.
    pub fn from_outcomes(name: &str, tolerance: f64, outcomes: Vec<(f64, Value)>) -> SubCheck {
        let samples = outcomes.len();
        let mut max_deviation: f64 = 0.0;
        let mut counterexample = None;
        for (i, (d, sample)) in outcomes.into_iter().enumerate() {
            let d = if d.is_nan() { f64::INFINITY } else { d };
            max_deviation = max_deviation.max(d);
            if d > tolerance && counterexample.is_none() {
                counterexample = Some(json!({ "index": i, "deviation": d, "sample": sample }));
            }
        }
        SubCheck {
            name: name.to_string(),
            samples,
            tolerance,
            max_deviation,
            pass: counterexample.is_none(),
            counterexample,
            detail: None,
        }
    }

    fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }

    fn ratio(&self) -> f64 {
        if self.max_deviation == 0.0 {
            0.0
        } else if self.tolerance == 0.0 {
            f64::INFINITY
        } else {
            self.max_deviation / self.tolerance
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub pass: bool,
    pub worst_check: String,
    pub checks: Vec<SubCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl SuiteReport {
    fn assemble(suite: Suite, samples: usize, seed: u64, checks: Vec<SubCheck>) -> SuiteReport {
        let worst = checks
            .iter()
            .fold(None::<&SubCheck>, |w, c| match w {
                Some(w) if w.ratio() >= c.ratio() => Some(w),
                _ => Some(c),
            })
            .expect("every suite has checks");
        SuiteReport {
            suite: suite.name().to_string(),
            samples,
            seed,
            tolerance: worst.tolerance,
            max_deviation: worst.max_deviation,
            pass: checks.iter().all(|c| c.pass),
            worst_check: worst.name.clone(),
            counterexample: worst.counterexample.clone(),
            checks,
            wall_time_s: None,
        }
    }
}

/// Sampling context shared by the checks of one suite run.
pub(crate) struct Ctx {
    pub seed: u64,
    pub samples: usize,
    /// Tolerance for the headline checks.
    pub tol: f64,
}

impl Ctx {
    /// Runs `f` on `n` independent streams; `salt` separates the streams of different checks.
    pub fn sampled<F>(&self, name: &str, salt: u64, n: usize, tol: f64, f: F) -> SubCheck
    where
        F: Fn(&mut ChaCha8Rng) -> (f64, Value) + Sync,
    {
        let outcomes: Vec<(f64, Value)> = (0..n as u64)
            .into_par_iter()
            .map(|i| f(&mut stream_rng(self.seed, (salt << 32) | i)))
            .collect();
        SubCheck::from_outcomes(name, tol, outcomes)
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    let start = Instant::now();
    let samples = match suite {
        Suite::Golden => golden::cases().len(),
        _ => opts.samples.unwrap_or(suite.default_samples()),
    };
    let ctx = Ctx { seed: opts.seed, samples, tol: opts.tol.unwrap_or(suite.default_tolerance()) };
    let checks = match suite {
        Suite::TimeInequality => time_inequality(&ctx),
        Suite::Additivity => additivity(&ctx),
        Suite::PhiIsometry => phi_isometry(&ctx),
        Suite::ProjectiveInvariance => projective_invariance(&ctx),
        Suite::GroupOrbit => group_orbit(&ctx),
        Suite::Linearization => linearization(&ctx),
        Suite::EqConsistency => eq_consistency(&ctx),
        Suite::GoodPosition => good_position(&ctx),
        Suite::Golden => golden::checks(&ctx),
    };
    let mut report = SuiteReport::assemble(suite, samples, opts.seed, checks);
    if opts.timing {
        report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    report
}

fn pt(p: &SpherePoint) -> [f64; 3] {
    p.coords()
}

fn vec3(v: &Vector3<f64>) -> [f64; 3] {
    [v[0], v[1], v[2]]
}

fn or_inf(r: Result<f64>) -> f64 {
    r.unwrap_or(f64::INFINITY)
}

fn exact(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn h(pair: &AntipodalSimplexPair, p: &SpherePoint, q: &SpherePoint) -> Result<f64> {
    hilbert(pair, p, q).map(|d| d.value())
}

fn time_inequality(ctx: &Ctx) -> Vec<SubCheck> {
    let pair = AntipodalSimplexPair::standard();
    let n = ctx.samples;
    let chain_check = |name: &str, dist: fn(&AntipodalSimplexPair, &SpherePoint, &SpherePoint) -> Result<f64>| {
        ctx.sampled(name, 1, n, ctx.tol, |rng| {
            let (p, q, r) = random_chain(&pair, rng);
            let gap = (|| Ok(dist(&pair, &p, &q)? + dist(&pair, &q, &r)? - dist(&pair, &p, &r)?))();
            (or_inf(gap).max(0.0), json!({ "p": pt(&p), "q": pt(&q), "r": pt(&r) }))
        })
    };
    vec![
        chain_check("hilbert", h),
        chain_check("funk", |pair, p, q| funk(pair, p, q).map(|d| d.value())),
        ctx.sampled("transitivity", 1, n, 0.0, |rng| {
            let (p, q, r) = random_chain(&pair, rng);
            (exact(relate(&pair, &p, &r) == Ok(CausalRelation::Before)), json!({ "p": pt(&p), "q": pt(&q), "r": pt(&r) }))
        }),
        ctx.sampled("antisymmetry", 2, n, 0.0, |rng| {
            let (p, q) = random_before_pair(&pair, rng);
            let ok = relate(&pair, &p, &q) == Ok(CausalRelation::Before) && relate(&pair, &q, &p) == Ok(CausalRelation::After);
            (exact(ok), json!({ "p": pt(&p), "q": pt(&q) }))
        }),
        ctx.sampled("lorentz", 3, n, ctx.tol, |rng| {
            let x: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
            let y = add(&x, &future_timelike(rng));
            let z = add(&y, &future_timelike(rng));
            let (x, y, z) = (LorentzEvent(x), LorentzEvent(y), LorentzEvent(z));
            let gap = (|| {
                Ok(lorentz_distance(&x, &y)?.value() + lorentz_distance(&y, &z)?.value()
                    - lorentz_distance(&x, &z)?.value())
            })();
            (or_inf(gap).max(0.0), json!({ "x": x.0, "y": y.0, "z": z.0 }))
        }),
    ]
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A future timelike displacement in 1+2 dimensions.
fn future_timelike(rng: &mut ChaCha8Rng) -> Vec<f64> {
    let t = rng.random_range(0.1..2.0);
    let r = t * rng.random_range(0.0..0.95);
    let phi = rng.random_range(0.0..2.0 * PI);
    vec![t, r * phi.cos(), r * phi.sin()]
}

fn additivity(ctx: &Ctx) -> Vec<SubCheck> {
    let pair = AntipodalSimplexPair::standard();
    let check = |name: &str, dist: fn(&AntipodalSimplexPair, &SpherePoint, &SpherePoint) -> Result<f64>| {
        ctx.sampled(name, 1, ctx.samples, ctx.tol, |rng| {
            let (p, q, r) = random_collinear_chain(&pair, rng);
            let gap = (|| Ok(dist(&pair, &p, &r)? - dist(&pair, &p, &q)? - dist(&pair, &q, &r)?))();
            (or_inf(gap).abs(), json!({ "p": pt(&p), "q": pt(&q), "r": pt(&r) }))
        })
    };
    vec![
        check("hilbert", h),
        check("funk", |pair, p, q| funk(pair, p, q).map(|d| d.value())),
        check("reverse-funk", |pair, p, q| reverse_funk(pair, p, q).map(|d| d.value())),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PhiChord {
    Finite,
    IdealFuture,
    IdealPast,
}

/// A related pair in ℝ³ whose Euclidean chord has the requested endpoint shape.
fn phi_pair(pair: &AntipodalSimplexPair, kind: PhiChord, rng: &mut ChaCha8Rng) -> (Vector3<f64>, Vector3<f64>) {
    let arc = random_arc(pair, rng);
    let a = log_uniform(rng, 0.2, 5.0) * arc.a1.vector();
    let b = log_uniform(rng, 0.2, 5.0) * arc.a2.vector();
    match kind {
        PhiChord::Finite => {
            let [u, v] = sorted_fractions(rng);
            (a + u * (b - a), a + v * (b - a))
        }
        PhiChord::IdealFuture => {
            let (u, v) = ordered_log_uniform(rng);
            (a + u * arc.a2.vector(), a + v * arc.a2.vector())
        }
        PhiChord::IdealPast => {
            let (u, v) = ordered_log_uniform(rng);
            (b + v * arc.a1.vector(), b + u * arc.a1.vector())
        }
    }
}

fn ordered_log_uniform(rng: &mut ChaCha8Rng) -> (f64, f64) {
    loop {
        let (u, v) = (log_uniform(rng, 0.05, 20.0), log_uniform(rng, 0.05, 20.0));
        if (u - v).abs() > 1e-3 * u.max(v) {
            return (u.min(v), u.max(v));
        }
    }
}

pub(crate) fn phi_deviation(pair: &AntipodalSimplexPair, x: &Vector3<f64>, y: &Vector3<f64>) -> Result<f64> {
    let he = euclidean_hilbert(&OrthantConePair, x, y)?.value();
    let hs = h(pair, &SpherePoint::from_vector(*x)?, &SpherePoint::from_vector(*y)?)?;
    Ok((he - hs).abs())
}

fn phi_isometry(ctx: &Ctx) -> Vec<SubCheck> {
    let pair = AntipodalSimplexPair::standard();
    [("finite", PhiChord::Finite), ("ideal-future", PhiChord::IdealFuture), ("ideal-past", PhiChord::IdealPast)]
        .into_iter()
        .enumerate()
        .map(|(i, (name, kind))| {
            ctx.sampled(name, i as u64 + 1, ctx.samples, ctx.tol, |rng| {
                let (x, y) = phi_pair(&pair, kind, rng);
                (or_inf(phi_deviation(&pair, &x, &y)), json!({ "x": vec3(&x), "y": vec3(&y) }))
            })
        })
        .collect()
}

fn scaled(d: [f64; 3], p: &SpherePoint) -> Result<SpherePoint> {
    let v = p.vector();
    SpherePoint::new(d[0] * v[0], d[1] * v[1], d[2] * v[2])
}

fn projective_invariance(ctx: &Ctx) -> Vec<SubCheck> {
    let pair = AntipodalSimplexPair::standard();
    vec![
        ctx.sampled("diagonal", 1, ctx.samples, ctx.tol, |rng| {
            let (p, q) = random_before_pair(&pair, rng);
            let d = random_diagonal(rng, 0.1, 10.0);
            let dev = (|| {
                let (dp, dq) = (scaled(d, &p)?, scaled(d, &q)?);
                if relate(&pair, &dp, &dq)? != CausalRelation::Before {
                    return Ok(f64::INFINITY);
                }
                Ok((h(&pair, &dp, &dq)? - h(&pair, &p, &q)?).abs())
            })();
            (or_inf(dev), json!({ "p": pt(&p), "q": pt(&q), "diagonal": d }))
        }),
        ctx.sampled("cross-ratio", 2, ctx.samples, ctx.tol, |rng| {
            let circle = GreatCircle::from_normal(random_sphere_point(rng));
            let f: [f64; 4] = sorted_fractions(rng);
            let pts = f.map(|t| circle.point_at(3.0 * t));
            let d = random_diagonal(rng, 0.1, 10.0);
            let dev = (|| {
                let before = spherical_cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3], &circle)?;
                let img = [scaled(d, &pts[0])?, scaled(d, &pts[1])?, scaled(d, &pts[2])?, scaled(d, &pts[3])?];
                let c = great_circle_through(&img[0], &img[3])?;
                let after = spherical_cross_ratio(&img[0], &img[1], &img[2], &img[3], &c)?;
                Ok((after - before).abs() / before)
            })();
            (or_inf(dev), json!({ "points": pts.map(|p| p.coords()), "diagonal": d }))
        }),
    ]
}

fn random_group_element(rng: &mut ChaCha8Rng, cycle: u8, flip: bool) -> GroupElement {
    GroupElement::new([log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.1, 10.0)], cycle, flip).expect("positive scale")
}

/// Deviation of `H(g·p, g·q)` from `H(p, q)`, infinite if the image pair is misordered.
pub(crate) fn orbit_deviation(pair: &AntipodalSimplexPair, g: &GroupElement, p: &SpherePoint, q: &SpherePoint) -> f64 {
    let (gp, gq) = (g.apply(p), g.apply(q));
    let (a, b) = if g.flip { (gq, gp) } else { (gp, gq) };
    or_inf((|| {
        if relate(pair, &a, &b)? != CausalRelation::Before {
            return Ok(f64::INFINITY);
        }
        Ok((h(pair, &a, &b)? - h(pair, p, q)?).abs())
    })())
}

fn region_by_index(i: usize) -> RegionId {
    RegionId::all().nth(i % 6).expect("six regions")
}

/// Planar base of a frame from log coordinates.
fn planar_base(frame: &RegionFrame, log_base: [f64; 2]) -> [f64; 2] {
    let [x, y] = log_base.map(f64::exp);
    match frame.quadrant {
        Quadrant::Q1 => [x, y],
        Quadrant::Q2 => [-x, y],
    }
}

fn group_orbit(ctx: &Ctx) -> Vec<SubCheck> {
    let pair = AntipodalSimplexPair::standard();
    let n = ctx.samples;
    let orbit = |name: &str, salt: u64, pick: fn(&mut ChaCha8Rng) -> GroupElement| {
        ctx.sampled(name, salt, n, ctx.tol, |rng| {
            let (p, q) = random_before_pair(&pair, rng);
            let g = pick(rng);
            (orbit_deviation(&pair, &g, &p, &q), json!({ "p": pt(&p), "q": pt(&q), "g": g }))
        })
    };
    let regions: Vec<(f64, Value)> = RegionId::all()
        .map(|r| {
            let mut images: Vec<RegionId> = GroupElement::scale_free().map(|g| act_on_region(&g, r)).collect();
            images.sort();
            images.dedup();
            (exact(images.len() == 6), json!({ "region": r }))
        })
        .collect();
    vec![
        orbit("scaling", 1, |rng| random_group_element(rng, 0, false)),
        orbit("cycle", 2, |rng| {
            let k = rng.random_range(1..=2);
            random_group_element(rng, k, false)
        }),
        orbit("flip", 3, |rng| {
            let k = rng.random_range(0..=2);
            random_group_element(rng, k, true)
        }),
        SubCheck::from_outcomes("simple-transitivity", 0.0, regions),
        ctx.sampled("witness", 4, n, 1e-10, |rng| {
            let p = random_omega_point(rng, 1e-3);
            let q = random_omega_point(rng, 1e-3);
            let pc = p.coords();
            let qc = q.coords();
            let same = SpherePoint::from_array([0, 1, 2].map(|i| qc[i].abs().copysign(pc[i]))).expect("nonzero");
            let dev = (|| {
                let g = transitivity_witness(&pair, &p, &q)?;
                let s = transitivity_witness(&pair, &p, &same)?;
                if s.cycle != 0 || s.flip {
                    return Ok(f64::INFINITY);
                }
                Ok(g.apply(&p).chordal(&q).max(s.apply(&p).chordal(&same)))
            })();
            (or_inf(dev), json!({ "p": pt(&p), "q": pt(&q) }))
        }),
        ctx.sampled("cycle-labels", 5, n, 0.0, |rng| {
            let p = random_omega_point(rng, 1e-3);
            let c = GroupElement::cycled(1);
            let ok = match (region_of(&pair, &c.apply(&p)), region_of(&pair, &p)) {
                (Ok(a), Ok(b)) => a == act_on_region(&c, b),
                _ => false,
            };
            (exact(ok), json!({ "p": pt(&p) }))
        }),
        ctx.sampled("log-translation", 6, n, 1e-12, |rng| {
            let (frame, b, g, w) = translation_sample(rng);
            let dev = log_translation_deviation(&frame, b, &g, w).map(|d| d.0);
            (or_inf(dev), json!({ "region": frame.region, "log_base": b, "g": g, "log_vector": w }))
        }),
        ctx.sampled("log-translation-norm", 7, n, 0.0, |rng| {
            let (frame, b, g, w) = translation_sample(rng);
            let dev = log_translation_deviation(&frame, b, &g, w).map(|d| d.1);
            (or_inf(dev), json!({ "region": frame.region, "log_base": b, "g": g, "log_vector": w }))
        }),
    ]
}

fn translation_sample(rng: &mut ChaCha8Rng) -> (RegionFrame, [f64; 2], GroupElement, [f64; 2]) {
    let frame = region_by_index(rng.random_range(0..6)).frame();
    let b = [rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5)];
    let g = random_group_element(rng, 0, false);
    let w = random_timelike(frame.kind(), rng);
    (frame, b, g, w)
}

/// A diagonal element moves log coordinates by the log of its relative scales and leaves
/// log-coordinate vectors, hence the norm, unchanged. Returns the deviation of the moved
/// base and pushed vector, and 0 or ∞ for bitwise equality of the norm at the moved base.
fn log_translation_deviation(frame: &RegionFrame, b: [f64; 2], g: &GroupElement, w: [f64; 2]) -> Result<(f64, f64)> {
    let c = planar_base(frame, b);
    let gp = g.apply(&frame.lift(c)?);
    let c2 = frame.coords(&gp)?;
    let d = [g.scale[0], g.scale[1], 1.0];
    let mu = frame.axes.map(|a| d[a] / d[frame.chart.axis()]);
    let v = from_log_vector(c, w, frame.quadrant)?;
    let image = to_log_coords(&ChartTangent::new(c2, [mu[0] * v[0], mu[1] * v[1]]), frame.quadrant)?;
    let shift = (0..2).map(|i| (image.base[i] - b[i] - mu[i].ln()).abs()).fold(0.0, f64::max);
    let kind = frame.kind();
    let moved = LogTangent { base: image.base, vector: w }.normed(kind)?;
    let here = LogTangent { base: b, vector: w }.normed(kind)?;
    let bitwise = if moved.to_bits() == here.to_bits() { 0.0 } else { f64::INFINITY };
    let pushed = (normed_functional(image.vector, kind)? - here).abs() / here.max(1.0);
    Ok((shift.max(pushed), bitwise))
}

/// A future timelike log-coordinate vector with both null lines and the norm's seam kept at
/// a margin.
pub(crate) fn random_timelike(kind: RegionKind, rng: &mut ChaCha8Rng) -> [f64; 2] {
    match kind {
        RegionKind::TypeQ1 => [rng.random_range(0.1..1.0), rng.random_range(0.1..1.0)],
        RegionKind::TypeQ2 => loop {
            let b = rng.random_range(0.1..1.0);
            let a: f64 = rng.random_range(-b + 0.1..1.0);
            if a.abs() >= 0.05 {
                return [a, b];
            }
        },
    }
}

fn random_kind(rng: &mut ChaCha8Rng) -> RegionKind {
    if rng.random_bool(0.5) {
        RegionKind::TypeQ1
    } else {
        RegionKind::TypeQ2
    }
}

fn quadrant_of(kind: RegionKind) -> Quadrant {
    match kind {
        RegionKind::TypeQ1 => Quadrant::Q1,
        RegionKind::TypeQ2 => Quadrant::Q2,
    }
}

pub const LINEARIZATION_STEPS: [f64; 3] = [1e-2, 1e-3, 1e-4];
pub const DECAY_BAND: (f64, f64) = (0.05, 0.2);

/// Errors `|H(x, x+tv)/t − p(x,v)|` for the three step sizes.
pub(crate) fn linearization_errors(frame: &RegionFrame, c: [f64; 2], v: [f64; 2]) -> Result<[f64; 3]> {
    let pair = AntipodalSimplexPair::standard();
    let p = minkowski_functional(&ChartTangent::new(c, v), frame.quadrant)?;
    let x = frame.lift(c)?;
    let mut errs = [0.0; 3];
    for (e, t) in errs.iter_mut().zip(LINEARIZATION_STEPS) {
        let y = frame.lift([c[0] + t * v[0], c[1] + t * v[1]])?;
        *e = (h(&pair, &x, &y)? / t - p).abs();
    }
    Ok(errs)
}

fn outside_band(r: f64) -> f64 {
    let (lo, hi) = DECAY_BAND;
    if r.is_nan() {
        f64::INFINITY
    } else {
        (lo - r).max(r - hi).max(0.0)
    }
}

fn linearization(ctx: &Ctx) -> Vec<SubCheck> {
    let n = ctx.samples;
    let random_base = |rng: &mut ChaCha8Rng| [rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5)];
    vec![
        ctx.sampled("decay", 1, n, 0.0, |rng| {
            let frame = region_by_index(rng.random_range(0..6)).frame();
            let c = planar_base(&frame, random_base(rng));
            let w = random_timelike(frame.kind(), rng);
            let res = from_log_vector(c, w, frame.quadrant).and_then(|v| linearization_errors(&frame, c, v));
            match res {
                Ok(e) => {
                    let ratios = [e[1] / e[0], e[2] / e[1]];
                    let dev = outside_band(ratios[0]).max(outside_band(ratios[1]));
                    (dev, json!({ "region": frame.region, "base": c, "log_vector": w, "errors": e, "ratios": ratios }))
                }
                Err(_) => (f64::INFINITY, json!({ "region": frame.region, "base": c, "log_vector": w })),
            }
        }),
        ctx.sampled("pullback", 2, n, ctx.tol, |rng| {
            let kind = random_kind(rng);
            let frame_q = quadrant_of(kind);
            let b = random_base(rng);
            let c = match frame_q {
                Quadrant::Q1 => b.map(f64::exp),
                Quadrant::Q2 => [-b[0].exp(), b[1].exp()],
            };
            let mut w = random_timelike(kind, rng);
            if rng.random_bool(0.5) {
                w = w.map(|x| -x);
            }
            let dev = (|| {
                let v = from_log_vector(c, w, frame_q)?;
                let m = minkowski_functional(&ChartTangent::new(c, v), frame_q)?;
                let nf = normed_functional(w, kind)?;
                Ok((m - nf).abs() / nf.max(1.0))
            })();
            (or_inf(dev), json!({ "kind": kind, "base": c, "log_vector": w }))
        }),
        ctx.sampled("base-independence", 3, n, 0.0, |rng| {
            let kind = random_kind(rng);
            let w = random_timelike(kind, rng).map(|x| -x);
            let (b1, b2) = (random_base(rng), random_base(rng));
            let dev = (|| {
                let v1 = LogTangent { base: b1, vector: w }.normed(kind)?;
                let v2 = LogTangent { base: b2, vector: w }.normed(kind)?;
                Ok(exact(v1.to_bits() == v2.to_bits()))
            })();
            (or_inf(dev), json!({ "kind": kind, "log_vector": w, "bases": [b1, b2] }))
        }),
        ctx.sampled("homogeneity-dyadic", 4, n, 0.0, |rng| {
            let kind = random_kind(rng);
            let w = random_timelike(kind, rng).map(|x| -x);
            let lambda = 2f64.powi(rng.random_range(-3..=3));
            let dev = (|| Ok((normed_functional(w.map(|x| lambda * x), kind)? - lambda * normed_functional(w, kind)?).abs()))();
            (or_inf(dev), json!({ "kind": kind, "log_vector": w, "lambda": lambda }))
        }),
        ctx.sampled("homogeneity", 5, n, 1e-14, |rng| {
            let kind = random_kind(rng);
            let w = random_timelike(kind, rng).map(|x| -x);
            let lambda = log_uniform(rng, 0.1, 10.0);
            let dev = (|| {
                let base = lambda * normed_functional(w, kind)?;
                Ok((normed_functional(w.map(|x| lambda * x), kind)? - base).abs() / base)
            })();
            (or_inf(dev), json!({ "kind": kind, "log_vector": w, "lambda": lambda }))
        }),
        ctx.sampled("superadditivity", 6, n, ctx.tol, |rng| {
            let kind = random_kind(rng);
            let v = random_timelike(kind, rng).map(|x| -x);
            let w = random_timelike(kind, rng).map(|x| -x);
            let dev = (|| {
                let sum = normed_functional([v[0] + w[0], v[1] + w[1]], kind)?;
                Ok((normed_functional(v, kind)? + normed_functional(w, kind)? - sum).max(0.0))
            })();
            (or_inf(dev), json!({ "kind": kind, "v": v, "w": w }))
        }),
        ctx.sampled("null", 7, n, 0.0, |rng| {
            let kind = random_kind(rng);
            let q = quadrant_of(kind);
            let b = random_base(rng);
            let c = match q {
                Quadrant::Q1 => b.map(f64::exp),
                Quadrant::Q2 => [-b[0].exp(), b[1].exp()],
            };
            let dir = null_directions(kind)[rng.random_range(0..4)];
            let s = log_uniform(rng, 0.1, 10.0);
            let w = dir.map(|x| s * x);
            let dev = (|| {
                let v = from_log_vector(c, w, q)?;
                Ok(minkowski_functional(&ChartTangent::new(c, v), q)?.abs().max(normed_functional(w, kind)?.abs()))
            })();
            (or_inf(dev), json!({ "kind": kind, "base": c, "log_vector": w }))
        }),
    ]
}

fn eq_consistency(ctx: &Ctx) -> Vec<SubCheck> {
    let pair = AntipodalSimplexPair::standard();
    let n = ctx.samples;
    let e3 = 3f64.exp();
    vec![
        ctx.sampled("six-case", 1, n, ctx.tol, |rng| {
            let p = [log_uniform(rng, 1.0 / e3, e3), log_uniform(rng, 1.0 / e3, e3)];
            let q = [log_uniform(rng, 1.0 / e3, e3), log_uniform(rng, 1.0 / e3, e3)];
            let dev = (|| Ok((quadrant_hilbert_cases(p, q)? - quadrant_hilbert_max(p, q)?).abs()))();
            (or_inf(dev), json!({ "p": p, "q": q }))
        }),
        ctx.sampled("chart-vs-sphere", 2, n, 1e-9, |rng| {
            let chart = Chart::new(rng.random_range(0..3), if rng.random_bool(0.5) { Sign::Minus } else { Sign::Plus })
                .expect("axis in range");
            let e2 = 2f64.exp();
            let lo = [log_uniform(rng, 1.0 / e2, e2), log_uniform(rng, 1.0 / e2, e2)];
            let hi = [lo[0] * rng.random_range(0.01..2.0f64).exp(), lo[1] * rng.random_range(0.01..2.0f64).exp()];
            // A `+` chart sees the pair through the antipodal map, which reverses the order.
            let (p, q) = match chart.sign() {
                Sign::Minus => (lo, hi),
                Sign::Plus => (hi.map(|x| -x), lo.map(|x| -x)),
            };
            let (cp, cq) = (ChartPoint::new(chart, p[0], p[1]), ChartPoint::new(chart, q[0], q[1]));
            let dev = (|| {
                let flat = degenerate_chart_hilbert(&cp, &cq, chart)?.value();
                let round = h(&pair, &lift(chart, &cp)?, &lift(chart, &cq)?)?;
                Ok((flat - round).abs())
            })();
            (or_inf(dev), json!({ "chart": chart.to_string(), "p": p, "q": q }))
        }),
        ctx.sampled("routes", 3, n, 1e-10, |rng| {
            let (p, q) = random_before_pair(&pair, rng);
            let dev = hilbert_routes(&pair, &p, &q).map(|r| (r.via_funk - r.via_cross_ratio).abs());
            (or_inf(dev), json!({ "p": pt(&p), "q": pt(&q) }))
        }),
    ]
}

/// Two caps of the given radius centred `separation` apart on a meridian through the north pole.
pub fn polar_caps(separation: f64, radius: f64) -> (ConvexBody, ConvexBody) {
    let c = |a: f64| SpherePoint::new(a.sin(), 0.0, a.cos()).expect("unit vector");
    (
        ConvexBody::Cap { center: c(-separation / 2.0), radius },
        ConvexBody::Cap { center: c(separation / 2.0), radius },
    )
}

fn good_position(ctx: &Ctx) -> Vec<SubCheck> {
    let n = ctx.samples;
    let (past, future) = AntipodalSimplexPair::standard().bodies();
    let outcome = |ok: bool, r: &GoodPosition| (exact(ok), json!({ "result": describe(r) }));
    let standard = good_position_check(&past, &future, n, ctx.seed);
    let (c1, c2) = polar_caps(0.2, 0.05);
    let caps = good_position_check(&c1, &c2, n, ctx.seed);
    let same = good_position_check(&future, &future, n, ctx.seed);
    vec![
        SubCheck::from_outcomes("standard-pair", 0.0, vec![outcome(standard == GoodPosition::Pass, &standard)])
            .with_detail(json!({ "circles": n })),
        SubCheck::from_outcomes(
            "cap-pair",
            0.0,
            vec![outcome(matches!(caps, GoodPosition::Fail(GoodPositionWitness::LongArc { .. })), &caps)],
        )
        .with_detail(describe(&caps)),
        SubCheck::from_outcomes(
            "coincident",
            0.0,
            vec![outcome(same == GoodPosition::Fail(GoodPositionWitness::ClosuresIntersect), &same)],
        ),
    ]
}

pub fn describe(r: &GoodPosition) -> Value {
    match r {
        GoodPosition::Pass => json!("pass"),
        GoodPosition::Fail(GoodPositionWitness::ClosuresIntersect) => json!({ "fail": "closures-intersect" }),
        GoodPosition::Fail(GoodPositionWitness::LongArc { circle, arcs }) => {
            json!({ "fail": "long-arc", "circle_normal": pt(circle.normal()), "arcs": arcs })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(suite: Suite, samples: usize) -> SuiteReport {
        run_suite(suite, &VerifyOptions { samples: Some(samples), seed: 1, ..Default::default() })
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("no-such-suite".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        for s in Suite::ALL.into_iter().filter(|s| *s != Suite::Golden) {
            let r = run(s, 200);
            assert!(r.pass, "{}", serde_json::to_string_pretty(&r).unwrap());
            assert_eq!(r.pass, r.max_deviation <= r.tolerance);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&run(Suite::PhiIsometry, 100)).unwrap();
        let b = serde_json::to_string(&run(Suite::PhiIsometry, 100)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn failing_check_yields_counterexample() {
        let c = SubCheck::from_outcomes("x", 0.5, vec![(0.1, json!(0)), (0.7, json!(1)), (f64::NAN, json!(2))]);
        assert!(!c.pass);
        assert_eq!(c.max_deviation, f64::INFINITY);
        assert_eq!(c.counterexample.unwrap()["index"], 1);
    }
}
