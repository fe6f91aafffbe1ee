//! Golden values: closed-form oracles, the committed table they generate, and the library
//! computations that must reproduce it.
//!
//! The table has one record per line, `id | inputs | value | method`. A value is either a
//! comma-separated list of numbers written with 17 significant digits or a bare label.
//! Oracles never call into the library; they use hand-derived chord parameters, ray exits
//! and trigonometric identities.

use std::collections::BTreeSet;
use std::f64::consts::{E, FRAC_1_SQRT_2, LN_2, PI, TAU};
use std::fmt;
use std::path::PathBuf;

use serde_json::json;

use crate::bodies::{good_position_check, AntipodalSimplexPair, GoodPosition, GoodPositionWitness, OrthantConePair, Side};
use crate::cli;
use crate::error::{GeometryError, Result};
use crate::finsler::{
    cone_classify, indicatrix_sample, minkowski_functional, normed_functional, to_log_coords, ChartTangent, Quadrant,
    RegionKind,
};
use crate::metrics::{
    degenerate_chart_hilbert, euclidean_hilbert, funk, hilbert, lorentz_distance, quadrant_hilbert_max, reverse_funk,
    LorentzEvent,
};
use crate::order::{chord, relate};
use crate::sampling::{random_before_pair, stream_rng};
use crate::sphere::{great_circle_through, lift, project, spherical_cross_ratio, Chart, ChartPoint, GreatCircle, SpherePoint};
use crate::symmetry::{orbit_check, transitivity_witness, GroupElement};
use crate::verify::{polar_caps, run_suite, Ctx, SubCheck, Suite, VerifyOptions};

pub const GOLDEN_TOL: f64 = 1e-9;

/// The committed table, compiled in.
pub const GOLDEN_TABLE: &str = include_str!("../golden/golden.txt");

/// Location of the table in the source tree, for regeneration.
pub fn golden_path() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/golden/golden.txt"))
}

#[derive(Debug, Clone, PartialEq)]
pub enum GoldenValue {
    Numbers(Vec<f64>),
    Label(String),
}

impl GoldenValue {
    fn num(x: f64) -> Self {
        GoldenValue::Numbers(vec![x])
    }

    fn label(s: &str) -> Self {
        GoldenValue::Label(s.to_string())
    }

    /// Largest componentwise difference; infinite on shape or label mismatch.
    pub fn deviation(&self, other: &GoldenValue) -> f64 {
        match (self, other) {
            (GoldenValue::Numbers(a), GoldenValue::Numbers(b)) if a.len() == b.len() => a
                .iter()
                .zip(b)
                .map(|(x, y)| if x == y { 0.0 } else { (x - y).abs() })
                .fold(0.0, |m, d| if d.is_nan() { f64::INFINITY } else { m.max(d) }),
            (GoldenValue::Label(a), GoldenValue::Label(b)) if a == b => 0.0,
            _ => f64::INFINITY,
        }
    }
}

impl fmt::Display for GoldenValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoldenValue::Numbers(v) => {
                let parts: Vec<String> = v.iter().map(|x| format!("{x:.16e}")).collect();
                f.write_str(&parts.join(", "))
            }
            GoldenValue::Label(s) => f.write_str(s),
        }
    }
}

fn parse_value(s: &str) -> GoldenValue {
    let nums: std::result::Result<Vec<f64>, _> = s.split(',').map(|x| x.trim().parse::<f64>()).collect();
    match nums {
        Ok(v) => GoldenValue::Numbers(v),
        Err(_) => GoldenValue::Label(s.trim().to_string()),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenRecord {
    pub id: String,
    pub inputs: String,
    pub value: GoldenValue,
    pub method: String,
}

pub fn parse_table(text: &str) -> Result<Vec<GoldenRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(n, l)| {
            let f: Vec<&str> = l.split(" | ").collect();
            if f.len() != 4 {
                return Err(GeometryError::InvalidArgument(format!("golden line {}: expected 4 fields", n + 1)));
            }
            Ok(GoldenRecord {
                id: f[0].trim().to_string(),
                inputs: f[1].trim().to_string(),
                value: parse_value(f[2]),
                method: f[3].trim().to_string(),
            })
        })
        .collect()
}

pub fn render_table(records: &[GoldenRecord]) -> String {
    let mut out = String::from("# id | inputs | value | method\n");
    for r in records {
        out.push_str(&format!("{} | {} | {} | {}\n", r.id, r.inputs, r.value, r.method));
    }
    out
}

pub struct GoldenCase {
    pub id: &'static str,
    pub inputs: &'static str,
    pub method: &'static str,
    pub oracle: fn() -> GoldenValue,
    pub compute: fn() -> Result<GoldenValue>,
}

impl GoldenCase {
    pub fn record(&self) -> GoldenRecord {
        GoldenRecord {
            id: self.id.to_string(),
            inputs: self.inputs.to_string(),
            value: (self.oracle)(),
            method: self.method.to_string(),
        }
    }
}

/// The table as the oracles produce it.
pub fn regenerate() -> String {
    render_table(&cases().iter().map(GoldenCase::record).collect::<Vec<_>>())
}

pub(crate) fn checks(_ctx: &Ctx) -> Vec<SubCheck> {
    let table = parse_table(GOLDEN_TABLE);
    let records = match table {
        Ok(r) => r,
        Err(e) => return vec![SubCheck::from_outcomes("parse", 0.0, vec![(f64::INFINITY, json!(e.to_string()))])],
    };
    let cases = cases();
    let find = |id: &str| records.iter().find(|r| r.id == id);
    let computed: Vec<(f64, serde_json::Value)> = cases
        .iter()
        .map(|c| {
            let got = (c.compute)();
            let dev = match (find(c.id), &got) {
                (Some(r), Ok(v)) => r.value.deviation(v),
                _ => f64::INFINITY,
            };
            let shown = match got {
                Ok(v) => v.to_string(),
                Err(e) => e.to_string(),
            };
            (dev, json!({ "id": c.id, "computed": shown }))
        })
        .collect();
    let oracles: Vec<(f64, serde_json::Value)> = cases
        .iter()
        .map(|c| {
            let dev = find(c.id).map_or(f64::INFINITY, |r| r.value.deviation(&(c.oracle)()));
            (dev, json!({ "id": c.id }))
        })
        .collect();
    let case_ids: BTreeSet<&str> = cases.iter().map(|c| c.id).collect();
    let file_ids: Vec<&str> = records.iter().map(|r| r.id.as_str()).collect();
    let unique: BTreeSet<&str> = file_ids.iter().copied().collect();
    let coverage_ok = unique.len() == file_ids.len() && unique == case_ids;
    vec![
        SubCheck::from_outcomes("records", GOLDEN_TOL, computed),
        SubCheck::from_outcomes("oracles", GOLDEN_TOL, oracles),
        SubCheck::from_outcomes(
            "coverage",
            0.0,
            vec![(if coverage_ok { 0.0 } else { 1.0 }, json!({ "table": file_ids.len(), "cases": case_ids.len() }))],
        ),
    ]
}

fn sp(x: f64, y: f64, z: f64) -> SpherePoint {
    SpherePoint::new(x, y, z).expect("nonzero")
}

fn chart2() -> Chart {
    "2-".parse().expect("valid chart")
}

fn lift2(u: f64, v: f64) -> Result<SpherePoint> {
    let c = chart2();
    lift(c, &ChartPoint::new(c, u, v))
}

fn pinned() -> (SpherePoint, SpherePoint) {
    (sp(1.0, -1.0, 1.0), sp(E, -1.0, E))
}

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    v.map(|x| x / n)
}

fn points(pts: &[[f64; 3]]) -> GoldenValue {
    GoldenValue::Numbers(pts.iter().flatten().copied().collect())
}

/// Sign fixed so that the last non-negligible component is positive.
fn canonical(v: [f64; 3]) -> [f64; 3] {
    let last = v.iter().rev().find(|x| x.abs() > 1e-12).copied().unwrap_or(1.0);
    v.map(|x| x * last.signum())
}

fn sorted_points(mut pts: Vec<[f64; 3]>) -> Vec<[f64; 3]> {
    pts.sort_by_key(|p| p.map(|x| (x * 1e9).round() as i64));
    pts
}

fn hit_points(normal: [f64; 3], side: Side) -> Result<GoldenValue> {
    let pair = AntipodalSimplexPair::standard();
    let hits = pair.chord_boundary_hits(&GreatCircle::from_normal(SpherePoint::from_array(normal)?))?;
    let pts = hits.hits.iter().filter(|h| h.side == side).map(|h| h.point.coords()).collect();
    Ok(points(&sorted_points(pts)))
}

/// Sine cross ratio from angular positions on one circle.
fn angle_cross_ratio(t: [f64; 4]) -> f64 {
    ((t[3] - t[1]).sin() * (t[2] - t[0]).sin()) / ((t[3] - t[2]).sin() * (t[1] - t[0]).sin())
}

fn circle_cross_ratio(t: [f64; 4], normal: [f64; 3]) -> Result<f64> {
    let c = GreatCircle::from_normal(SpherePoint::from_array(normal)?);
    let p = t.map(|a| c.point_at(a));
    spherical_cross_ratio(&p[0], &p[1], &p[2], &p[3], &c)
}

/// `½ log [a₁, p, q, a₂]` for affine parameters on a line with `p` at 0 and `q` at 1; an
/// infinite `a₂` contributes a factor 1.
fn line_hilbert(a1: f64, a2: f64) -> f64 {
    let far = if a2.is_infinite() { 1.0 } else { (a2 - 0.0) / (a2 - 1.0) };
    0.5 * (((1.0 - a1) / (0.0 - a1)) * far).ln()
}

/// Norm of a chart tangent from the parameters where the ray `x + tv` enters and leaves the
/// closed third quadrant: `½(1/t_in − 1/t_out)`.
fn ray_norm(t_in: f64, t_out: f64) -> f64 {
    0.5 * (1.0 / t_in - 1.0 / t_out)
}

fn cli_number(v: Result<serde_json::Value>, key: &str) -> Result<GoldenValue> {
    let v = v?;
    v[key].as_f64().map(GoldenValue::num).ok_or_else(|| GeometryError::InvalidArgument(format!("no '{key}' in output")))
}

fn orbit_value(g: GroupElement) -> Result<GoldenValue> {
    let r = orbit_check(&g, 1000, 0);
    Ok(GoldenValue::num(if r.order_ok { r.max_deviation } else { f64::INFINITY }))
}

/// Distance from a point to the polyline through the sampled indicatrix.
fn polyline_distance(pts: &[[f64; 2]], x: [f64; 2]) -> f64 {
    pts.windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let d = [b[0] - a[0], b[1] - a[1]];
            let s = (((x[0] - a[0]) * d[0] + (x[1] - a[1]) * d[1]) / (d[0] * d[0] + d[1] * d[1])).clamp(0.0, 1.0);
            (x[0] - a[0] - s * d[0]).hypot(x[1] - a[1] - s * d[1])
        })
        .fold(f64::INFINITY, f64::min)
}

fn indicatrix_membership(kind: RegionKind, x: [f64; 2]) -> Result<GoldenValue> {
    let past: Vec<[f64; 2]> = indicatrix_sample(kind, 64)?
        .into_iter()
        .filter(|(_, b)| *b == crate::finsler::Branch::Past)
        .map(|(p, _)| p)
        .collect();
    Ok(GoldenValue::Numbers(vec![normed_functional(x, kind)?, polyline_distance(&past, x)]))
}

pub fn cases() -> Vec<GoldenCase> {
    vec![
        GoldenCase {
            id: "sphere.cross_ratio.angles",
            inputs: "circle angles 0, pi/6, pi/3, pi/2",
            method: "sin(pi/3)^2 / sin(pi/6)^2 from angle differences",
            oracle: || GoldenValue::num((PI / 3.0).sin().powi(2) / (PI / 6.0).sin().powi(2)),
            compute: || Ok(GoldenValue::num(circle_cross_ratio([0.0, PI / 6.0, PI / 3.0, PI / 2.0], [0.0, 0.0, 1.0])?)),
        },
        GoldenCase {
            id: "sphere.cross_ratio.multiplicative",
            inputs: "a1, p, q, r, a2 at angles 0, 0.3, 0.7, 1.1, 1.5 on the circle with normal (1,2,3)",
            method: "[a1,p,r,a2] from angle differences; compared with the product [a1,p,q,a2][a1,q,r,a2]",
            oracle: || GoldenValue::num(angle_cross_ratio([0.0, 0.3, 1.1, 1.5])),
            compute: || {
                let n = [1.0, 2.0, 3.0];
                Ok(GoldenValue::num(
                    circle_cross_ratio([0.0, 0.3, 0.7, 1.5], n)? * circle_cross_ratio([0.0, 0.7, 1.1, 1.5], n)?,
                ))
            },
        },
        GoldenCase {
            id: "sphere.circle.normal",
            inputs: "(1,-1,1)/sqrt3, (e,-1,e)/sqrt(2e^2+1)",
            method: "cross product (1-e, 0, e-1), normalized with positive last component",
            oracle: || points(&[[-FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2]]),
            compute: || {
                let (p, q) = pinned();
                Ok(points(&[canonical(great_circle_through(&p, &q)?.normal().coords())]))
            },
        },
        GoldenCase {
            id: "sphere.project.chart_2m",
            inputs: "chart 2-, (1,-1,1)/sqrt3",
            method: "scale the ray to x2 = -1",
            oracle: || GoldenValue::Numbers(vec![1.0, 1.0]),
            compute: || Ok(GoldenValue::Numbers(project(chart2(), &sp(1.0, -1.0, 1.0))?.coords.to_vec())),
        },
        GoldenCase {
            id: "sphere.lift.chart_2m",
            inputs: "chart 2-, (1,1)",
            method: "normalize (1,-1,1)",
            oracle: || points(&[[1.0, -1.0, 1.0].map(|x: f64| x / 3f64.sqrt())]),
            compute: || Ok(points(&[lift2(1.0, 1.0)?.coords()])),
        },
        GoldenCase {
            id: "bodies.hits.normal_m1_0_1",
            inputs: "circle with normal (-1,0,1); past hits, then future hits",
            method: "plane x1 = x3 meets x2 = 0 at +-(1,0,1)/sqrt2 and x1 = x3 = 0 at +-(0,1,0); split by sign",
            oracle: || {
                let past = sorted_points(vec![[-FRAC_1_SQRT_2, 0.0, -FRAC_1_SQRT_2], [0.0, -1.0, 0.0]]);
                let future = sorted_points(vec![[FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2], [0.0, 1.0, 0.0]]);
                points(&[past, future].concat())
            },
            compute: || {
                let (GoldenValue::Numbers(mut a), GoldenValue::Numbers(b)) =
                    (hit_points([-1.0, 0.0, 1.0], Side::Past)?, hit_points([-1.0, 0.0, 1.0], Side::Future)?)
                else {
                    unreachable!("hit_points yields numbers")
                };
                a.extend(b);
                Ok(GoldenValue::Numbers(a))
            },
        },
        GoldenCase {
            id: "bodies.hits.normal_2_m1_m1.future",
            inputs: "circle with normal (2,-1,-1), future side",
            method: "2x1 = x2 + x3 with x3 = 0 or x2 = 0 and positive coordinates",
            oracle: || points(&sorted_points(vec![unit([1.0, 0.0, 2.0]), unit([1.0, 2.0, 0.0])])),
            compute: || hit_points([2.0, -1.0, -1.0], Side::Future),
        },
        GoldenCase {
            id: "bodies.supporting.vertex_and_face",
            inputs: "a = (0,-1,0), b = (1,0,1)/sqrt2",
            method: "plane normal (-1,0,1) has both signs, so it is not a supporting plane",
            oracle: || GoldenValue::label("false"),
            compute: || {
                let s = AntipodalSimplexPair::standard().in_supporting_circle(&sp(0.0, -1.0, 0.0), &sp(1.0, 0.0, 1.0))?;
                Ok(GoldenValue::label(if s { "true" } else { "false" }))
            },
        },
        GoldenCase {
            id: "bodies.good_position.caps",
            inputs: "caps of radius 0.05 centred 0.2 apart across the north pole",
            method: "circle through both centres: arcs 0.1 each, gaps 0.1 and 2pi - 0.3; largest gap reported",
            oracle: || GoldenValue::num(TAU - 0.3),
            compute: || {
                let (a, b) = polar_caps(0.2, 0.05);
                match good_position_check(&a, &b, 100, 0) {
                    GoodPosition::Fail(GoodPositionWitness::LongArc { arcs, .. }) => {
                        Ok(GoldenValue::num(arcs[0].max(arcs[1])))
                    }
                    _ => Err(GeometryError::InvalidArgument("cap pair did not fail with a long arc".into())),
                }
            },
        },
        GoldenCase {
            id: "bodies.witness.deformed",
            inputs: "D = diag(2,1,1)/2^(1/3)",
            method: "normalize D(1,1,1) = (2,1,1) and negate",
            oracle: || points(&[unit([2.0, 1.0, 1.0]), unit([-2.0, -1.0, -1.0])]),
            compute: || {
                let c = 2f64.cbrt();
                let (w, a) = AntipodalSimplexPair::deformed([2.0 / c, 1.0 / c, 1.0 / c])?.antipodal_witness();
                Ok(points(&[w.coords(), a.coords()]))
            },
        },
        GoldenCase {
            id: "order.relate.positive_slope",
            inputs: "lift(2-, (1,1)), lift(2-, (e,e))",
            method: "chart line of positive slope",
            oracle: || GoldenValue::label("before"),
            compute: || {
                let r = relate(&AntipodalSimplexPair::standard(), &lift2(1.0, 1.0)?, &lift2(E, E)?)?;
                Ok(GoldenValue::label(json!(r).as_str().unwrap_or_default()))
            },
        },
        GoldenCase {
            id: "order.relate.negative_slope",
            inputs: "lift(2-, (1,1)), lift(2-, (2,0.5))",
            method: "chart line of negative slope",
            oracle: || GoldenValue::label("unrelated"),
            compute: || {
                let r = relate(&AntipodalSimplexPair::standard(), &lift2(1.0, 1.0)?, &lift2(2.0, 0.5)?)?;
                Ok(GoldenValue::label(json!(r).as_str().unwrap_or_default()))
            },
        },
        GoldenCase {
            id: "order.chord.pinned",
            inputs: "(1,-1,1)/sqrt3, (e,-1,e)/sqrt(2e^2+1)",
            method: "plane x1 = x3 meets the past at the vertex (0,-1,0) and the future face x2 = 0 at (1,0,1)/sqrt2",
            oracle: || points(&[[0.0, -1.0, 0.0], [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2]]),
            compute: || {
                let (p, q) = pinned();
                let c = chord(&AntipodalSimplexPair::standard(), &p, &q)?;
                Ok(points(&[c.a1.point.coords(), c.a2.point.coords()]))
            },
        },
        GoldenCase {
            id: "order.chord.projected",
            inputs: "(-1,-2,1)/sqrt6, (1,-1,2)/sqrt6",
            method: "radial image of the Euclidean chord ends (-3,-3,0) and (3,0,3)",
            oracle: || points(&[unit([-3.0, -3.0, 0.0]), unit([3.0, 0.0, 3.0])]),
            compute: || {
                let c = chord(&AntipodalSimplexPair::standard(), &sp(-1.0, -2.0, 1.0), &sp(1.0, -1.0, 2.0))?;
                Ok(points(&[c.a1.point.coords(), c.a2.point.coords()]))
            },
        },
        GoldenCase {
            id: "metrics.funk.pinned",
            inputs: "(1,-1,1)/sqrt3, (e,-1,e)/sqrt(2e^2+1)",
            method: "sines against a2 = (1,0,1)/sqrt2: sqrt(1/3) and 1/sqrt(2e^2+1) give log sqrt((2e^2+1)/3)",
            oracle: || GoldenValue::num(0.5 * ((2.0 * E * E + 1.0) / 3.0).ln()),
            compute: || {
                let (p, q) = pinned();
                Ok(GoldenValue::num(funk(&AntipodalSimplexPair::standard(), &p, &q)?.value()))
            },
        },
        GoldenCase {
            id: "metrics.reverse_funk.pinned",
            inputs: "(1,-1,1)/sqrt3, (e,-1,e)/sqrt(2e^2+1)",
            method: "sines against a1 = (0,-1,0): sqrt(2/3) and e sqrt2/sqrt(2e^2+1)",
            oracle: || GoldenValue::num(1.0 + 0.5 * 3f64.ln() - 0.5 * (2.0 * E * E + 1.0).ln()),
            compute: || {
                let (p, q) = pinned();
                Ok(GoldenValue::num(reverse_funk(&AntipodalSimplexPair::standard(), &p, &q)?.value()))
            },
        },
        GoldenCase {
            id: "metrics.funk_sum.random",
            inputs: "1000 ordered pairs, seed 0",
            method: "max |F + reverse F - 2H|, zero by definition",
            oracle: || GoldenValue::num(0.0),
            compute: || {
                let pair = AntipodalSimplexPair::standard();
                let mut worst: f64 = 0.0;
                for i in 0..1000 {
                    let (p, q) = random_before_pair(&pair, &mut stream_rng(0, i));
                    let s = funk(&pair, &p, &q)?.value() + reverse_funk(&pair, &p, &q)?.value();
                    worst = worst.max((s - 2.0 * hilbert(&pair, &p, &q)?.value()).abs());
                }
                Ok(GoldenValue::num(worst))
            },
        },
        GoldenCase {
            id: "metrics.hilbert.pinned",
            inputs: "(1,-1,1)/sqrt3, (e,-1,e)/sqrt(2e^2+1)",
            method: "chart 2- line from (1,1) to (e,e): a1 at the origin (parameter -1/(e-1)), a2 at infinity; cross ratio e",
            oracle: || GoldenValue::num(line_hilbert(-1.0 / (E - 1.0), f64::INFINITY)),
            compute: || {
                let (p, q) = pinned();
                Ok(GoldenValue::num(hilbert(&AntipodalSimplexPair::standard(), &p, &q)?.value()))
            },
        },
        GoldenCase {
            id: "metrics.hilbert.chart_1_2_3_4",
            inputs: "lift(2-, (1,2)), lift(2-, (3,4))",
            method: "chart line (1,2) + s(2,2) meets the third quadrant at s = -1 and leaves to infinity; cross ratio 2",
            oracle: || GoldenValue::num(line_hilbert(-1.0, f64::INFINITY)),
            compute: || {
                Ok(GoldenValue::num(hilbert(&AntipodalSimplexPair::standard(), &lift2(1.0, 2.0)?, &lift2(3.0, 4.0)?)?.value()))
            },
        },
        GoldenCase {
            id: "metrics.euclidean.finite",
            inputs: "x = (-1,-2,1), y = (1,-1,2)",
            method: "line x + t(2,1,1) meets the closed orthants at t = -1 and t = 2; cross ratio 4",
            oracle: || GoldenValue::num(line_hilbert(-1.0, 2.0)),
            compute: || {
                let v = |a: f64, b: f64, c: f64| nalgebra::Vector3::new(a, b, c);
                Ok(GoldenValue::num(euclidean_hilbert(&OrthantConePair, &v(-1.0, -2.0, 1.0), &v(1.0, -1.0, 2.0))?.value()))
            },
        },
        GoldenCase {
            id: "metrics.euclidean.ideal",
            inputs: "x = (1,-1,1), y = (e,-1,e)",
            method: "a2 ideal; |y - a1| / |x - a1| = e with a1 = (0,-1,0)",
            oracle: || GoldenValue::num(line_hilbert(-1.0 / (E - 1.0), f64::INFINITY)),
            compute: || {
                let v = |a: f64, b: f64, c: f64| nalgebra::Vector3::new(a, b, c);
                Ok(GoldenValue::num(euclidean_hilbert(&OrthantConePair, &v(1.0, -1.0, 1.0), &v(E, -1.0, E))?.value()))
            },
        },
        GoldenCase {
            id: "metrics.lorentz.sqrt2",
            inputs: "(0,0,0) to (2,1,1)",
            method: "sqrt(2^2 - 1 - 1)",
            oracle: || GoldenValue::num(2f64.sqrt()),
            compute: || {
                let d = lorentz_distance(&LorentzEvent(vec![0.0; 3]), &LorentzEvent(vec![2.0, 1.0, 1.0]))?;
                Ok(GoldenValue::num(d.value()))
            },
        },
        GoldenCase {
            id: "metrics.quadrant.diagonal",
            inputs: "(1,1), (2,2)",
            method: "line through the origin: a1 at s = -1, a2 at infinity; cross ratio 2",
            oracle: || GoldenValue::num(line_hilbert(-1.0, f64::INFINITY)),
            compute: || Ok(GoldenValue::num(quadrant_hilbert_max([1.0, 1.0], [2.0, 2.0])?)),
        },
        GoldenCase {
            id: "metrics.quadrant.antidiagonal",
            inputs: "(1,2), (2,1)",
            method: "line (1,2) + s(1,-1) meets the axes at s = -1 and s = 2; cross ratio 4",
            oracle: || GoldenValue::num(line_hilbert(-1.0, 2.0)),
            compute: || Ok(GoldenValue::num(quadrant_hilbert_max([1.0, 2.0], [2.0, 1.0])?)),
        },
        GoldenCase {
            id: "metrics.chart.1_1_e_e",
            inputs: "chart 2-, (1,1), (e,e)",
            method: "a1 at the origin (parameter -1/(e-1)), a2 at infinity; cross ratio e",
            oracle: || GoldenValue::num(line_hilbert(-1.0 / (E - 1.0), f64::INFINITY)),
            compute: || {
                let c = chart2();
                let d = degenerate_chart_hilbert(&ChartPoint::new(c, 1.0, 1.0), &ChartPoint::new(c, E, E), c)?;
                Ok(GoldenValue::num(d.value()))
            },
        },
        GoldenCase {
            id: "metrics.chart.1_2_3_4",
            inputs: "chart 2-, (1,2), (3,4)",
            method: "a1 = (-1,0) at s = -1, a2 at infinity; cross ratio 2",
            oracle: || GoldenValue::num(0.5 * LN_2),
            compute: || {
                let c = chart2();
                let d = degenerate_chart_hilbert(&ChartPoint::new(c, 1.0, 2.0), &ChartPoint::new(c, 3.0, 4.0), c)?;
                Ok(GoldenValue::num(d.value()))
            },
        },
        GoldenCase {
            id: "finsler.classify.q1_past",
            inputs: "Q1, base (2,1), v = (-1,-1)",
            method: "the ray reaches the third quadrant through (0,-1)",
            oracle: || GoldenValue::label("past"),
            compute: || Ok(GoldenValue::label(&class_label(Quadrant::Q1, [2.0, 1.0], [-1.0, -1.0])?)),
        },
        GoldenCase {
            id: "finsler.classify.q2_spacelike",
            inputs: "Q2, base (-1,1), v = (3,-1)",
            method: "the ray crosses y = 0 at x = 2 and misses the third quadrant; so does its opposite",
            oracle: || GoldenValue::label("spacelike"),
            compute: || Ok(GoldenValue::label(&class_label(Quadrant::Q2, [-1.0, 1.0], [3.0, -1.0])?)),
        },
        GoldenCase {
            id: "finsler.minkowski.q1_through_y_axis",
            inputs: "Q1, base (2,1), v = (-1,-1)",
            method: "ray enters the third quadrant at t = 2 through (0,-1) and never leaves",
            oracle: || GoldenValue::num(ray_norm(2.0, f64::INFINITY)),
            compute: || Ok(GoldenValue::num(minkowski_functional(&ChartTangent::new([2.0, 1.0], [-1.0, -1.0]), Quadrant::Q1)?)),
        },
        GoldenCase {
            id: "finsler.minkowski.q1_through_x_axis",
            inputs: "Q1, base (2,1), v = (-1,-0.25)",
            method: "ray enters the third quadrant at t = 4 through (-2,0) and never leaves",
            oracle: || GoldenValue::num(ray_norm(4.0, f64::INFINITY)),
            compute: || {
                Ok(GoldenValue::num(minkowski_functional(&ChartTangent::new([2.0, 1.0], [-1.0, -0.25]), Quadrant::Q1)?))
            },
        },
        GoldenCase {
            id: "finsler.minkowski.q1_diagonal",
            inputs: "Q1, base (1,1), v = (1,1)",
            method: "derivative at 0 of (1/2) log(1 + t)",
            oracle: || GoldenValue::num(0.5 / (1.0 + 0.0)),
            compute: || Ok(GoldenValue::num(minkowski_functional(&ChartTangent::new([1.0, 1.0], [1.0, 1.0]), Quadrant::Q1)?)),
        },
        GoldenCase {
            id: "finsler.log_vector.q1",
            inputs: "Q1, base (2,1), v = (-1,-1)",
            method: "Jacobian diag(1/x, 1/y)",
            oracle: || GoldenValue::Numbers(vec![-1.0 / 2.0, -1.0 / 1.0]),
            compute: || {
                Ok(GoldenValue::Numbers(
                    to_log_coords(&ChartTangent::new([2.0, 1.0], [-1.0, -1.0]), Quadrant::Q1)?.vector.to_vec(),
                ))
            },
        },
        GoldenCase {
            id: "finsler.normed.q1",
            inputs: "TypeQ1, log vector (-1,-2)",
            method: "at base (1,1) the ray (1-t, 1-2t) enters the third quadrant at t = 1 through (0,-1)",
            oracle: || GoldenValue::num(ray_norm(1.0, f64::INFINITY)),
            compute: || Ok(GoldenValue::num(normed_functional([-1.0, -2.0], RegionKind::TypeQ1)?)),
        },
        GoldenCase {
            id: "finsler.normed.q2",
            inputs: "TypeQ2, log vector (1,-3)",
            method: "at base (-1,1) the ray (-1+t, 1-3t) is in the third quadrant for t in [1/3, 1]",
            oracle: || GoldenValue::num(ray_norm(1.0 / 3.0, 1.0)),
            compute: || Ok(GoldenValue::num(normed_functional([1.0, -3.0], RegionKind::TypeQ2)?)),
        },
        GoldenCase {
            id: "finsler.normed.q2_spacelike",
            inputs: "TypeQ2, log vector (3,-1)",
            method: "neither the ray nor its opposite meets the third quadrant",
            oracle: || GoldenValue::num(0.0),
            compute: || Ok(GoldenValue::num(normed_functional([3.0, -1.0], RegionKind::TypeQ2)?)),
        },
        GoldenCase {
            id: "finsler.indicatrix.q1",
            inputs: "TypeQ1, count 64, point (-2,-3)",
            method: "at base (1,1) the ray (1-2t, 1-3t) enters the third quadrant at t = 1/2; norm 1, distance to the sampled branch 0",
            oracle: || GoldenValue::Numbers(vec![ray_norm(0.5, f64::INFINITY), 0.0]),
            compute: || indicatrix_membership(RegionKind::TypeQ1, [-2.0, -3.0]),
        },
        GoldenCase {
            id: "finsler.indicatrix.q2",
            inputs: "TypeQ2, count 64, point (1,-3)",
            method: "ray segment [1/3, 1] as for the normed value; distance to the sampled branch 0",
            oracle: || GoldenValue::Numbers(vec![ray_norm(1.0 / 3.0, 1.0), 0.0]),
            compute: || indicatrix_membership(RegionKind::TypeQ2, [1.0, -3.0]),
        },
        GoldenCase {
            id: "symmetry.apply.scale_2_3",
            inputs: "diag(2,3,1) on (1,-1,1)/sqrt3",
            method: "normalize (2,-3,1)",
            oracle: || points(&[unit([2.0, -3.0, 1.0])]),
            compute: || Ok(points(&[GroupElement::scaling(2.0, 3.0)?.apply(&sp(1.0, -1.0, 1.0)).coords()])),
        },
        GoldenCase {
            id: "symmetry.witness.chart_ratios",
            inputs: "lift(2-, (1,1)) to lift(2-, (2,3)); value is scale, cycle, flip",
            method: "chart ratios give diag(2,1,3), normalized by the last entry",
            oracle: || GoldenValue::Numbers(vec![2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0]),
            compute: || {
                let g = transitivity_witness(&AntipodalSimplexPair::standard(), &lift2(1.0, 1.0)?, &lift2(2.0, 3.0)?)?;
                Ok(GoldenValue::Numbers(vec![g.scale[0], g.scale[1], g.cycle as f64, if g.flip { 1.0 } else { 0.0 }]))
            },
        },
        GoldenCase {
            id: "symmetry.orbit.scale_2_5",
            inputs: "scale (2,5), 1000 ordered pairs, seed 0",
            method: "max deviation of H, zero by invariance",
            oracle: || GoldenValue::num(0.0),
            compute: || orbit_value(GroupElement::scaling(2.0, 5.0)?),
        },
        GoldenCase {
            id: "symmetry.orbit.cycle_1",
            inputs: "cycle 1, 1000 ordered pairs, seed 0",
            method: "max deviation of H, zero by invariance",
            oracle: || GoldenValue::num(0.0),
            compute: || orbit_value(GroupElement::cycled(1)),
        },
        GoldenCase {
            id: "symmetry.orbit.flip",
            inputs: "flip, 1000 ordered pairs, seed 0",
            method: "max deviation of H on the reversed pair, zero by invariance",
            oracle: || GoldenValue::num(0.0),
            compute: || orbit_value(GroupElement::flipped()),
        },
        GoldenCase {
            id: "cli.dist.chart",
            inputs: "dist --chart 2- 1,1 e,e",
            method: "cross ratio e as for metrics.chart.1_1_e_e",
            oracle: || GoldenValue::num(line_hilbert(-1.0 / (E - 1.0), f64::INFINITY)),
            compute: || cli_number(cli::dist_chart(chart2(), [1.0, 1.0], [E, E], true), "hilbert"),
        },
        GoldenCase {
            id: "cli.finsler.q1",
            inputs: "finsler --q1 2,1 -1,-1",
            method: "ray enters the third quadrant at t = 2",
            oracle: || GoldenValue::num(ray_norm(2.0, f64::INFINITY)),
            compute: || cli_number(cli::finsler(Quadrant::Q1, [2.0, 1.0], [-1.0, -1.0]), "functional"),
        },
        GoldenCase {
            id: "cli.finsler.q2",
            inputs: "finsler --q2 -1,1 1,-3",
            method: "ray segment [1/3, 1]",
            oracle: || GoldenValue::num(ray_norm(1.0 / 3.0, 1.0)),
            compute: || cli_number(cli::finsler(Quadrant::Q2, [-1.0, 1.0], [1.0, -3.0]), "normed_value"),
        },
        GoldenCase {
            id: "cli.indicatrix.q1_csv",
            inputs: "indicatrix --type q1 --count 64 --format csv; value is rows, max |norm - 1|",
            method: "64 points on each of two branches of the unit level set",
            oracle: || GoldenValue::Numbers(vec![128.0, 0.0]),
            compute: || {
                let text = cli::indicatrix(RegionKind::TypeQ1, 64, cli::IndicatrixFormat::Csv)?;
                let mut rows = 0.0;
                let mut worst: f64 = 0.0;
                for line in text.lines().skip(1) {
                    let f: Vec<&str> = line.split(',').collect();
                    let w = [cli::parse_number(f[0])?, cli::parse_number(f[1])?];
                    worst = worst.max((normed_functional(w, RegionKind::TypeQ1)? - 1.0).abs());
                    rows += 1.0;
                }
                Ok(GoldenValue::Numbers(vec![rows, worst]))
            },
        },
        GoldenCase {
            id: "cli.verify.phi_isometry",
            inputs: "verify phi-isometry --samples 10000 --seed 7",
            method: "max deviation of a distance-preserving map, zero",
            oracle: || GoldenValue::num(0.0),
            compute: || {
                let r = run_suite(Suite::PhiIsometry, &VerifyOptions { samples: Some(10_000), seed: 7, ..Default::default() });
                Ok(GoldenValue::num(if r.pass { r.max_deviation } else { f64::INFINITY }))
            },
        },
    ]
}

fn class_label(q: Quadrant, base: [f64; 2], v: [f64; 2]) -> Result<String> {
    let c = cone_classify(&ChartTangent::new(base, v), q)?;
    Ok(json!(c).as_str().unwrap_or_default().to_string())
}
