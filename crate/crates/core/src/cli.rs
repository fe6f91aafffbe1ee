//! Command implementations behind the `tlh` binary. Each returns the JSON it prints.

use std::f64::consts::E;

use serde_json::{json, Map, Value};

use crate::bodies::AntipodalSimplexPair;
use crate::error::{GeometryError, Result};
use crate::finsler::{
    cone_classify, indicatrix_sample, minkowski_functional, normed_functional, to_log_coords, Branch, ChartTangent, Quadrant,
    RegionKind,
};
use crate::metrics::{funk, hilbert, reverse_funk};
use crate::order::{relate, CausalRelation};
use crate::sphere::{lift, Chart, ChartPoint, SpherePoint};
use crate::verify::{run_suite, Suite, VerifyOptions};

/// Significant digits of every number in emitted JSON.
pub const JSON_DIGITS: usize = 15;

/// A real number; `e` and `-e` stand for ±Euler's number.
pub fn parse_number(s: &str) -> Result<f64> {
    let t = s.trim();
    match t {
        "e" => Ok(E),
        "-e" => Ok(-E),
        _ => t.parse().map_err(|_| GeometryError::InvalidArgument(format!("not a number: '{t}'"))),
    }
}

/// Comma-separated coordinates of a fixed length.
pub fn parse_coords<const N: usize>(s: &str) -> Result<[f64; N]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(GeometryError::InvalidArgument(format!("expected {N} comma-separated numbers, got '{s}'")));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = parse_number(p)?;
    }
    Ok(out)
}

fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", JSON_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Rounds every floating-point number in `v` to [`JSON_DIGITS`] significant digits.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n.as_f64().map(|x| json!(round_sig(x))).unwrap_or(Value::Number(n)),
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

/// Order and distances of two points of Ω. Distances of an `after` pair are those of the
/// reversed pair. With `strict`, an unrelated pair is an error.
pub fn dist(p: &SpherePoint, q: &SpherePoint, strict: bool) -> Result<Value> {
    let pair = AntipodalSimplexPair::standard();
    let relation = relate(&pair, p, q)?;
    let (a, b) = match relation {
        CausalRelation::Unrelated if strict => return Err(GeometryError::NotRelated),
        CausalRelation::Unrelated => return Ok(json!({ "relation": relation })),
        CausalRelation::After => (q, p),
        CausalRelation::Equal | CausalRelation::Before => (p, q),
    };
    Ok(json!({
        "relation": relation,
        "funk": funk(&pair, a, b)?,
        "reverse_funk": reverse_funk(&pair, a, b)?,
        "hilbert": hilbert(&pair, a, b)?,
    }))
}

pub fn dist_chart(chart: Chart, a: [f64; 2], b: [f64; 2], strict: bool) -> Result<Value> {
    let p = lift(chart, &ChartPoint::new(chart, a[0], a[1]))?;
    let q = lift(chart, &ChartPoint::new(chart, b[0], b[1]))?;
    dist(&p, &q, strict)
}

/// Cone class, Minkowski functional and its log-coordinate normal form.
pub fn finsler(quadrant: Quadrant, base: [f64; 2], vector: [f64; 2]) -> Result<Value> {
    let t = ChartTangent::new(base, vector);
    let class = cone_classify(&t, quadrant)?;
    let functional = minkowski_functional(&t, quadrant)?;
    let log = to_log_coords(&t, quadrant)?;
    let normed_value = normed_functional(log.vector, quadrant.into())?;
    if (functional - normed_value).abs() > 1e-12 * functional.abs().max(1.0) {
        return Err(GeometryError::InternalMismatch { primary: functional, check: normed_value });
    }
    Ok(json!({
        "class": class,
        "functional": functional,
        "log_base": log.base,
        "log_vector": log.vector,
        "normed_value": normed_value,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndicatrixFormat {
    Csv,
    Svg,
}

impl std::str::FromStr for IndicatrixFormat {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(IndicatrixFormat::Csv),
            "svg" => Ok(IndicatrixFormat::Svg),
            _ => Err(GeometryError::InvalidArgument(format!("unknown format '{s}' (expected csv or svg)"))),
        }
    }
}

pub fn parse_kind(s: &str) -> Result<RegionKind> {
    match s {
        "q1" => Ok(RegionKind::TypeQ1),
        "q2" => Ok(RegionKind::TypeQ2),
        _ => Err(GeometryError::InvalidArgument(format!("unknown region type '{s}' (expected q1 or q2)"))),
    }
}

pub fn indicatrix(kind: RegionKind, count: usize, format: IndicatrixFormat) -> Result<String> {
    let points = indicatrix_sample(kind, count)?;
    Ok(match format {
        IndicatrixFormat::Csv => crate::render::csv(&points),
        IndicatrixFormat::Svg => crate::render::svg(kind, &points),
    })
}

pub fn branch_label(b: Branch) -> &'static str {
    match b {
        Branch::Past => "past",
        Branch::Future => "future",
    }
}

/// Runs a suite; the JSON report and whether it passed.
pub fn verify(suite: &str, opts: &VerifyOptions) -> Result<(Value, bool)> {
    let suite: Suite = suite.parse()?;
    let report = run_suite(suite, opts);
    let pass = report.pass;
    let value = serde_json::to_value(&report).map_err(|e| GeometryError::InvalidArgument(e.to_string()))?;
    Ok((round_json(value), pass))
}
