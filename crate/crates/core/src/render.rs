//! CSV and SVG output of indicatrix samples.

use std::fmt::Write;

use crate::cli::branch_label;
use crate::finsler::{null_directions, Branch, RegionKind, INDICATRIX_EXTENT};

pub fn csv(points: &[([f64; 2], Branch)]) -> String {
    let mut out = String::from("v1,v2,branch\n");
    for (p, b) in points {
        let _ = writeln!(out, "{},{},{}", p[0], p[1], branch_label(*b));
    }
    out
}

const SIZE: f64 = 480.0;

/// Drawing coordinates with the y axis pointing up.
fn screen(p: [f64; 2]) -> (f64, f64) {
    let half = INDICATRIX_EXTENT + 1.0;
    let s = SIZE / (2.0 * half);
    ((p[0] + half) * s, (half - p[1]) * s)
}

fn polyline(points: impl Iterator<Item = [f64; 2]>) -> String {
    points
        .map(|p| {
            let (x, y) = screen(p);
            format!("{x:.3},{y:.3}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn svg(kind: RegionKind, points: &[([f64; 2], Branch)]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let (ox, oy) = screen([0.0, 0.0]);
    for d in null_directions(kind) {
        let norm = d[0].hypot(d[1]);
        let (x, y) = screen([INDICATRIX_EXTENT * d[0] / norm, INDICATRIX_EXTENT * d[1] / norm]);
        let _ = writeln!(
            out,
            r##"  <line class="null" x1="{ox:.3}" y1="{oy:.3}" x2="{x:.3}" y2="{y:.3}" stroke="#888" stroke-dasharray="4 3"/>"##
        );
    }
    for (branch, colour) in [(Branch::Past, "#1f5fa8"), (Branch::Future, "#b8322a")] {
        let pts = points.iter().filter(|(_, b)| *b == branch).map(|(p, _)| *p);
        let _ = writeln!(
            out,
            r#"  <polyline class="{}" fill="none" stroke="{colour}" stroke-width="2" points="{}"/>"#,
            branch_label(branch),
            polyline(pts)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finsler::indicatrix_sample;

    #[test]
    fn csv_rows() {
        let pts = indicatrix_sample(RegionKind::TypeQ1, 64).unwrap();
        let text = csv(&pts);
        assert_eq!(text.lines().count(), 129);
        assert!(text.starts_with("v1,v2,branch\n-2,-8,past\n"));
    }

    #[test]
    fn svg_has_both_branches_and_null_rays() {
        let pts = indicatrix_sample(RegionKind::TypeQ2, 5).unwrap();
        let s = svg(RegionKind::TypeQ2, &pts);
        assert_eq!(s.matches("<polyline").count(), 2);
        assert_eq!(s.matches("class=\"null\"").count(), 4);
    }
}
