//! Deterministic SVG 1.1 plots of shape-space samples and obtuse curves.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::analysis::ObtuseCurvePoint;
use crate::moduli::{uniform_target, ModuliRegion, PlanePoint};
use crate::{Error, Result, LANGFORD_OBTUSE_PROBABILITY};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 50.0;

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">
<rect width="{width}" height="{height}" fill="white"/>"#
    );
}

/// Maps `ab`-plane coordinates in `[0,1]^2` to canvas pixels.
fn to_canvas(a: f64, b: f64) -> (f64, f64) {
    let span = SIZE - 2.0 * MARGIN;
    (MARGIN + a * span, SIZE - MARGIN - b * span)
}

fn line(out: &mut String, from: (f64, f64), to: (f64, f64), class: &str, style: &str) {
    let (x1, y1) = to_canvas(from.0, from.1);
    let (x2, y2) = to_canvas(to.0, to.1);
    let _ = writeln!(
        out,
        r#"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" {style}/>"#
    );
}

/// Labeled shape space with its isosceles loci, the equilateral point and
/// one translucent dot per input point.
pub fn render_shapes(points: &[PlanePoint]) -> Result<String> {
    if points.is_empty() {
        return Err(Error::InvalidInput("nothing to plot".into()));
    }
    let mut out = String::new();
    header(&mut out, SIZE, SIZE);
    let corners = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]
        .iter()
        .map(|&(a, b)| {
            let (x, y) = to_canvas(a, b);
            format!("{x:.3},{y:.3}")
        })
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(
        out,
        r#"<polygon class="boundary" points="{corners}" fill="none" stroke="black" stroke-width="1.5"/>"#
    );
    let iso = r##"stroke="#888888" stroke-width="1" stroke-dasharray="4 3""##;
    // a = b, b = c, a = c.
    line(&mut out, (0.5, 0.5), (1.0, 1.0), "isosceles", iso);
    line(&mut out, (0.0, 1.0), (1.0, 0.5), "isosceles", iso);
    line(&mut out, (1.0, 0.0), (0.5, 1.0), "isosceles", iso);
    let _ = writeln!(out, r#"<g fill="steelblue" fill-opacity="0.35">"#);
    for p in points {
        let (x, y) = to_canvas(p.a, p.b);
        let _ = writeln!(out, r#"<circle class="pt" cx="{x:.3}" cy="{y:.3}" r="1.5"/>"#);
    }
    let _ = writeln!(out, "</g>");
    let (ex, ey) = to_canvas(2.0 / 3.0, 2.0 / 3.0);
    let _ = writeln!(
        out,
        r#"<circle class="equilateral" cx="{ex:.3}" cy="{ey:.3}" r="4" fill="none" stroke="red" stroke-width="1.5"/>"#
    );
    let (lx, ly) = to_canvas(0.0, 0.0);
    let _ = writeln!(
        out,
        r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12">a</text>"#,
        SIZE - MARGIN,
        ly + 20.0
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="12">b</text>"#,
        lx - 20.0,
        MARGIN
    );
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn plot_shapes(points: &[PlanePoint], path: &Path) -> Result<()> {
    let svg = render_shapes(points)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}

/// Weighted and distinct obtuse fractions against `n`, with reference
/// lines at the unit-square probability and the uniform-measure value.
pub fn render_curve(points: &[ObtuseCurvePoint]) -> Result<String> {
    if points.is_empty() {
        return Err(Error::InvalidInput("nothing to plot".into()));
    }
    let (width, height) = (800.0, 500.0);
    let langford = LANGFORD_OBTUSE_PROBABILITY;
    let uniform = uniform_target(ModuliRegion::ObtuseAll);
    let values = points
        .iter()
        .flat_map(|p| [p.weighted_fraction, p.distinct_fraction])
        .chain([langford, uniform]);
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    let pad = ((hi - lo) * 0.08).max(0.01);
    let (y_lo, y_hi) = (lo - pad, hi + pad);
    let n_min = points.iter().map(|p| p.n).min().unwrap_or(0);
    let n_max = points.iter().map(|p| p.n).max().unwrap_or(0);
    let x_of = |n: u32| {
        let span = (n_max - n_min).max(1) as f64;
        MARGIN + (n - n_min) as f64 / span * (width - 2.0 * MARGIN)
    };
    let y_of = |v: f64| height - MARGIN - (v - y_lo) / (y_hi - y_lo) * (height - 2.0 * MARGIN);

    let mut out = String::new();
    header(&mut out, width, height);
    let _ = writeln!(
        out,
        r#"<rect class="frame" x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        width - 2.0 * MARGIN,
        height - 2.0 * MARGIN
    );
    for (class, value, colour) in [
        ("ref-langford", langford, "#1f77b4"),
        ("ref-uniform", uniform, "#555555"),
    ] {
        let y = y_of(value);
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{MARGIN}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}" stroke="{colour}" stroke-dasharray="6 4"/>"#,
            width - MARGIN
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="11" fill="{colour}">{value:.6}</text>"#,
            width - MARGIN + 4.0,
            y + 4.0
        );
    }
    for (class, colour, pick) in [
        ("weighted", "#1f77b4", (|p: &ObtuseCurvePoint| p.weighted_fraction) as fn(&ObtuseCurvePoint) -> f64),
        ("distinct", "#ff7f0e", |p: &ObtuseCurvePoint| p.distinct_fraction),
    ] {
        let coords: Vec<(f64, f64)> = points.iter().map(|p| (x_of(p.n), y_of(pick(p)))).collect();
        if coords.len() > 1 {
            let pts = coords
                .iter()
                .map(|(x, y)| format!("{x:.3},{y:.3}"))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(
                out,
                r#"<polyline class="{class}" points="{pts}" fill="none" stroke="{colour}" stroke-width="2"/>"#
            );
        }
        for (x, y) in coords {
            let _ = writeln!(
                out,
                r#"<circle class="dot-{class}" cx="{x:.3}" cy="{y:.3}" r="3" fill="{colour}"/>"#
            );
        }
    }
    for p in points {
        let _ = writeln!(
            out,
            r#"<text class="tick-x" x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="10" text-anchor="middle">{}</text>"#,
            x_of(p.n),
            height - MARGIN + 15.0,
            p.n
        );
    }
    for k in 0..=4 {
        let v = y_lo + (y_hi - y_lo) * k as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text class="tick-y" x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="10" text-anchor="end">{v:.3}</text>"#,
            MARGIN - 4.0,
            y_of(v) + 3.0
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub(crate) fn write_curve_svg(points: &[ObtuseCurvePoint], out: &mut dyn Write) -> Result<()> {
    let svg = render_curve(points)?;
    out.write_all(svg.as_bytes())
        .map_err(|e| Error::io("<stream>", e))
}

pub fn plot_curve(points: &[ObtuseCurvePoint], path: &Path) -> Result<()> {
    let svg = render_curve(points)?;
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::enumerate_weighted;
    use crate::moduli::s3_orbit;

    #[test]
    fn single_equilateral_point() {
        let svg = render_shapes(&[PlanePoint { a: 2.0 / 3.0, b: 2.0 / 3.0 }]).unwrap();
        assert_eq!(svg.matches(r#"class="pt""#).count(), 1);
        let (x, y) = to_canvas(2.0 / 3.0, 2.0 / 3.0);
        let at = format!(r#"cx="{x:.3}" cy="{y:.3}""#);
        assert_eq!(svg.matches(&at).count(), 2);
        assert!(svg.contains(r#"class="equilateral""#));
    }

    #[test]
    fn orbit_census_dot_count() {
        let s = enumerate_weighted(5).unwrap();
        let (mut iso, mut scalene) = (0, 0);
        let mut pts = Vec::new();
        for k in s.keys() {
            if k.is_isosceles() {
                iso += 1;
            } else {
                scalene += 1;
            }
            pts.extend(s3_orbit(&k.shape()).iter().map(|t| t.to_plane()));
        }
        let svg = render_shapes(&pts).unwrap();
        assert_eq!(svg.matches(r#"class="pt""#).count(), 6 * scalene + 3 * iso);
        assert_eq!(svg, render_shapes(&pts).unwrap());
    }

    fn pt(n: u32, w: f64, d: f64) -> ObtuseCurvePoint {
        ObtuseCurvePoint {
            n,
            weighted_fraction: w,
            distinct_fraction: d,
            total_weight: 1,
            obtuse_weight: 0,
            distinct_count: 1,
            obtuse_distinct_count: 0,
        }
    }

    #[test]
    fn single_curve_point() {
        let svg = render_curve(&[pt(2, 0.7, 0.6)]).unwrap();
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches(r#"class="ref-"#).count(), 2);
        assert!(!svg.contains("<polyline"));
    }

    #[test]
    fn curve_ticks() {
        let pts: Vec<_> = (2..=10).map(|n| pt(n, 0.7, 0.6)).collect();
        let svg = render_curve(&pts).unwrap();
        for n in 2..=10 {
            assert!(svg.contains(&format!(r#"text-anchor="middle">{n}</text>"#)));
        }
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(render_curve(&[]).is_err());
        assert!(render_shapes(&[]).is_err());
    }
}
