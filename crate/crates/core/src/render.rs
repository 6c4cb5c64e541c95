//! Boundary curves of T +_p (−T) for the unit triangle T, and an SVG overlay.

use std::fmt::Write as _;

use crate::body::Body;
use crate::error::{GeomError, Result};
use crate::measure::outer_approx;
use crate::polygon::Polygon;
use crate::psum::{p_difference_polygon, PExponent};
use crate::vec2::{uniform_angles, Direction};

pub const RENDER_SAMPLES: usize = 720;
pub const CANVAS_PX: f64 = 600.0;
pub const CANVAS_HALF_WIDTH: f64 = 1.2;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

#[derive(Clone, Debug)]
pub struct Curve {
    pub p: PExponent,
    pub polygon: Polygon,
}

/// Exact hexagon / quadrilateral at p ∈ {1, ∞}, otherwise the outer
/// approximation of the closed-form body at 720 directions.
pub fn extremal_curve(p: PExponent) -> Result<Curve> {
    let polygon = match p_difference_polygon(&Polygon::unit_triangle(), p) {
        Some(poly) => poly,
        None => outer_approx(&Body::triangle_pdiff(p), RENDER_SAMPLES)?,
    };
    Ok(Curve { p, polygon })
}

pub fn extremal_curves(ps: &[PExponent]) -> Result<Vec<Curve>> {
    ps.iter().map(|&p| extremal_curve(p)).collect()
}

/// Largest amount by which a curve with larger p sticks out of one with
/// smaller p, over vertex-in-halfplane tests and 4096 support comparisons.
/// Nonpositive (up to rounding) when the curves are nested.
pub fn nesting_violation(curves: &[Curve]) -> f64 {
    let mut sorted: Vec<&Curve> = curves.iter().collect();
    sorted.sort_by_key(|a| a.p);
    let mut worst = f64::NEG_INFINITY;
    for w in sorted.windows(2) {
        let (outer, inner) = (&w[0].polygon, &w[1].polygon);
        for ((a, _), n) in outer.edges().zip(outer.edge_normals()) {
            let h = a.dot(n);
            for x in inner.vertices() {
                worst = worst.max(x.dot(n) - h);
            }
        }
        for t in uniform_angles(4096) {
            let d = Direction::new(t);
            worst = worst.max(inner.support(d) - outer.support(d));
        }
    }
    worst
}

/// Checks [`nesting_violation`] against `tol`.
pub fn check_nested(curves: &[Curve], tol: f64) -> Result<f64> {
    let v = nesting_violation(curves);
    if v > tol {
        return Err(GeomError::NumericalFailure(format!(
            "curves not nested: violation {v:e}"
        )));
    }
    Ok(v)
}

fn to_px(x: f64, y: f64) -> (f64, f64) {
    let s = CANVAS_PX / (2.0 * CANVAS_HALF_WIDTH);
    ((x + CANVAS_HALF_WIDTH) * s, (CANVAS_HALF_WIDTH - y) * s)
}

/// One closed path per curve plus a legend; byte-identical for equal input.
pub fn render_svg(curves: &[Curve]) -> String {
    let mut s = String::new();
    let px = CANVAS_PX as u32;
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{px}" height="{px}" viewBox="0 0 {px} {px}">"#
    );
    let _ = writeln!(s, r#"<rect width="{px}" height="{px}" fill="white"/>"#);
    let (ox, oy) = to_px(0.0, 0.0);
    let _ = writeln!(
        s,
        r##"<g stroke="#bbbbbb" stroke-width="0.5"><line x1="0" y1="{oy:.3}" x2="{px}" y2="{oy:.3}"/><line x1="{ox:.3}" y1="0" x2="{ox:.3}" y2="{px}"/></g>"##
    );
    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut d = String::new();
        for (k, v) in c.polygon.vertices().iter().enumerate() {
            let (x, y) = to_px(v.x, v.y);
            let _ = write!(d, "{}{x:.3} {y:.3} ", if k == 0 { "M" } else { "L" });
        }
        d.push('Z');
        let _ = writeln!(
            s,
            r#"<path d="{d}" fill="none" stroke="{color}" stroke-width="1.5" data-p="{}"><title>p = {}</title></path>"#,
            c.p, c.p
        );
        let _ = writeln!(
            s,
            r#"<text x="12" y="{}" font-family="sans-serif" font-size="14" fill="{color}">p = {}</text>"#,
            22 + 18 * i,
            c.p
        );
    }
    s.push_str("</svg>\n");
    s
}
