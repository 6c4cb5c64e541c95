//! Areas: exact shoelace for polygons, and an inner/outer bracket for general
//! bodies built from support samples at equally spaced directions.
//!
//! The inner polygon is the convex hull of boundary points
//! ζ(θ) = h(θ)u(θ) + h'(θ)u'(θ), so it lies inside the body. The outer polygon
//! is the intersection of the supporting halfplanes at the same directions, so
//! it contains the body. Doubling the sample count nests both sequences.

use std::collections::VecDeque;
use std::f64::consts::TAU;

use crate::body::Body;
use crate::error::{GeomError, Result};
use crate::polygon::{Polygon, Side};
use crate::vec2::{uniform_angles, Direction, Vec2};

pub const MIN_SAMPLES: usize = 8;
pub const BRACKET_START: usize = 64;
pub const BRACKET_CAP: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AreaBracket {
    pub lower: f64,
    pub upper: f64,
    pub samples: usize,
}

impl AreaBracket {
    pub fn exact(area: f64) -> Self {
        Self {
            lower: area,
            upper: area,
            samples: 0,
        }
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn half_width(&self) -> f64 {
        0.5 * self.width()
    }

    pub fn relative_width(&self) -> f64 {
        if self.upper > 0.0 {
            self.width() / self.upper
        } else {
            0.0
        }
    }

    pub fn contains(&self, value: f64, slack: f64) -> bool {
        self.lower - slack <= value && value <= self.upper + slack
    }
}

pub fn area_polygon(p: &Polygon) -> f64 {
    p.area()
}

/// Convex hull of `n` support points (right-sided derivative).
pub fn inner_approx(b: &Body, n: usize) -> Result<Polygon> {
    check_samples(n)?;
    inner_at(b, &uniform_angles(n).collect::<Vec<_>>(), &[])
}

/// Intersection of the `n` supporting halfplanes ⟨x, u(θ_i)⟩ ≤ h(θ_i).
pub fn outer_approx(b: &Body, n: usize) -> Result<Polygon> {
    check_samples(n)?;
    outer_at(b, &uniform_angles(n).collect::<Vec<_>>())
}

/// Right-sided support points at `angles`, plus left-sided ones at `kinks`
/// so both endpoints of a flat edge are included.
fn inner_at(b: &Body, angles: &[f64], kinks: &[f64]) -> Result<Polygon> {
    let pts: Vec<Vec2> = angles
        .iter()
        .map(|&t| b.support_point(Direction::new(t), Side::Right))
        .chain(
            kinks
                .iter()
                .map(|&t| b.support_point(Direction::new(t), Side::Left)),
        )
        .collect();
    Polygon::from_vertices(&pts)
}

/// `angles` sorted in [0, 2π) with gaps below π.
fn outer_at(b: &Body, angles: &[f64]) -> Result<Polygon> {
    let gap = angles
        .windows(2)
        .map(|w| w[1] - w[0])
        .chain(std::iter::once(angles[0] + TAU - angles[angles.len() - 1]))
        .fold(f64::INFINITY, f64::min);
    if gap < 1e-9 {
        return Err(GeomError::NumericalFailure(format!(
            "angle gap {gap:e} too small for stable halfplane intersection"
        )));
    }
    let planes: Vec<HalfPlane> = angles
        .iter()
        .map(|&t| {
            let d = Direction::new(t);
            HalfPlane {
                normal: d.u(),
                offset: b.support(d),
            }
        })
        .collect();
    let verts = intersect_sorted_halfplanes(&planes)?;
    Polygon::from_vertices(&verts)
}

/// Equally spaced angles together with `extra`, sorted. Grid angles closer
/// than 1e-9 to an extra angle are dropped, as are near-duplicate extras.
fn merged_angles(n: usize, extra: &[f64]) -> Vec<f64> {
    const MIN_GAP: f64 = 1e-9;
    let mut ex: Vec<f64> = extra.iter().map(|&t| Direction::new(t).theta()).collect();
    ex.sort_by(f64::total_cmp);
    ex.dedup_by(|a, b| (*a - *b).abs() < MIN_GAP);
    if ex.len() > 1 && ex[0] + TAU - ex[ex.len() - 1] < MIN_GAP {
        ex.pop();
    }
    let near_extra = |t: f64| {
        let i = ex.partition_point(|&e| e < t);
        let circ = |e: f64| {
            let d = (e - t).abs();
            d.min(TAU - d)
        };
        [i.wrapping_sub(1), i, 0, ex.len().wrapping_sub(1)]
            .iter()
            .filter_map(|&k| ex.get(k))
            .any(|&e| circ(e) < MIN_GAP)
    };
    let mut all: Vec<f64> = uniform_angles(n).filter(|&t| !near_extra(t)).collect();
    all.extend_from_slice(&ex);
    all.sort_by(f64::total_cmp);
    all
}

fn check_samples(n: usize) -> Result<()> {
    if n < MIN_SAMPLES {
        return Err(GeomError::InvalidArgument(format!(
            "need at least {MIN_SAMPLES} sample directions, got {n}"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug)]
struct HalfPlane {
    normal: Vec2,
    offset: f64,
}

impl HalfPlane {
    fn violation(&self, x: Vec2) -> f64 {
        x.dot(self.normal) - self.offset
    }

    fn meet(&self, other: &HalfPlane) -> Result<Vec2> {
        let det = self.normal.cross(other.normal);
        if det.abs() < 1e-300 {
            return Err(GeomError::NumericalFailure(
                "parallel consecutive constraints".into(),
            ));
        }
        let x = (self.offset * other.normal.y - other.offset * self.normal.y) / det;
        let y = (self.normal.x * other.offset - other.normal.x * self.offset) / det;
        Ok(Vec2::new(x, y))
    }
}

/// Halfplanes with normals sorted by angle, consecutive gaps below π.
/// Returns the vertices of the (bounded) intersection in CCW order.
fn intersect_sorted_halfplanes(planes: &[HalfPlane]) -> Result<Vec<Vec2>> {
    let scale = planes.iter().map(|h| h.offset.abs()).fold(0.0, f64::max);
    let eps = 1e-13 * (1.0 + scale);
    let mut dq: VecDeque<HalfPlane> = VecDeque::with_capacity(planes.len());
    for &hp in planes {
        while dq.len() >= 2 {
            let x = dq[dq.len() - 2].meet(&dq[dq.len() - 1])?;
            if hp.violation(x) > eps {
                dq.pop_back();
            } else {
                break;
            }
        }
        while dq.len() >= 2 {
            let x = dq[0].meet(&dq[1])?;
            if hp.violation(x) > eps {
                dq.pop_front();
            } else {
                break;
            }
        }
        dq.push_back(hp);
    }
    while dq.len() >= 3 {
        let x = dq[dq.len() - 2].meet(&dq[dq.len() - 1])?;
        if dq[0].violation(x) > eps {
            dq.pop_back();
        } else {
            break;
        }
    }
    while dq.len() >= 3 {
        let x = dq[0].meet(&dq[1])?;
        if dq[dq.len() - 1].violation(x) > eps {
            dq.pop_front();
        } else {
            break;
        }
    }
    if dq.len() < 3 {
        return Err(GeomError::DegenerateInput(
            "halfplane intersection collapsed".into(),
        ));
    }
    let k = dq.len();
    let raw: Vec<Vec2> = (0..k)
        .map(|i| dq[i].meet(&dq[(i + 1) % k]))
        .collect::<Result<_>>()?;
    // several constraints through one corner meet at rounding-level distinct points
    let merge = 1e-12 * (1.0 + scale);
    let mut out: Vec<Vec2> = Vec::with_capacity(raw.len());
    for x in raw {
        if out.last().is_none_or(|&y: &Vec2| y.dist(x) > merge) {
            out.push(x);
        }
    }
    while out.len() > 1 && out[0].dist(out[out.len() - 1]) <= merge {
        out.pop();
    }
    Ok(out)
}

/// Inner and outer areas at a fixed sample count.
pub fn bracket_at(b: &Body, n: usize) -> Result<AreaBracket> {
    check_samples(n)?;
    bracket_on(b, &uniform_angles(n).collect::<Vec<_>>(), &[])
}

/// Like [`bracket_at`] with the body's kink angles added to the grid.
pub fn bracket_at_aligned(b: &Body, n: usize) -> Result<AreaBracket> {
    check_samples(n)?;
    let kinks = b.critical_angles();
    bracket_on(b, &merged_angles(n, &kinks), &kinks)
}

fn bracket_on(b: &Body, angles: &[f64], kinks: &[f64]) -> Result<AreaBracket> {
    let lower = inner_at(b, angles, kinks)?.area();
    let upper = outer_at(b, angles)?.area();
    Ok(AreaBracket {
        lower,
        upper: upper.max(lower),
        samples: angles.len(),
    })
}

/// Doubles the sample count from 64 until the relative width is at most
/// `rel_tol`. Past 2²² samples the last bracket is returned inside
/// [`GeomError::ToleranceNotReached`].
pub fn area_bracket(b: &Body, rel_tol: f64) -> Result<AreaBracket> {
    refine(b, rel_tol, bracket_at)
}

/// [`area_bracket`] on the equally spaced grid augmented with the angles at
/// which the support function may have kinks (edge normals of polygon
/// leaves). Flat boundary pieces then have sampled normals and the width
/// shrinks like N⁻² instead of N⁻¹.
pub fn area_bracket_aligned(b: &Body, rel_tol: f64) -> Result<AreaBracket> {
    refine(b, rel_tol, bracket_at_aligned)
}

fn refine(
    b: &Body,
    rel_tol: f64,
    at: fn(&Body, usize) -> Result<AreaBracket>,
) -> Result<AreaBracket> {
    refine_until(b, rel_tol, at, |_| false)
}

/// [`area_bracket_aligned`] that also stops as soon as `done` holds for the
/// current bracket.
pub fn area_bracket_aligned_until(
    b: &Body,
    rel_tol: f64,
    done: impl Fn(&AreaBracket) -> bool,
) -> Result<AreaBracket> {
    refine_until(b, rel_tol, bracket_at_aligned, done)
}

fn refine_until(
    b: &Body,
    rel_tol: f64,
    at: fn(&Body, usize) -> Result<AreaBracket>,
    done: impl Fn(&AreaBracket) -> bool,
) -> Result<AreaBracket> {
    if !(rel_tol > 0.0) {
        return Err(GeomError::InvalidArgument(format!(
            "rel_tol must be positive, got {rel_tol}"
        )));
    }
    let mut n = BRACKET_START;
    loop {
        let br = at(b, n)?;
        if br.relative_width() <= rel_tol || done(&br) {
            return Ok(br);
        }
        n *= 2;
        if n > BRACKET_CAP {
            return Err(GeomError::ToleranceNotReached { bracket: br });
        }
    }
}

/// [`area_bracket`], with a capped bracket returned as is. The flag reports
/// whether `rel_tol` was reached.
pub fn area_bracket_best_effort(b: &Body, rel_tol: f64) -> Result<(AreaBracket, bool)> {
    best_effort(area_bracket(b, rel_tol))
}

/// Turns [`GeomError::ToleranceNotReached`] into a bracket plus a flag
/// reporting whether `rel_tol` was reached.
pub fn best_effort(r: Result<AreaBracket>) -> Result<(AreaBracket, bool)> {
    match r {
        Ok(br) => Ok((br, true)),
        Err(GeomError::ToleranceNotReached { bracket }) => Ok((bracket, false)),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psum::{p_difference_body, p_sum, PExponent};

    fn kmax() -> Body {
        Body::polygon(Polygon::unit_triangle())
    }

    #[test]
    fn shoelace_values() {
        assert_eq!(area_polygon(&Polygon::unit_triangle()), 0.5);
        assert_eq!(
            area_polygon(&Polygon::rectangle(0.0, 0.0, 1.0, 1.0).unwrap()),
            1.0
        );
    }

    #[test]
    fn inner_recovers_polygon() {
        let inner = inner_approx(&kmax(), 12).unwrap();
        assert_eq!(inner, Polygon::unit_triangle());
        assert_eq!(inner.area(), 0.5);
    }

    #[test]
    fn outer_of_square_with_axis_directions() {
        let sq = Polygon::rectangle(-1.0, -1.0, 1.0, 1.0).unwrap();
        let outer = outer_approx(&Body::polygon(sq.clone()), 8).unwrap();
        assert_eq!(outer.len(), 4);
        for (a, b) in outer.vertices().iter().zip(sq.vertices()) {
            assert!(a.dist(*b) < 1e-12);
        }
        let outer = outer_approx(&Body::polygon(sq.clone()), 64).unwrap();
        assert!((outer.area() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn outer_converges_down_to_triangle() {
        // a rotated triangle whose edge normals are never sampled exactly
        let t = Polygon::unit_triangle()
            .linear_map(&[[0.9, 0.3], [-0.2, 1.1]])
            .unwrap();
        let b = Body::polygon(t.clone());
        let mut prev = f64::INFINITY;
        for k in 3..12 {
            let a = outer_approx(&b, 1 << k).unwrap().area();
            assert!(a >= t.area() - 1e-12);
            assert!(a <= prev + 1e-12);
            prev = a;
        }
        assert!(prev - t.area() < 1e-3);
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(
            inner_approx(&kmax(), 4),
            Err(GeomError::InvalidArgument(_))
        ));
    }

    #[test]
    fn self_max_keeps_area() {
        let k = kmax();
        let s = p_sum(&k, &k, PExponent::Infinite).unwrap();
        let br = area_bracket(&s, 1e-12).unwrap();
        assert!((br.lower - 0.5).abs() < 1e-15 && (br.upper - 0.5).abs() < 1e-15);
    }

    #[test]
    fn difference_hexagon_bracket_is_exact() {
        let d = p_difference_body(&kmax(), PExponent::ONE).unwrap();
        let br = area_bracket(&d, 1e-9).unwrap();
        assert!((br.midpoint() - 3.0).abs() < 1e-12);
        assert_eq!(br.samples, BRACKET_START);
    }

    #[test]
    fn triangle_bracket_tight_at_small_n() {
        let br = area_bracket(&kmax(), 1e-9).unwrap();
        assert!((br.lower - 0.5).abs() < 1e-15);
        assert!((br.upper - 0.5).abs() < 1e-12);
    }

    #[test]
    fn aligned_grid_fixes_unsampled_edges() {
        let t = Polygon::unit_triangle()
            .linear_map(&[[0.9, 0.3], [-0.2, 1.1]])
            .unwrap();
        let b = Body::polygon(t.clone());
        let br = bracket_at_aligned(&b, 64).unwrap();
        assert!((br.lower - t.area()).abs() < 1e-14 && (br.upper - t.area()).abs() < 1e-12);
        assert!(bracket_at(&b, 64).unwrap().width() > 1e-3);
    }

    #[test]
    fn merged_angles_drop_near_duplicates() {
        let a = merged_angles(8, &[std::f64::consts::FRAC_PI_4 + 1e-12, 1.0, 1.0 + 1e-13]);
        assert_eq!(a.len(), 9);
        assert!(a.windows(2).all(|w| w[1] - w[0] >= 1e-9));
    }

    #[test]
    fn cap_reports_last_bracket() {
        let b = Body::triangle_pdiff(PExponent::Finite(2.0));
        match area_bracket(&b, 1e-300) {
            Err(GeomError::ToleranceNotReached { bracket }) => {
                assert_eq!(bracket.samples, BRACKET_CAP);
                assert!(bracket.lower <= bracket.upper);
            }
            other => panic!("expected ToleranceNotReached, got {other:?}"),
        }
    }
}
