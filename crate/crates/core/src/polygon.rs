//! Convex polygons in canonical form with exact support functions.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::vec2::{Direction, Vec2};

/// Which one-sided limit to take at a kink of a support function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Row-major 2×2 matrix.
pub type Mat2 = [[f64; 2]; 2];

pub fn det2(m: &Mat2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn apply(m: &Mat2, p: Vec2) -> Vec2 {
    Vec2::new(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y)
}

/// A convex polygon with nonempty interior.
///
/// Vertices are stored counterclockwise, in strictly convex position, starting
/// from the lexicographically smallest vertex. Two polygons built from the same
/// point set therefore compare equal as vertex lists.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

fn lex_cmp(a: &Vec2, b: &Vec2) -> Ordering {
    a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))
}

/// Convex hull (Andrew's monotone chain), CCW from the lexicographically
/// smallest point, collinear points dropped.
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_unstable_by(lex_cmp);
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Vec2> = Vec::with_capacity(pts.len() + 1);
    for &p in pts.iter() {
        while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

#[inline]
fn turn(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - b)
}

/// Twice the signed area of a closed vertex loop.
pub fn shoelace2(vertices: &[Vec2]) -> f64 {
    let n = vertices.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        s += a.x * b.y - b.x * a.y;
    }
    s
}

impl Polygon {
    /// Convex hull of `points` in canonical form.
    pub fn from_vertices(points: &[Vec2]) -> Result<Self> {
        if let Some(bad) = points.iter().find(|p| !p.is_finite()) {
            return Err(GeomError::DegenerateInput(format!(
                "non-finite coordinate ({}, {})",
                bad.x, bad.y
            )));
        }
        let hull = convex_hull(points);
        if hull.len() < 3 {
            return Err(GeomError::DegenerateInput(format!(
                "hull has {} vertices",
                hull.len()
            )));
        }
        let area2 = shoelace2(&hull);
        let scale = hull
            .iter()
            .map(|p| p.x.abs().max(p.y.abs()))
            .fold(0.0, f64::max);
        if area2 <= 1e-300 || area2 <= 1e-14 * scale * scale {
            return Err(GeomError::DegenerateInput("zero area".into()));
        }
        Ok(Self { vertices: hull })
    }

    pub fn from_points<P: Into<Vec2> + Copy>(points: &[P]) -> Result<Self> {
        let pts: Vec<Vec2> = points.iter().map(|&p| p.into()).collect();
        Self::from_vertices(&pts)
    }

    /// The triangle with vertices (0,0), (1,0), (0,1).
    pub fn unit_triangle() -> Self {
        Self::from_points(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).expect("valid triangle")
    }

    /// Axis-parallel rectangle `[x0, x1] × [y0, y1]`.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        Self::from_points(&[[x0, y0], [x1, y0], [x1, y1], [x0, y1]])
    }

    /// Regular `n`-gon with circumradius `r` centred at `center`, first vertex at angle `phase`.
    pub fn regular(n: usize, r: f64, center: Vec2, phase: f64) -> Result<Self> {
        let pts: Vec<Vec2> = (0..n)
            .map(|k| {
                let a = phase + std::f64::consts::TAU * k as f64 / n as f64;
                center + Vec2::new(r * a.cos(), r * a.sin())
            })
            .collect();
        Self::from_vertices(&pts)
    }

    #[inline]
    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Vec2 {
        let n = self.vertices.len();
        self.vertices[i % n]
    }

    /// Edges `(v_i, v_{i+1})` in CCW order.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Outward unit normals of the edges, in edge order.
    pub fn edge_normals(&self) -> Vec<Vec2> {
        self.edges()
            .map(|(a, b)| {
                let e = b - a;
                Vec2::new(e.y, -e.x) * (1.0 / e.norm())
            })
            .collect()
    }

    /// Largest absolute coordinate; used to scale tolerances.
    pub fn scale(&self) -> f64 {
        self.vertices
            .iter()
            .map(|p| p.x.abs().max(p.y.abs()))
            .fold(0.0, f64::max)
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(a.dist(*b));
            }
        }
        d
    }

    /// Support function extended 1-homogeneously to all of R².
    pub fn support_vec(&self, u: Vec2) -> f64 {
        self.vertices
            .iter()
            .map(|p| p.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn support(&self, d: Direction) -> f64 {
        self.support_vec(d.u())
    }

    /// Vertex attaining the support in direction `d`. Ties are broken toward
    /// the requested side, i.e. the vertex that stays maximal for slightly
    /// larger (`Right`) or smaller (`Left`) angles.
    pub fn support_vertex(&self, d: Direction, side: Side) -> Vec2 {
        let u = d.u();
        let up = d.u_perp();
        let h = self.support_vec(u);
        let tol = 1e-12 * (1.0 + self.scale());
        let mut best: Option<(Vec2, f64)> = None;
        for &p in &self.vertices {
            if p.dot(u) < h - tol {
                continue;
            }
            let key = match side {
                Side::Right => p.dot(up),
                Side::Left => -p.dot(up),
            };
            if best.is_none_or(|(_, k)| key > k) {
                best = Some((p, key));
            }
        }
        best.expect("nonempty polygon").0
    }

    /// One-sided derivative of θ ↦ h(u(θ)): ⟨x*, u'(θ)⟩ for the one-sided argmax x*.
    pub fn support_derivative(&self, d: Direction, side: Side) -> f64 {
        self.support_vertex(d, side).dot(d.u_perp())
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        0.5 * shoelace2(&self.vertices).abs()
    }

    /// Pointwise negation, −P.
    pub fn reflect(&self) -> Self {
        let pts: Vec<Vec2> = self.vertices.iter().map(|&p| -p).collect();
        Self::from_vertices(&pts).expect("reflection preserves validity")
    }

    pub fn translate(&self, t: Vec2) -> Self {
        let pts: Vec<Vec2> = self.vertices.iter().map(|&p| p + t).collect();
        Self::from_vertices(&pts).expect("translation preserves validity")
    }

    /// Image under a nonsingular linear map, re-canonicalized.
    pub fn linear_map(&self, m: &Mat2) -> Result<Self> {
        let det = det2(m);
        if !(det.abs() >= 1e-14) {
            return Err(GeomError::SingularMatrix(det.abs()));
        }
        let pts: Vec<Vec2> = self.vertices.iter().map(|&p| apply(m, p)).collect();
        Self::from_vertices(&pts)
    }

    /// Whether the origin lies in P (`strict`: in its interior), decided by the
    /// signs of the support values at the edge normals.
    pub fn contains_origin(&self, strict: bool) -> bool {
        self.contains_point(Vec2::ZERO, strict)
    }

    pub fn contains_point(&self, x: Vec2, strict: bool) -> bool {
        self.edges().zip(self.edge_normals()).all(|((a, _), n)| {
            let h = (a - x).dot(n);
            if strict {
                h > 0.0
            } else {
                h >= 0.0
            }
        })
    }

    /// Smallest support value over the edge normals; the signed distance from
    /// the origin to the boundary when the origin is inside.
    pub fn min_edge_support(&self) -> f64 {
        self.edges()
            .zip(self.edge_normals())
            .map(|((a, _), n)| a.dot(n))
            .fold(f64::INFINITY, f64::min)
    }

    /// Centroid of the region.
    pub fn centroid(&self) -> Vec2 {
        let n = self.vertices.len();
        let mut c = Vec2::ZERO;
        let mut a2 = 0.0;
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let w = p.cross(q);
            a2 += w;
            c += (p + q) * w;
        }
        c * (1.0 / (3.0 * a2))
    }
}

/// Polygon file format: `{"vertices": [[x, y], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<[f64; 2]>,
}

impl PolygonJson {
    pub fn parse(text: &str) -> std::result::Result<Polygon, PolygonReadError> {
        let raw: PolygonJson = serde_json::from_str(text)?;
        Ok(Polygon::from_points(&raw.vertices)?)
    }

    pub fn to_json(p: &Polygon) -> String {
        let raw = PolygonJson {
            vertices: p.vertices().iter().map(|&v| v.into()).collect(),
        };
        serde_json::to_string(&raw).expect("plain data serializes")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PolygonReadError {
    #[error("malformed polygon JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Geometry(#[from] GeomError),
}
