//! Firey p-sums, with exact polygon oracles at the endpoints p = 1 and p = ∞.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::body::Body;
use crate::error::{GeomError, Result};
use crate::polygon::{convex_hull, Polygon};
use crate::vec2::Vec2;

/// An exponent p ∈ [1, ∞], with ∞ kept symbolic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PExponent {
    Finite(f64),
    Infinite,
}

impl PExponent {
    pub const ONE: PExponent = PExponent::Finite(1.0);

    /// `f64::INFINITY` maps to [`PExponent::Infinite`].
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(PExponent::Infinite)
        } else if p >= 1.0 && p.is_finite() {
            Ok(PExponent::Finite(p))
        } else {
            Err(GeomError::InvalidExponent(p))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            PExponent::Finite(p) => p,
            PExponent::Infinite => f64::INFINITY,
        }
    }

    pub fn is_one(self) -> bool {
        self == PExponent::ONE
    }

    pub fn is_infinite(self) -> bool {
        self == PExponent::Infinite
    }

    /// 2^{1/p}.
    pub fn two_root(self) -> f64 {
        match self {
            PExponent::Finite(p) => 2f64.powf(1.0 / p),
            PExponent::Infinite => 1.0,
        }
    }
}

impl Eq for PExponent {}

impl PartialOrd for PExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value().total_cmp(&other.value())
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExponent::Finite(p) => write!(f, "{p}"),
            PExponent::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for PExponent {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "+inf" | "∞" => Ok(PExponent::Infinite),
            _ => {
                let p: f64 = t.parse().map_err(|_| {
                    GeomError::InvalidArgument(format!("cannot parse p from {s:?}"))
                })?;
                PExponent::new(p)
            }
        }
    }
}

/// K +_p L. Both operands must contain the origin.
pub fn p_sum(a: &Body, b: &Body, p: PExponent) -> Result<Body> {
    Body::psum(p, a, b)
}

/// K +_p (−K).
pub fn p_difference_body(k: &Body, p: PExponent) -> Result<Body> {
    p_sum(k, &Body::reflect(k), p)
}

/// Index of the lowest vertex (smallest y, then smallest x).
fn bottom_index(pts: &[Vec2]) -> usize {
    (0..pts.len())
        .min_by(|&i, &j| {
            pts[i]
                .y
                .total_cmp(&pts[j].y)
                .then(pts[i].x.total_cmp(&pts[j].x))
        })
        .unwrap_or(0)
}

/// Minkowski sum of two convex CCW vertex chains by merging their edges in
/// angular order. Either chain may be a single point or a segment.
pub fn minkowski_sum_convex(a: &[Vec2], b: &[Vec2]) -> Vec<Vec2> {
    assert!(!a.is_empty() && !b.is_empty(), "empty vertex chain");
    let (n, m) = (a.len(), b.len());
    let (ia, ib) = (bottom_index(a), bottom_index(b));
    let pa = |k: usize| a[(ia + k) % n];
    let pb = |k: usize| b[(ib + k) % m];
    let mut out = Vec::with_capacity(n + m);
    let (mut i, mut j) = (0usize, 0usize);
    while i < n || j < m {
        out.push(pa(i) + pb(j));
        let ea = pa(i + 1) - pa(i);
        let eb = pb(j + 1) - pb(j);
        let c = if i >= n {
            -1.0
        } else if j >= m {
            1.0
        } else {
            ea.cross(eb)
        };
        if c > 0.0 {
            i += 1;
        } else if c < 0.0 {
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out
}

/// Exact P + Q.
pub fn minkowski_sum_polygons(p: &Polygon, q: &Polygon) -> Polygon {
    let pts = minkowski_sum_convex(p.vertices(), q.vertices());
    Polygon::from_vertices(&pts).expect("sum of polygons with interior has interior")
}

/// Exact conv(P ∪ Q).
pub fn convex_hull_union(p: &Polygon, q: &Polygon) -> Polygon {
    let mut pts: Vec<Vec2> = p.vertices().to_vec();
    pts.extend_from_slice(q.vertices());
    Polygon::from_vertices(&pts).expect("hull of polygons with interior has interior")
}

/// Vertex-sum hull, the brute-force reference for [`minkowski_sum_polygons`].
pub fn minkowski_sum_brute(p: &Polygon, q: &Polygon) -> Vec<Vec2> {
    let mut pts = Vec::with_capacity(p.len() * q.len());
    for &a in p.vertices() {
        for &b in q.vertices() {
            pts.push(a + b);
        }
    }
    convex_hull(&pts)
}

/// Exact polygon for `K +_p (−K)` at p ∈ {1, ∞}; `None` otherwise.
pub fn p_difference_polygon(k: &Polygon, p: PExponent) -> Option<Polygon> {
    match p {
        PExponent::Infinite => Some(convex_hull_union(k, &k.reflect())),
        p if p.is_one() => Some(minkowski_sum_polygons(k, &k.reflect())),
        _ => None,
    }
}
