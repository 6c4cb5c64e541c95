//! Convex bodies as immutable expression trees over polygons.
//!
//! A [`Body`] is evaluated through its support function. Leaves are polygons
//! or the closed-form extremal p-difference body; interior nodes reflect,
//! scale, or p-sum their children. Nothing is ever flattened into a vertex
//! list: for 1 < p < ∞ a p-sum of polygons is not a polygon.

use std::sync::Arc;

use crate::error::{GeomError, Result};
use crate::functional::{triangle_pdiff_derivative, triangle_pdiff_support};
use crate::polygon::{Polygon, Side};
use crate::psum::PExponent;
use crate::vec2::{uniform_angles, Direction, Vec2};

/// Samples used to verify origin containment of composite p-sum operands.
pub const ORIGIN_CHECK_SAMPLES: usize = 4096;

#[derive(Clone, Debug)]
pub enum Node {
    Poly(Polygon),
    Reflect(Body),
    Scale(f64, Body),
    PSum(PExponent, Body, Body),
    TrianglePDiff(PExponent),
}

#[derive(Clone, Debug)]
pub struct Body {
    node: Arc<Node>,
}

impl From<Polygon> for Body {
    fn from(p: Polygon) -> Self {
        Body::polygon(p)
    }
}

impl Body {
    fn wrap(node: Node) -> Self {
        Self {
            node: Arc::new(node),
        }
    }

    pub fn polygon(p: Polygon) -> Self {
        Self::wrap(Node::Poly(p))
    }

    /// The closed-form body `T +_p (−T)` for the unit triangle `T`.
    pub fn triangle_pdiff(p: PExponent) -> Self {
        Self::wrap(Node::TrianglePDiff(p))
    }

    pub fn scale(c: f64, b: &Body) -> Result<Self> {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(GeomError::InvalidArgument(format!(
                "scale factor must be finite and >= 0, got {c}"
            )));
        }
        Ok(Self::wrap(Node::Scale(c, b.clone())))
    }

    /// −B. Polygons are negated vertex-wise and double reflections cancel.
    pub fn reflect(b: &Body) -> Self {
        match b.node() {
            Node::Poly(p) => Self::polygon(p.reflect()),
            Node::Reflect(inner) => inner.clone(),
            // centrally symmetric closed form
            Node::TrianglePDiff(_) => b.clone(),
            _ => Self::wrap(Node::Reflect(b.clone())),
        }
    }

    /// Firey p-sum node; both operands must contain the origin.
    pub fn psum(p: PExponent, a: &Body, b: &Body) -> Result<Self> {
        a.check_origin()?;
        b.check_origin()?;
        Ok(Self::wrap(Node::PSum(p, a.clone(), b.clone())))
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn as_polygon(&self) -> Option<&Polygon> {
        match self.node() {
            Node::Poly(p) => Some(p),
            _ => None,
        }
    }

    /// Exact vertex check for polygons, sampled check otherwise.
    pub fn check_origin(&self) -> Result<()> {
        match self.node() {
            Node::Poly(p) => {
                let tol = 1e-12 * (1.0 + p.scale());
                for ((a, _), n) in p.edges().zip(p.edge_normals()) {
                    let h = a.dot(n);
                    if h < -tol {
                        return Err(GeomError::NegativeSupport {
                            theta: Direction::of(n).theta(),
                            value: h,
                        });
                    }
                }
                Ok(())
            }
            _ => {
                let values: Vec<(f64, f64)> = uniform_angles(ORIGIN_CHECK_SAMPLES)
                    .map(|t| (t, self.support(Direction::new(t))))
                    .collect();
                let hmax = values.iter().map(|v| v.1.abs()).fold(0.0, f64::max);
                let tol = 1e-12 * (1.0 + hmax);
                match values.iter().find(|v| v.1 < -tol) {
                    Some(&(theta, value)) => Err(GeomError::NegativeSupport { theta, value }),
                    None => Ok(()),
                }
            }
        }
    }

    /// Angles where the support function may fail to be smooth: edge
    /// normals of polygon leaves and the branch points of the closed form.
    pub fn critical_angles(&self) -> Vec<f64> {
        match self.node() {
            Node::Poly(p) => p
                .edge_normals()
                .into_iter()
                .map(|n| Direction::of(n).theta())
                .collect(),
            Node::Reflect(b) => b
                .critical_angles()
                .into_iter()
                .map(|t| Direction::new(t).opposite().theta())
                .collect(),
            Node::Scale(_, b) => b.critical_angles(),
            Node::PSum(_, a, b) => {
                let mut v = a.critical_angles();
                v.extend(b.critical_angles());
                v
            }
            Node::TrianglePDiff(_) => (0..8)
                .map(|k| k as f64 * std::f64::consts::FRAC_PI_4)
                .collect(),
        }
    }

    pub fn support(&self, d: Direction) -> f64 {
        match self.node() {
            Node::Poly(p) => p.support(d),
            Node::Reflect(b) => b.support(d.opposite()),
            Node::Scale(c, b) => c * b.support(d),
            Node::PSum(p, a, b) => {
                let ha = a.support(d).max(0.0);
                let hb = b.support(d).max(0.0);
                combine(*p, ha, hb)
            }
            Node::TrianglePDiff(p) => triangle_pdiff_support(d.theta(), *p),
        }
    }

    /// Support function extended 1-homogeneously to all of R².
    pub fn support_vec(&self, u: Vec2) -> f64 {
        let n = u.norm();
        if n == 0.0 {
            return 0.0;
        }
        n * self.support(Direction::of(u))
    }

    /// One-sided derivative of θ ↦ h(θ).
    pub fn support_derivative(&self, d: Direction, side: Side) -> f64 {
        match self.node() {
            Node::Poly(p) => p.support_derivative(d, side),
            Node::Reflect(b) => b.support_derivative(d.opposite(), side),
            Node::Scale(c, b) => c * b.support_derivative(d, side),
            Node::TrianglePDiff(p) => triangle_pdiff_derivative(d.theta(), *p, side),
            Node::PSum(p, a, b) => {
                let ha = a.support(d).max(0.0);
                let hb = b.support(d).max(0.0);
                let da = a.support_derivative(d, side);
                let db = b.support_derivative(d, side);
                match *p {
                    PExponent::Infinite => {
                        let tol = 1e-12 * (1.0 + ha.max(hb));
                        if (ha - hb).abs() <= tol {
                            match side {
                                Side::Right => da.max(db),
                                Side::Left => da.min(db),
                            }
                        } else if ha > hb {
                            da
                        } else {
                            db
                        }
                    }
                    PExponent::Finite(p) => {
                        let h = combine(PExponent::Finite(p), ha, hb);
                        if h > 0.0 {
                            h.powf(1.0 - p) * (ha.powf(p - 1.0) * da + hb.powf(p - 1.0) * db)
                        } else {
                            // Both operands vanish: each is locally ~ |h_i'| ε on the
                            // requested side, so the sum is ~ (|a|^p + |b|^p)^{1/p} ε.
                            let mag = combine(PExponent::Finite(p), da.abs(), db.abs());
                            match side {
                                Side::Right => mag,
                                Side::Left => -mag,
                            }
                        }
                    }
                }
            }
        }
    }

    /// Boundary point with outward normal `d`: h·u + h'·u'. Exact for
    /// polygon leaves, where it is the one-sided argmax vertex.
    pub fn support_point(&self, d: Direction, side: Side) -> Vec2 {
        match self.node() {
            Node::Poly(p) => p.support_vertex(d, side),
            Node::Reflect(b) => -b.support_point(d.opposite(), side),
            Node::Scale(c, b) => b.support_point(d, side) * *c,
            _ => {
                let h = self.support(d);
                let dh = self.support_derivative(d, side);
                d.u() * h + d.u_perp() * dh
            }
        }
    }
}

/// (aᵖ + bᵖ)^{1/p}, or max(a, b) at p = ∞, for a, b ≥ 0.
pub fn combine(p: PExponent, a: f64, b: f64) -> f64 {
    match p {
        PExponent::Infinite => a.max(b),
        PExponent::Finite(1.0) => a + b,
        PExponent::Finite(p) => {
            let m = a.max(b);
            if m == 0.0 {
                return 0.0;
            }
            let (ra, rb) = (a / m, b / m);
            m * (ra.powf(p) + rb.powf(p)).powf(1.0 / p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn kmax() -> Body {
        Body::polygon(Polygon::unit_triangle())
    }

    #[test]
    fn psum_three_four_five() {
        assert_eq!(combine(PExponent::Finite(2.0), 3.0, 4.0), 5.0);
        assert_eq!(combine(PExponent::Infinite, 3.0, 4.0), 4.0);
        assert_eq!(combine(PExponent::Finite(1.0), 3.0, 4.0), 7.0);
    }

    #[test]
    fn psum_of_rectangles_with_supports_three_and_four() {
        let a = Body::polygon(Polygon::rectangle(-1.0, -1.0, 3.0, 1.0).unwrap());
        let b = Body::polygon(Polygon::rectangle(-1.0, -1.0, 4.0, 1.0).unwrap());
        let s = Body::psum(PExponent::Finite(2.0), &a, &b).unwrap();
        assert!((s.support(Direction::new(0.0)) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn psum_rejects_origin_outside() {
        let off =
            Body::polygon(Polygon::from_points(&[[1.0, 1.0], [2.0, 1.0], [1.0, 2.0]]).unwrap());
        let r = Body::psum(PExponent::Finite(2.0), &kmax(), &off);
        assert!(matches!(r, Err(GeomError::NegativeSupport { .. })));
        // composite operand checked by sampling
        let shifted = Body::scale(2.0, &off).unwrap();
        assert!(Body::psum(PExponent::Infinite, &kmax(), &shifted).is_err());
    }

    #[test]
    fn reflect_is_involution() {
        let k = kmax();
        let s = Body::scale(1.5, &k).unwrap();
        let rr = Body::reflect(&Body::reflect(&s));
        for t in uniform_angles(97) {
            let d = Direction::new(t);
            assert_eq!(rr.support(d), s.support(d));
        }
    }

    #[test]
    fn reflect_of_symmetric_body_is_itself() {
        let sq = Body::polygon(Polygon::rectangle(-1.0, -1.0, 1.0, 1.0).unwrap());
        let r = Body::reflect(&sq);
        for t in uniform_angles(64) {
            let d = Direction::new(t);
            assert_eq!(r.support(d), sq.support(d));
        }
    }

    #[test]
    fn derivative_of_self_psum_scales() {
        let k = Body::polygon(Polygon::regular(5, 1.0, Vec2::new(0.1, -0.2), 0.3).unwrap());
        let s = Body::psum(PExponent::Finite(2.0), &k, &k).unwrap();
        for t in [0.1, 1.0, 2.5, 4.0] {
            let d = Direction::new(t);
            let want = 2f64.sqrt() * k.support_derivative(d, Side::Right);
            assert!((s.support_derivative(d, Side::Right) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_when_both_operands_vanish() {
        let k = kmax();
        let s = Body::psum(PExponent::Finite(2.0), &k, &k).unwrap();
        let d = Direction::new(1.25 * PI);
        let want = 2f64.sqrt() * k.support_derivative(d, Side::Right);
        assert!((s.support_derivative(d, Side::Right) - want).abs() < 1e-12);
        let want = 2f64.sqrt() * k.support_derivative(d, Side::Left);
        assert!((s.support_derivative(d, Side::Left) - want).abs() < 1e-12);
    }

    #[test]
    fn support_point_of_polygon_is_vertex() {
        let k = kmax();
        let x = k.support_point(Direction::new(0.3), Side::Right);
        assert!(x.dist(Vec2::new(1.0, 0.0)) < 1e-15);
    }
}
