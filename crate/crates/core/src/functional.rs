//! The area-ratio functional
//!
//!   F_p(K) = area(K +_p (−K)) / area(K)
//!
//! on planar convex bodies containing the origin, the closed-form extremal body
//! `T +_p (−T)` for the unit triangle `T = conv{o, e₁, e₂}`, and the sharp
//! constant c₂,ₚ = F_p(T) evaluated by quadrature.
//!
//! The support function of `T +_p (−T)` on [0, π] is
//!
//!   cos θ                         on [0, π/4)
//!   sin θ                         on [π/4, π/2)
//!   (sinᵖθ + (−cos θ)ᵖ)^{1/p}     on [π/2, π]
//!
//! and is π-periodic. The constant is
//!
//!   c₂,ₚ = 2 (1 + (p−1) ∫₀^{π/2} sin^{p−2}t cos^{p−2}t / (sinᵖt + cosᵖt)^{2(p−1)/p} dt)
//!
//! for 1 < p < ∞, with c₂,₁ = 6 and c₂,∞ = 4.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::body::{combine, Body};
use crate::error::{GeomError, Result};
use crate::measure::{
    area_bracket_aligned, area_bracket_aligned_until, area_bracket_best_effort, best_effort,
    AreaBracket,
};
use crate::polygon::{Polygon, Side};
use crate::psum::{p_difference_body, p_difference_polygon, PExponent};
use crate::quadrature::{tanh_sinh, DEFAULT_MAX_LEVEL};
use crate::vec2::{normalize_angle, Vec2, ANGLE_EPS};

/// θ reduced to [0, π).
fn half_turn(theta: f64) -> f64 {
    let t = normalize_angle(theta);
    let r = if t >= PI { t - PI } else { t };
    if PI - r <= ANGLE_EPS {
        0.0
    } else {
        r
    }
}

/// Support function of `T +_p (−T)` at angle `theta`.
pub fn triangle_pdiff_support(theta: f64, p: PExponent) -> f64 {
    let r = half_turn(theta);
    if r < FRAC_PI_4 {
        r.cos()
    } else if r < FRAC_PI_2 {
        r.sin()
    } else {
        combine(p, r.sin().max(0.0), (-r.cos()).max(0.0))
    }
}

#[derive(Clone, Copy)]
enum Branch {
    Cos,
    Sin,
    Curved,
}

fn branch_derivative(branch: Branch, r: f64, p: PExponent, side: Side) -> f64 {
    match branch {
        Branch::Cos => -r.sin(),
        Branch::Sin => r.cos(),
        Branch::Curved => {
            let s = r.sin().max(0.0);
            let c = (-r.cos()).max(0.0);
            match p {
                PExponent::Infinite => {
                    if (s - c).abs() <= 1e-12 {
                        match side {
                            Side::Right => r.cos().max(r.sin()),
                            Side::Left => r.cos().min(r.sin()),
                        }
                    } else if s > c {
                        r.cos()
                    } else {
                        r.sin()
                    }
                }
                PExponent::Finite(p) => {
                    let h = combine(PExponent::Finite(p), s, c);
                    h.powf(1.0 - p) * (s.powf(p - 1.0) * r.cos() + c.powf(p - 1.0) * r.sin())
                }
            }
        }
    }
}

/// One-sided angular derivative of [`triangle_pdiff_support`].
pub fn triangle_pdiff_derivative(theta: f64, p: PExponent, side: Side) -> f64 {
    let r = half_turn(theta);
    let near = |k: f64| (r - k).abs() <= ANGLE_EPS;
    if near(0.0) {
        return match side {
            Side::Right => branch_derivative(Branch::Cos, 0.0, p, side),
            Side::Left => branch_derivative(Branch::Curved, PI, p, side),
        };
    }
    if near(FRAC_PI_4) {
        return match side {
            Side::Right => branch_derivative(Branch::Sin, FRAC_PI_4, p, side),
            Side::Left => branch_derivative(Branch::Cos, FRAC_PI_4, p, side),
        };
    }
    if near(FRAC_PI_2) {
        return match side {
            Side::Right => branch_derivative(Branch::Curved, FRAC_PI_2, p, side),
            Side::Left => branch_derivative(Branch::Sin, FRAC_PI_2, p, side),
        };
    }
    let branch = if r < FRAC_PI_4 {
        Branch::Cos
    } else if r < FRAC_PI_2 {
        Branch::Sin
    } else {
        Branch::Curved
    };
    branch_derivative(branch, r, p, side)
}

/// Boundary parametrization ζ(θ) of `T +_p (−T)` for finite p > 1: linear
/// along the flat edge for θ ∈ [0, π/2], the curved arc on (π/2, π), and
/// ζ(θ) = −ζ(θ − π) on [π, 2π).
pub fn triangle_pdiff_boundary(theta: f64, p: f64) -> Result<Vec2> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(GeomError::InvalidExponent(p));
    }
    let t = normalize_angle(theta);
    if t >= PI {
        return Ok(-boundary_half(t - PI, p));
    }
    Ok(boundary_half(t, p))
}

fn boundary_half(t: f64, p: f64) -> Vec2 {
    if t <= FRAC_PI_2 {
        let a = t / FRAC_PI_2;
        return Vec2::new(1.0 - a, a);
    }
    let s = t.sin().max(0.0);
    let c = (-t.cos()).max(0.0);
    let h = (s.powf(p) + c.powf(p)).powf((1.0 - p) / p);
    Vec2::new(-h * c.powf(p - 1.0), h * s.powf(p - 1.0))
}

/// Default absolute tolerance for [`c2p`].
pub fn default_abs_tol(p: PExponent) -> f64 {
    match p {
        PExponent::Finite(p) if p < 1.1 => 1e-8,
        _ => 1e-10,
    }
}

/// c₂,ₚ with the quadrature error estimate (zero at the exact endpoints).
///
/// The integrand is symmetric about π/4 and behaves like t^{p−2} at t = 0.
/// With s = t^{p−1} the weight (p−1)t^{p−2}dt becomes ds, leaving a bounded
/// integrand on [0, (π/4)^{p−1}] that is handed to tanh-sinh.
pub fn c2p_with_error(p: PExponent, abs_tol: f64) -> Result<(f64, f64)> {
    if !(abs_tol > 0.0) {
        return Err(GeomError::InvalidArgument(format!(
            "abs_tol must be positive, got {abs_tol}"
        )));
    }
    let p = match p {
        PExponent::Infinite => return Ok((4.0, 0.0)),
        PExponent::Finite(1.0) => return Ok((6.0, 0.0)),
        PExponent::Finite(p) => p,
    };
    let q = p - 1.0;
    // ln of the upper limit (π/4)^{p−1}
    let ln_top = q * FRAC_PI_4.ln();
    // integrate over σ ∈ [0, 1], s = σ·(π/4)^{p−1}, t = (π/4)·σ^{1/(p−1)}
    let integrand = |sigma: f64| -> f64 {
        let t = FRAC_PI_4 * sigma.powf(1.0 / q);
        (ln_top + ln_reduced_integrand(t, p)).exp()
    };
    // c = 2 + 4J
    let r = tanh_sinh(integrand, 0.0, 1.0, abs_tol / 4.0, DEFAULT_MAX_LEVEL)?;
    Ok((2.0 + 4.0 * r.value, 4.0 * r.error))
}

/// ln of (tan t / t)^{p−2} · cos⁻²t · (1 + tanᵖt)^{−2(p−1)/p}, which equals
/// t^{2−p} sin^{p−2}t cos^{p−2}t / (sinᵖt + cosᵖt)^{2(p−1)/p}.
fn ln_reduced_integrand(t: f64, p: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let tan = t.tan();
    let ln_ratio = if t < 1e-8 {
        t * t / 3.0
    } else {
        (tan / t).ln()
    };
    (p - 2.0) * ln_ratio - 2.0 * t.cos().ln() - 2.0 * (p - 1.0) / p * tan.powf(p).ln_1p()
}

/// The sharp constant c₂,ₚ.
pub fn c2p(p: PExponent, abs_tol: f64) -> Result<f64> {
    c2p_with_error(p, abs_tol).map(|(v, _)| v)
}

#[derive(Clone, Copy, Debug)]
pub struct FpReport {
    pub p: PExponent,
    pub body_area: f64,
    pub pdiff_area: AreaBracket,
    /// Midpoint ratio.
    pub fp: f64,
    pub fp_lower: f64,
    pub fp_upper: f64,
    pub c2p: f64,
    /// c₂,ₚ − F_p.
    pub slack: f64,
    /// Whether the area bracket reached the requested relative tolerance.
    pub converged: bool,
}

impl FpReport {
    pub fn half_width(&self) -> f64 {
        0.5 * (self.fp_upper - self.fp_lower)
    }
}

/// Origin containment allowing rounding noise from translations.
pub fn contains_origin_tol(k: &Polygon) -> bool {
    k.min_edge_support() >= -1e-12 * (1.0 + k.scale())
}

/// F_p(K). Exact at p ∈ {1, ∞}; otherwise the area of `K +_p (−K)` is
/// bracketed to relative width `rel_tol` (or the sample cap), sampling the
/// edge normals of K and −K in addition to the uniform grid.
pub fn fp(k: &Polygon, p: PExponent, rel_tol: f64) -> Result<FpReport> {
    fp_with(k, p, rel_tol, None)
}

/// [`fp`] that stops refining once the bracket of F_p lies entirely on one
/// side of `bound`. `converged` is also set in that case.
pub fn fp_decide(k: &Polygon, p: PExponent, bound: f64, rel_tol: f64) -> Result<FpReport> {
    fp_with(k, p, rel_tol, Some(bound))
}

fn fp_with(k: &Polygon, p: PExponent, rel_tol: f64, bound: Option<f64>) -> Result<FpReport> {
    if !contains_origin_tol(k) {
        return Err(GeomError::OriginOutside);
    }
    let body_area = k.area();
    if !(body_area > 0.0) {
        return Err(GeomError::DegenerateInput("zero area".into()));
    }
    let (bracket, converged) = match p_difference_polygon(k, p) {
        Some(poly) => (AreaBracket::exact(poly.area()), true),
        None => {
            let body = p_difference_body(&Body::polygon(k.clone()), p)?;
            let r = match bound {
                None => area_bracket_aligned(&body, rel_tol),
                Some(c) => area_bracket_aligned_until(&body, rel_tol, |br| {
                    br.upper / body_area <= c || br.lower / body_area > c
                }),
            };
            best_effort(r)?
        }
    };
    let c = c2p(p, default_abs_tol(p))?;
    let value = bracket.midpoint() / body_area;
    Ok(FpReport {
        p,
        body_area,
        pdiff_area: bracket,
        fp: value,
        fp_lower: bracket.lower / body_area,
        fp_upper: bracket.upper / body_area,
        c2p: c,
        slack: c - value,
        converged,
    })
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub p: PExponent,
    pub quadrature: f64,
    /// From the bracket of the closed-form support function.
    pub closed_form: f64,
    pub closed_form_bracket: AreaBracket,
    /// From the bracket of the generic p-sum `T +_p (−T)`.
    pub generic: f64,
    pub generic_bracket: AreaBracket,
    pub max_deviation: f64,
}

fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

/// Computes c₂,ₚ three ways and checks they agree to `rel_tol`.
pub fn verify_extremal_consistency(p: PExponent, rel_tol: f64) -> Result<ConsistencyReport> {
    if !(rel_tol > 0.0) {
        return Err(GeomError::InvalidArgument(format!(
            "rel_tol must be positive, got {rel_tol}"
        )));
    }
    let area_t = 0.5;
    let quadrature = c2p(p, default_abs_tol(p).min(rel_tol * 0.1))?;
    let bracket_tol = rel_tol / 4.0;
    let (closed_form_bracket, _) = area_bracket_best_effort(&Body::triangle_pdiff(p), bracket_tol)?;
    let t = Body::polygon(Polygon::unit_triangle());
    let (generic_bracket, _) = area_bracket_best_effort(&p_difference_body(&t, p)?, bracket_tol)?;
    let closed_form = closed_form_bracket.midpoint() / area_t;
    let generic = generic_bracket.midpoint() / area_t;
    let max_deviation = rel_dev(quadrature, closed_form)
        .max(rel_dev(quadrature, generic))
        .max(rel_dev(closed_form, generic));
    if max_deviation > rel_tol {
        return Err(GeomError::ConsistencyFailure {
            deviation: max_deviation,
            tolerance: rel_tol,
        });
    }
    Ok(ConsistencyReport {
        p,
        quadrature,
        closed_form,
        closed_form_bracket,
        generic,
        generic_bracket,
        max_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vec2::Direction;

    const P2: PExponent = PExponent::Finite(2.0);

    #[test]
    fn support_branch_values() {
        assert_eq!(triangle_pdiff_support(0.0, P2), 1.0);
        assert!((triangle_pdiff_support(FRAC_PI_2, PExponent::Finite(1.7)) - 1.0).abs() < 1e-15);
        assert!((triangle_pdiff_support(0.75 * PI, P2) - 1.0).abs() < 1e-15);
        // π-periodic
        for t in [0.1, 0.9, 1.7, 2.9] {
            let a = triangle_pdiff_support(t, PExponent::Finite(3.0));
            let b = triangle_pdiff_support(t + PI, PExponent::Finite(3.0));
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn support_matches_generic_p_sum() {
        let t = Body::polygon(Polygon::unit_triangle());
        for p in [
            PExponent::ONE,
            PExponent::Finite(1.5),
            P2,
            PExponent::Finite(15.0),
            PExponent::Infinite,
        ] {
            let g = p_difference_body(&t, p).unwrap();
            for k in 0..720 {
                let th = k as f64 * PI / 360.0 + 1e-3;
                let d = Direction::new(th);
                assert!((g.support(d) - triangle_pdiff_support(th, p)).abs() < 1e-14);
                for side in [Side::Left, Side::Right] {
                    let a = g.support_derivative(d, side);
                    let b = triangle_pdiff_derivative(th, p, side);
                    assert!((a - b).abs() < 1e-12, "p={p} th={th} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn derivative_kinks() {
        let s = FRAC_PI_4.sin();
        assert!((triangle_pdiff_derivative(FRAC_PI_4, P2, Side::Left) + s).abs() < 1e-15);
        assert!((triangle_pdiff_derivative(FRAC_PI_4, P2, Side::Right) - s).abs() < 1e-15);
        // smooth at π/2 for p > 1, kinked at p = 1
        assert!(triangle_pdiff_derivative(FRAC_PI_2, P2, Side::Right).abs() < 1e-15);
        assert!(
            (triangle_pdiff_derivative(FRAC_PI_2, PExponent::ONE, Side::Right) - 1.0).abs() < 1e-15
        );
        assert!((triangle_pdiff_derivative(PI, PExponent::ONE, Side::Left) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn boundary_points() {
        let z = triangle_pdiff_boundary(0.0, 2.0).unwrap();
        assert_eq!(z, Vec2::new(1.0, 0.0));
        let z = triangle_pdiff_boundary(FRAC_PI_2, 2.0).unwrap();
        assert!(z.dist(Vec2::new(0.0, 1.0)) < 1e-15);
        let z = triangle_pdiff_boundary(0.75 * PI, 2.0).unwrap();
        let r = 0.5f64.sqrt();
        assert!(z.dist(Vec2::new(-r, r)) < 1e-15);
        let z = triangle_pdiff_boundary(1.75 * PI, 2.0).unwrap();
        assert!(z.dist(Vec2::new(r, -r)) < 1e-15);
        assert!(triangle_pdiff_boundary(1.0, 1.0).is_err());
        assert!(triangle_pdiff_boundary(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn endpoint_constants() {
        assert_eq!(c2p(PExponent::ONE, 1e-10).unwrap(), 6.0);
        assert_eq!(c2p(PExponent::Infinite, 1e-10).unwrap(), 4.0);
    }

    #[test]
    fn constant_at_two_is_two_plus_pi() {
        let (v, e) = c2p_with_error(P2, 1e-10).unwrap();
        assert!((v - (2.0 + PI)).abs() < 1e-12, "{v}");
        assert!(e <= 1e-10);
    }

    #[test]
    fn fp_endpoints_on_unit_triangle() {
        let t = Polygon::unit_triangle();
        let r = fp(&t, PExponent::ONE, 1e-9).unwrap();
        assert_eq!(r.fp, 6.0);
        assert_eq!(r.slack, 0.0);
        let r = fp(&t, PExponent::Infinite, 1e-9).unwrap();
        assert_eq!(r.fp, 4.0);
    }

    #[test]
    fn fp_of_centered_square() {
        let sq = Polygon::rectangle(-1.0, -1.0, 1.0, 1.0).unwrap();
        let r = fp(&sq, P2, 1e-8).unwrap();
        assert!((r.fp - 2.0).abs() < 1e-7);
        assert!((r.slack - PI).abs() < 1e-7);
        let r = fp(&sq, PExponent::Finite(3.0), 1e-8).unwrap();
        assert!((r.fp - 2f64.powf(2.0 / 3.0)).abs() < 1e-7);
    }

    #[test]
    fn fp_rejects_origin_outside() {
        let off = Polygon::from_points(&[[1.0, 1.0], [2.0, 1.0], [1.0, 2.0]]).unwrap();
        assert!(matches!(fp(&off, P2, 1e-6), Err(GeomError::OriginOutside)));
    }

    #[test]
    fn consistency_at_one_uses_exact_routes() {
        let r = verify_extremal_consistency(PExponent::ONE, 1e-9).unwrap();
        assert_eq!(r.quadrature, 6.0);
        assert!((r.closed_form - 6.0).abs() < 1e-12);
        assert!((r.generic - 6.0).abs() < 1e-12);
    }
}
