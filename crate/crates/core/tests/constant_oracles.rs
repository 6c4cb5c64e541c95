//! c₂,ₚ against reference values and independent routes.
//!
//! The reference table was produced offline with 40-digit arbitrary precision
//! quadrature of the same integral after the substitution s = t^{p−1}, and
//! cross-checked at p ∈ {1.5, 2, 3, 15} by integrating x dy − y dx along the
//! curved boundary arc of the extremal body.

#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use pbody::functional::{
    c2p, c2p_with_error, default_abs_tol, triangle_pdiff_boundary, triangle_pdiff_support,
    verify_extremal_consistency,
};
use pbody::measure::area_bracket;
use pbody::{Body, PExponent};

const REFERENCE: &[(f64, f64)] = &[
    (1.001, 5.999_993_442_981_462_7),
    (1.01, 5.999_364_231_936_382_1),
    (1.05, 5.986_070_383_531_699_4),
    (1.1, 5.952_233_558_171_889_9),
    (1.5, 5.533_277_500_570_899_9),
    (2.0, 5.141_592_653_589_793_2),
    (3.0, 4.737_853_623_918_902_9),
    (15.0, 4.136_455_059_123_020_2),
    (20.0, 4.101_761_394_748_705_2),
    (100.0, 4.020_070_912_488_576_3),
    (1000.0, 4.002_000_710_033_511_9),
];

#[test]
fn matches_high_precision_table() {
    for &(p, want) in REFERENCE {
        let pe = PExponent::Finite(p);
        let tol = default_abs_tol(pe);
        let (got, err) = c2p_with_error(pe, tol).unwrap();
        assert!(err <= tol, "p={p}: error estimate {err:e}");
        assert!(
            (got - want).abs() <= tol,
            "p={p}: {got} vs {want}, diff {:e}",
            got - want
        );
    }
}

#[test]
fn two_plus_pi_to_1e8() {
    let v = c2p(PExponent::Finite(2.0), 1e-10).unwrap();
    assert!((v - (2.0 + PI)).abs() < 1e-8);
}

/// Composite Simpson on the unsubstituted integrand; smooth when p − 2 is a
/// nonnegative integer.
fn simpson_c2p(p: f64, n: usize) -> f64 {
    let f = |t: f64| {
        let (s, c) = t.sin_cos();
        s.powf(p - 2.0) * c.powf(p - 2.0) / (s.powf(p) + c.powf(p)).powf(2.0 * (p - 1.0) / p)
    };
    let (a, b) = (0.0, PI / 2.0);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    2.0 * (1.0 + (p - 1.0) * acc * h / 3.0)
}

#[test]
fn agrees_with_direct_simpson_for_smooth_integrands() {
    for p in [2.0, 3.0, 4.0, 5.0, 7.0] {
        let q = c2p(PExponent::Finite(p), 1e-10).unwrap();
        let s = simpson_c2p(p, 20_000);
        assert!((q - s).abs() < 1e-9, "p={p}: {q} vs {s}");
    }
}

#[test]
fn tends_to_endpoint_constants() {
    let near_one = c2p(PExponent::Finite(1.0 + 1e-6), 1e-8).unwrap();
    assert!((near_one - 6.0).abs() < 1e-4);
    let large = c2p(PExponent::Finite(1e5), 1e-10).unwrap();
    assert!((large - 4.0).abs() < 1e-3);
}

#[test]
fn closed_form_area_at_two() {
    // two unit-leg right triangles plus two quarter disks
    let want = (2.0 + PI) / 2.0;
    let br = area_bracket(&Body::triangle_pdiff(PExponent::Finite(2.0)), 1e-7).unwrap();
    assert!(br.lower <= want && want <= br.upper);
    assert!((br.midpoint() - want).abs() <= 1e-7 * want);
}

#[test]
fn three_way_consistency_at_two_and_fifteen() {
    let r = verify_extremal_consistency(PExponent::Finite(2.0), 1e-5).unwrap();
    assert!(r.max_deviation <= 1e-5);
    assert!((r.quadrature - (2.0 + PI)).abs() < 1e-9);

    let r = verify_extremal_consistency(PExponent::Finite(15.0), 1e-5).unwrap();
    assert!(r.quadrature > 4.0 && r.quadrature < 6.0);
}

#[test]
fn boundary_lies_on_supporting_lines() {
    // curved arcs: ζ(θ) is the support point with normal u(θ)
    for p in [1.5, 2.0, 3.0] {
        let pe = PExponent::Finite(p);
        for k in 0..4096 {
            let th = 2.0 * PI * k as f64 / 4096.0;
            let r = th % PI;
            let z = triangle_pdiff_boundary(th, p).unwrap();
            if r > PI / 2.0 {
                let u = (th.cos(), th.sin());
                let h = triangle_pdiff_support(th, pe);
                assert!((z.x * u.0 + z.y * u.1 - h).abs() < 1e-10, "p={p} th={th}");
            } else {
                // flat edge between ±(1,0) and ±(0,1): on the line with normal π/4
                let n = if th < PI { PI / 4.0 } else { 1.25 * PI };
                let h = triangle_pdiff_support(n, pe);
                assert!((z.x * n.cos() + z.y * n.sin() - h).abs() < 1e-10);
            }
            for j in 0..64 {
                let phi = 2.0 * PI * (j as f64 + 0.37) / 64.0;
                let v = z.x * phi.cos() + z.y * phi.sin();
                assert!(v <= triangle_pdiff_support(phi, pe) + 1e-10);
            }
        }
    }
}

#[test]
fn boundary_continuous_at_quarter_turn() {
    // Right of π/2 the x-coordinate approaches 0 like δ^{p−1} and y approaches 1
    // like δ^p, too slowly to sample directly in f64 at p = 1.5. Each one-sided
    // limit is extrapolated from two offsets with the known exponent.
    fn limit(g1: f64, g2: f64, d1: f64, d2: f64, alpha: f64) -> f64 {
        let (a1, a2) = (d1.powf(alpha), d2.powf(alpha));
        (g2 * a1 - g1 * a2) / (a1 - a2)
    }
    let (d1, d2) = (1e-5, 1e-6);
    for p in [1.5, 2.0, 3.0] {
        let l1 = triangle_pdiff_boundary(PI / 2.0 - d1, p).unwrap();
        let l2 = triangle_pdiff_boundary(PI / 2.0 - d2, p).unwrap();
        let r1 = triangle_pdiff_boundary(PI / 2.0 + d1, p).unwrap();
        let r2 = triangle_pdiff_boundary(PI / 2.0 + d2, p).unwrap();
        // left side is linear in θ
        let left = (
            limit(l1.x, l2.x, d1, d2, 1.0),
            limit(l1.y, l2.y, d1, d2, 1.0),
        );
        let right = (
            limit(r1.x, r2.x, d1, d2, p - 1.0),
            limit(r1.y, r2.y, d1, d2, p),
        );
        assert!(
            (left.0 - right.0).abs() < 1e-9,
            "p={p}: x {left:?} {right:?}"
        );
        assert!(
            (left.1 - right.1).abs() < 1e-9,
            "p={p}: y {left:?} {right:?}"
        );
        // and the value at π/2 itself is the common limit
        let mid = triangle_pdiff_boundary(PI / 2.0, p).unwrap();
        assert!((mid.x - right.0).abs() < 1e-9 && (mid.y - right.1).abs() < 1e-9);
    }
}
