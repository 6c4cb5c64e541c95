//! Seeded generators for test bodies, linear maps and parameter systems.

use std::f64::consts::TAU;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::movements::Lps;
use crate::polygon::{det2, Mat2, Polygon};
use crate::vec2::Vec2;

pub const DEFAULT_SEED: u64 = 42;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Hull of `n` points at sorted uniform angles with radii in [0.2, 1],
/// translated so that a uniformly drawn interior point becomes the origin.
/// The hull may have fewer than `n` vertices.
pub fn random_polygon<R: Rng>(rng: &mut R, n: usize) -> Polygon {
    let n = n.max(3);
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Vec2> = angles
            .iter()
            .map(|&a| Vec2::new(a.cos(), a.sin()) * rng.gen_range(0.2..=1.0))
            .collect();
        if let Ok(p) = Polygon::from_vertices(&pts) {
            let o = uniform_interior_point(rng, &p);
            return p.translate(-o);
        }
    }
}

/// Like [`random_polygon`] but redraws until the hull has at least
/// `min_vertices` vertices.
pub fn random_polygon_at_least<R: Rng>(rng: &mut R, n: usize, min_vertices: usize) -> Polygon {
    loop {
        let p = random_polygon(rng, n);
        if p.len() >= min_vertices.min(n) {
            return p;
        }
    }
}

/// Uniform point of a convex polygon: a fan triangle chosen by area, then a
/// uniform point of that triangle.
pub fn uniform_interior_point<R: Rng>(rng: &mut R, p: &Polygon) -> Vec2 {
    let v = p.vertices();
    let areas: Vec<f64> = (1..v.len() - 1)
        .map(|i| 0.5 * (v[i] - v[0]).cross(v[i + 1] - v[0]))
        .collect();
    let total: f64 = areas.iter().sum();
    let mut pick = rng.gen_range(0.0..total);
    let mut k = areas.len() - 1;
    for (i, a) in areas.iter().enumerate() {
        if pick < *a {
            k = i;
            break;
        }
        pick -= a;
    }
    let (a, b, c) = (v[0], v[k + 1], v[k + 2]);
    let (r1, r2): (f64, f64) = (rng.gen(), rng.gen());
    let s = r1.sqrt();
    a * (1.0 - s) + b * (s * (1.0 - r2)) + c * (s * r2)
}

fn rotation(a: f64) -> Mat2 {
    let (s, c) = a.sin_cos();
    [[c, -s], [s, c]]
}

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut m = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    m
}

/// R(α)·diag(±s₁, s₂)·R(β) with s₁, s₂ ∈ [0.5, 2]: condition number ≤ 4,
/// orientation reversed half of the time.
pub fn random_linear_map<R: Rng>(rng: &mut R) -> Mat2 {
    let s1 = rng.gen_range(0.5..=2.0) * if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
    let s2 = rng.gen_range(0.5..=2.0);
    let m = mul(
        &mul(&rotation(rng.gen_range(0.0..TAU)), &[[s1, 0.0], [0.0, s2]]),
        &rotation(rng.gen_range(0.0..TAU)),
    );
    debug_assert!(det2(&m).abs() >= 0.25);
    m
}

pub fn random_direction<R: Rng>(rng: &mut R) -> Vec2 {
    let a = rng.gen_range(0.0..TAU);
    Vec2::new(a.cos(), a.sin())
}

/// `n` seed points uniform in [−1, 1]² with speeds in [−1, 1], a random
/// direction and interval [−1, 1]. Redraws until every body on a 65-point
/// grid of the interval is a proper polygon.
pub fn random_lps<R: Rng>(rng: &mut R, n: usize) -> Lps {
    let n = n.max(3);
    loop {
        let points: Vec<Vec2> = (0..n)
            .map(|_| Vec2::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
            .collect();
        let speeds: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let s =
            Lps::new(points, speeds, random_direction(rng), (-1.0, 1.0)).expect("valid seed data");
        if (0..65).all(|i| s.body_at(-1.0 + i as f64 / 32.0).is_ok()) {
            return s;
        }
    }
}

/// [`random_lps`] with an extra static seed point at the origin, so every
/// body of the family contains it.
pub fn random_origin_lps<R: Rng>(rng: &mut R, n: usize) -> Lps {
    let s = random_lps(rng, n.max(3) - 1);
    let mut points = s.points().to_vec();
    let mut speeds = s.speeds().to_vec();
    points.push(Vec2::ZERO);
    speeds.push(0.0);
    Lps::new(points, speeds, s.direction(), s.interval()).expect("valid seed data")
}
