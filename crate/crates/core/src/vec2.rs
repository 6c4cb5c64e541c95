//! Points, vectors and unit directions in the plane.

use std::f64::consts::TAU;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Tolerance for comparing angles modulo 2π.
pub const ANGLE_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    #[inline]
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Counterclockwise rotation by π/2.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn dist(self, other: Vec2) -> f64 {
        (self - other).norm()
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

/// Reduce an angle to `[0, 2π)`, snapping values within [`ANGLE_EPS`] of 2π to 0.
pub fn normalize_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if TAU - r <= ANGLE_EPS {
        0.0
    } else {
        r
    }
}

/// True when two angles agree modulo 2π within [`ANGLE_EPS`].
pub fn angles_eq(a: f64, b: f64) -> bool {
    let d = normalize_angle(a - b);
    d <= ANGLE_EPS || TAU - d <= ANGLE_EPS
}

/// A unit vector on S¹ with its angle. `opposite` negates the vector
/// exactly, so h(−u) evaluations agree bitwise with reflected bodies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    theta: f64,
    u: Vec2,
}

impl Direction {
    pub fn new(theta: f64) -> Self {
        let theta = normalize_angle(theta);
        let (s, c) = theta.sin_cos();
        Self {
            theta,
            u: Vec2::new(c, s),
        }
    }

    /// Direction of a nonzero vector.
    pub fn of(v: Vec2) -> Self {
        Self::new(v.y.atan2(v.x))
    }

    #[inline]
    pub fn theta(self) -> f64 {
        self.theta
    }

    /// u(θ) = (cos θ, sin θ).
    #[inline]
    pub fn u(self) -> Vec2 {
        self.u
    }

    /// u'(θ) = (−sin θ, cos θ).
    #[inline]
    pub fn u_perp(self) -> Vec2 {
        self.u.perp()
    }

    pub fn rotated(self, delta: f64) -> Self {
        Self::new(self.theta + delta)
    }

    pub fn opposite(self) -> Self {
        Self {
            theta: normalize_angle(self.theta + std::f64::consts::PI),
            u: -self.u,
        }
    }
}

/// `n` equally spaced angles `2πk/n`, `k = 0..n`.
pub fn uniform_angles(n: usize) -> impl Iterator<Item = f64> + Clone {
    let step = TAU / n as f64;
    (0..n).map(move |k| k as f64 * step)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_vectors_are_orthonormal() {
        for k in 0..100 {
            let d = Direction::new(k as f64 * 0.37 - 5.0);
            assert!((d.u().norm() - 1.0).abs() < 1e-12);
            assert!(d.u().dot(d.u_perp()).abs() < 1e-15);
        }
    }

    #[test]
    fn angles_wrap_without_branch_cut() {
        assert_eq!(Direction::new(TAU).theta(), 0.0);
        assert_eq!(Direction::new(TAU - 1e-14).theta(), 0.0);
        assert!((Direction::new(-PI / 2.0).theta() - 1.5 * PI).abs() < 1e-15);
        assert!(angles_eq(1e-13, TAU - 1e-13));
        assert!(angles_eq(3.0 * PI, PI));
        assert!(!angles_eq(0.0, 1e-9));
    }

    #[test]
    fn direction_of_vector() {
        let d = Direction::of(Vec2::new(0.0, -2.0));
        assert!((d.theta() - 1.5 * PI).abs() < 1e-15);
    }
}
