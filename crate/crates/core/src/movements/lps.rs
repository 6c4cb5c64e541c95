//! Linear parameter systems K_t = conv{x_i + λ_i t v} and their lifts
//! K̃ = conv{x_i + λ_i e₃} ⊂ R³. K_t is the projection of K̃ along e₃ − t v,
//! which gives h_{K_t}(u) = h_{K̃}(u + t⟨u, v⟩ e₃).

use crate::body::{combine, Body};
use crate::error::{GeomError, Result};
use crate::polygon::Polygon;
use crate::psum::{p_sum, PExponent};
use crate::vec2::{Direction, Vec2};

const INTERVAL_EPS: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Lps {
    points: Vec<Vec2>,
    speeds: Vec<f64>,
    direction: Vec2,
    interval: (f64, f64),
}

impl Lps {
    /// `direction` is normalized; `interval` must satisfy t₀ < t₁.
    pub fn new(
        points: Vec<Vec2>,
        speeds: Vec<f64>,
        direction: Vec2,
        interval: (f64, f64),
    ) -> Result<Self> {
        if points.len() != speeds.len() {
            return Err(GeomError::InvalidArgument(format!(
                "{} points but {} speeds",
                points.len(),
                speeds.len()
            )));
        }
        if points.len() < 3 {
            return Err(GeomError::DegenerateInput(format!(
                "{} seed points",
                points.len()
            )));
        }
        if points.iter().any(|p| !p.is_finite()) || speeds.iter().any(|s| !s.is_finite()) {
            return Err(GeomError::InvalidArgument("unbounded seed data".into()));
        }
        let direction = direction
            .normalized()
            .ok_or_else(|| GeomError::InvalidArgument("zero direction".into()))?;
        let (t0, t1) = interval;
        if !(t0 < t1) || !t0.is_finite() || !t1.is_finite() {
            return Err(GeomError::InvalidArgument(format!(
                "bad interval [{t0}, {t1}]"
            )));
        }
        Ok(Self {
            points,
            speeds,
            direction,
            interval,
        })
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn speeds(&self) -> &[f64] {
        &self.speeds
    }

    pub fn direction(&self) -> Vec2 {
        self.direction
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn max_speed(&self) -> f64 {
        self.speeds.iter().map(|s| s.abs()).fold(0.0, f64::max)
    }

    fn check_t(&self, t: f64) -> Result<()> {
        let (t0, t1) = self.interval;
        if t < t0 - INTERVAL_EPS || t > t1 + INTERVAL_EPS {
            return Err(GeomError::OutOfInterval { t, t0, t1 });
        }
        Ok(())
    }

    /// Seed positions x_i + λ_i t v.
    pub fn positions(&self, t: f64) -> Vec<Vec2> {
        self.points
            .iter()
            .zip(&self.speeds)
            .map(|(&x, &l)| x + self.direction * (l * t))
            .collect()
    }

    pub fn body_at(&self, t: f64) -> Result<Polygon> {
        self.check_t(t)?;
        Polygon::from_vertices(&self.positions(t))
    }

    /// Points −x_i with speeds −λ_i: the family t ↦ −K_t.
    pub fn reflected(&self) -> Lps {
        Lps {
            points: self.points.iter().map(|&x| -x).collect(),
            speeds: self.speeds.iter().map(|&s| -s).collect(),
            direction: self.direction,
            interval: self.interval,
        }
    }

    pub fn lift(&self) -> LiftedBody {
        lift(self)
    }
}

/// The body K̃ ⊂ R³ generating an LPS, kept as its generating point set.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedBody {
    pub vertices3: Vec<[f64; 3]>,
}

impl LiftedBody {
    pub fn support(&self, w: [f64; 3]) -> f64 {
        self.vertices3
            .iter()
            .map(|x| x[0] * w[0] + x[1] * w[1] + x[2] * w[2])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// h_{K̃}(u + t⟨u, v⟩e₃).
    pub fn support_along(&self, u: Vec2, t: f64, v: Vec2) -> f64 {
        self.support([u.x, u.y, t * u.dot(v)])
    }

    /// Image of the generating points under the projection along e₃ − t v.
    pub fn project(&self, t: f64, v: Vec2) -> Vec<Vec2> {
        self.vertices3
            .iter()
            .map(|x| Vec2::new(x[0], x[1]) + v * (x[2] * t))
            .collect()
    }
}

pub fn lift(s: &Lps) -> LiftedBody {
    LiftedBody {
        vertices3: s
            .points
            .iter()
            .zip(&s.speeds)
            .map(|(x, &l)| [x.x, x.y, l])
            .collect(),
    }
}

/// The family t ↦ K_t +_p L_t of two LPS along the same direction.
#[derive(Clone, Debug)]
pub struct LpsPSum {
    first: Lps,
    second: Lps,
    p: PExponent,
    interval: (f64, f64),
}

pub fn lps_p_sum(s1: &Lps, s2: &Lps, p: PExponent) -> Result<LpsPSum> {
    if (s1.direction - s2.direction).norm() > 1e-12 {
        return Err(GeomError::DirectionMismatch);
    }
    let t0 = s1.interval.0.max(s2.interval.0);
    let t1 = s1.interval.1.min(s2.interval.1);
    if !(t0 < t1) {
        return Err(GeomError::InvalidArgument(
            "parameter intervals do not overlap".into(),
        ));
    }
    Ok(LpsPSum {
        first: s1.clone(),
        second: s2.clone(),
        p,
        interval: (t0, t1),
    })
}

impl LpsPSum {
    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn p(&self) -> PExponent {
        self.p
    }

    pub fn body_at(&self, t: f64) -> Result<Body> {
        let (t0, t1) = self.interval;
        if t < t0 - INTERVAL_EPS || t > t1 + INTERVAL_EPS {
            return Err(GeomError::OutOfInterval { t, t0, t1 });
        }
        let a = Body::polygon(self.first.body_at(t)?);
        let b = Body::polygon(self.second.body_at(t)?);
        p_sum(&a, &b, self.p)
    }

    /// h_{K̃ +_p L̃}(u + t⟨u, v⟩e₃), from the lifted bodies.
    pub fn lifted_support(&self, d: Direction, t: f64) -> Result<f64> {
        let v = self.first.direction;
        let ha = lift(&self.first).support_along(d.u(), t, v);
        let hb = lift(&self.second).support_along(d.u(), t, v);
        let tol = 1e-12 * (1.0 + ha.abs().max(hb.abs()));
        if ha < -tol || hb < -tol {
            return Err(GeomError::NegativeSupport {
                theta: d.theta(),
                value: ha.min(hb),
            });
        }
        Ok(combine(self.p, ha.max(0.0), hb.max(0.0)))
    }
}
