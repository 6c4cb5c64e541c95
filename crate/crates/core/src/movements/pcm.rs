//! Parallel chord movements: every chord parallel to `v` translates rigidly
//! along `v` with speed β(s), where s = ⟨x, v⊥⟩ labels the chord.

use crate::error::{GeomError, Result};
use crate::polygon::Polygon;
use crate::vec2::Vec2;

const INTERVAL_EPS: f64 = 1e-12;
/// Interval cap in units of the base diameter when the wedge is unbounded.
pub const TRUNCATION_FACTOR: f64 = 10.0;

/// Piecewise-linear β(s), constant beyond the first and last knot.
#[derive(Clone, Debug, PartialEq)]
pub struct SpeedProfile {
    knots: Vec<(f64, f64)>,
}

impl SpeedProfile {
    pub fn constant(c: f64) -> Self {
        Self {
            knots: vec![(0.0, c)],
        }
    }

    /// Knots `(s, β)` with strictly increasing `s`.
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.is_empty() {
            return Err(GeomError::InvalidArgument("empty speed profile".into()));
        }
        if knots.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(GeomError::InvalidArgument(
                "profile knots must be strictly increasing".into(),
            ));
        }
        Ok(Self { knots })
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn eval(&self, s: f64) -> f64 {
        let k = &self.knots;
        if s <= k[0].0 {
            return k[0].1;
        }
        if s >= k[k.len() - 1].0 {
            return k[k.len() - 1].1;
        }
        let i = k.partition_point(|&(x, _)| x <= s);
        let (s0, b0) = k[i - 1];
        let (s1, b1) = k[i];
        b0 + (b1 - b0) * (s - s0) / (s1 - s0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcmKind {
    Translation,
    /// Shear of the cap at vertex `apex` of the base.
    CapShear {
        apex: usize,
    },
}

#[derive(Clone, Debug)]
pub struct Pcm {
    base: Polygon,
    v: Vec2,
    profile: SpeedProfile,
    interval: (f64, f64),
    kind: PcmKind,
    /// Bodies at t₀ and t₁ built without rounding-level collinear vertices.
    endpoints: (Polygon, Polygon),
}

impl Pcm {
    /// Generic movement; endpoint bodies are evaluated from the profile.
    pub fn new(
        base: Polygon,
        v: Vec2,
        profile: SpeedProfile,
        interval: (f64, f64),
    ) -> Result<Self> {
        let v = v
            .normalized()
            .ok_or_else(|| GeomError::InvalidArgument("zero direction".into()))?;
        if !(interval.0 < interval.1) {
            return Err(GeomError::InvalidArgument(format!(
                "bad interval [{}, {}]",
                interval.0, interval.1
            )));
        }
        let mut pcm = Pcm {
            endpoints: (base.clone(), base.clone()),
            base,
            v,
            profile,
            interval,
            kind: PcmKind::Translation,
        };
        pcm.endpoints = (pcm.evaluate(interval.0)?, pcm.evaluate(interval.1)?);
        Ok(pcm)
    }

    pub fn base(&self) -> &Polygon {
        &self.base
    }

    pub fn direction(&self) -> Vec2 {
        self.v
    }

    pub fn profile(&self) -> &SpeedProfile {
        &self.profile
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn kind(&self) -> PcmKind {
        self.kind
    }

    pub fn endpoint_bodies(&self) -> (&Polygon, &Polygon) {
        (&self.endpoints.0, &self.endpoints.1)
    }

    pub fn chord_coordinate(&self, x: Vec2) -> f64 {
        x.dot(self.v.perp())
    }

    pub fn displace(&self, x: Vec2, t: f64) -> Vec2 {
        x + self.v * (t * self.profile.eval(self.chord_coordinate(x)))
    }

    /// `uniform_grid(n)` over the interval, endpoints included.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        let (t0, t1) = self.interval;
        let n = n.max(2);
        (0..n)
            .map(|i| t0 + (t1 - t0) * i as f64 / (n - 1) as f64)
            .collect()
    }

    pub fn body_at(&self, t: f64) -> Result<Polygon> {
        let (t0, t1) = self.interval;
        if t < t0 - INTERVAL_EPS || t > t1 + INTERVAL_EPS {
            return Err(GeomError::OutOfInterval { t, t0, t1 });
        }
        if t == t0 {
            return Ok(self.endpoints.0.clone());
        }
        if t == t1 {
            return Ok(self.endpoints.1.clone());
        }
        self.evaluate(t)
    }

    /// Maps the boundary refined at the profile's knot lines, so the image of
    /// each piece is the image of a straight segment.
    fn evaluate(&self, t: f64) -> Result<Polygon> {
        let verts = self.base.vertices();
        let m = verts.len();
        let mut ring = Vec::with_capacity(2 * m);
        for i in 0..m {
            let a = verts[i];
            let b = verts[(i + 1) % m];
            ring.push(a);
            let (sa, sb) = (self.chord_coordinate(a), self.chord_coordinate(b));
            let mut cuts: Vec<f64> = self
                .profile
                .knots
                .iter()
                .map(|k| k.0)
                .filter(|&s| (s - sa) * (s - sb) < 0.0)
                .map(|s| (s - sa) / (sb - sa))
                .collect();
            cuts.sort_by(f64::total_cmp);
            ring.extend(cuts.into_iter().map(|l| a + (b - a) * l));
        }
        let mapped: Vec<Vec2> = ring.iter().map(|&x| self.displace(x, t)).collect();
        let n = mapped.len();
        let scale = mapped.iter().map(|x| x.norm()).fold(0.0, f64::max);
        let tol = 1e-12 * (1.0 + scale * scale);
        for i in 0..n {
            let a = mapped[(i + n - 1) % n];
            let b = mapped[i];
            let c = mapped[(i + 1) % n];
            let turn = (b - a).cross(c - b);
            if turn < -tol {
                return Err(GeomError::NotConvex(turn));
            }
        }
        Polygon::from_vertices(&mapped)
    }
}

/// Rigid translations T + t v over the maximal interval keeping the origin in
/// the body. The origin lies on the boundary at both endpoints.
pub fn pcm_translate(t: &Polygon, v: Vec2) -> Result<Pcm> {
    if !t.contains_origin(true) {
        return Err(GeomError::OriginNotInterior);
    }
    let v = v
        .normalized()
        .ok_or_else(|| GeomError::InvalidArgument("zero direction".into()))?;
    // 0 ∈ T + s v  ⇔  ⟨−s v, n_i⟩ ≤ h_i for every edge
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for ((a, _), n) in t.edges().zip(t.edge_normals()) {
        let h = a.dot(n);
        let c = v.dot(n);
        if c > 0.0 {
            lo = lo.max(-h / c);
        } else if c < 0.0 {
            hi = hi.min(-h / c);
        }
    }
    let mut pcm = Pcm::new(t.clone(), v, SpeedProfile::constant(1.0), (lo, hi))?;
    pcm.endpoints = (t.translate(v * lo), t.translate(v * hi));
    Ok(pcm)
}

/// Translation of a triangle whose boundary passes through the origin in the
/// interior of an edge, along that edge. Both endpoints carry a vertex at the
/// origin, placed there exactly.
pub fn pcm_slide_along_edge(t: &Polygon) -> Result<Pcm> {
    let tol = 1e-12 * (1.0 + t.scale());
    let verts = t.vertices();
    let m = verts.len();
    for i in 0..m {
        let a = verts[i];
        let b = verts[(i + 1) % m];
        let e = b - a;
        let len = e.norm();
        let dir = e * (1.0 / len);
        // origin = a + μ dir with 0 < μ < len
        let off = (-a).cross(dir);
        let mu = (-a).dot(dir);
        if off.abs() <= tol && mu > tol && mu < len - tol {
            let mut pcm = Pcm::new(t.clone(), dir, SpeedProfile::constant(1.0), (mu - len, mu))?;
            pcm.endpoints = (t.translate(-b), t.translate(-a));
            return Ok(pcm);
        }
    }
    Err(GeomError::InvalidArgument(
        "origin is not interior to an edge".into(),
    ))
}

/// Shears the cap cut off by the chord [x_{j−1}, x_{j+1}] parallel to that
/// chord. β is 0 on the body side and rises linearly to 1 at the apex x_j; the
/// interval ends when the apex meets the extension of x_{j+1}x_{j+2} (t₁ > 0)
/// or of x_{j−2}x_{j−1} (t₀ < 0).
pub fn pcm_vertex_shear(p: &Polygon, j: usize) -> Result<Pcm> {
    let m = p.len();
    if m < 4 {
        return Err(GeomError::NotReducible(m));
    }
    if j >= m {
        return Err(GeomError::InvalidArgument(format!(
            "vertex {j} out of range for {m} vertices"
        )));
    }
    let x = |k: isize| p.vertex(((j as isize + k).rem_euclid(m as isize)) as usize);
    let (xm2, xm1, apex, xp1, xp2) = (x(-2), x(-1), x(0), x(1), x(2));
    let v = (xp1 - xm1)
        .normalized()
        .ok_or_else(|| GeomError::DegenerateInput("coincident chord endpoints".into()))?;
    let n = v.perp();
    let (s_chord, s_apex) = (xm1.dot(n), apex.dot(n));
    let knots = if s_apex < s_chord {
        vec![(s_apex, 1.0), (s_chord, 0.0)]
    } else {
        vec![(s_chord, 0.0), (s_apex, 1.0)]
    };
    let profile = SpeedProfile::new(knots)?;

    let cap = TRUNCATION_FACTOR * p.diameter();
    // apex + t v on the line through a and b
    let hit = |a: Vec2, b: Vec2| -> Option<f64> {
        let nl = (b - a).perp();
        let den = v.dot(nl);
        if den.abs() < 1e-300 {
            return None;
        }
        Some((a - apex).dot(nl) / den)
    };
    let t1 = hit(xp1, xp2).filter(|&t| t > 0.0 && t <= cap);
    let t0 = hit(xm2, xm1).filter(|&t| t < 0.0 && t >= -cap);

    let mut pcm = Pcm::new(
        p.clone(),
        v,
        profile,
        (t0.unwrap_or(-cap), t1.unwrap_or(cap)),
    )?;
    pcm.kind = PcmKind::CapShear { apex: j };
    let merged = |t: f64, drop: usize| -> Result<Polygon> {
        let pts: Vec<Vec2> = (0..m)
            .filter(|&k| k != drop)
            .map(|k| if k == j { apex + v * t } else { p.vertex(k) })
            .collect();
        Polygon::from_vertices(&pts)
    };
    if let Some(t) = t0 {
        pcm.endpoints.0 = merged(t, (j + m - 1) % m)?;
    }
    if let Some(t) = t1 {
        pcm.endpoints.1 = merged(t, (j + 1) % m)?;
    }
    Ok(pcm)
}

/// Area of the triangle x_{j−1} x_j x_{j+1}.
pub fn cap_area(p: &Polygon, j: usize) -> f64 {
    let m = p.len();
    let (a, b, c) = (
        p.vertex((j + m - 1) % m),
        p.vertex(j),
        p.vertex((j + 1) % m),
    );
    0.5 * (b - a).cross(c - a).abs()
}

/// Position of the origin across the chord of vertex `j`, as a fraction of
/// the apex height: ≤ 0 on the body side, 1 at the apex.
pub fn origin_cap_fraction(p: &Polygon, j: usize) -> f64 {
    let m = p.len();
    let (a, b, c) = (
        p.vertex((j + m - 1) % m),
        p.vertex(j),
        p.vertex((j + 1) % m),
    );
    let n = (c - a).perp();
    let (s_chord, s_apex) = (a.dot(n), b.dot(n));
    (0.0 - s_chord) / (s_apex - s_chord)
}
