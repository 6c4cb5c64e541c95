//! Polygon to triangle reduction: cap shears down to three vertices, then
//! translations until a vertex sits at the origin. Each movement has F_p
//! convex in t, so the endpoint with the larger value is at least as large as
//! the starting body.

use crate::error::{GeomError, Result};
use crate::functional::{contains_origin_tol, fp, FpReport};
use crate::polygon::Polygon;
use crate::psum::PExponent;
use crate::vec2::Vec2;

use super::pcm::{
    cap_area, origin_cap_fraction, pcm_slide_along_edge, pcm_translate, pcm_vertex_shear, Pcm,
};

/// Vertices this close to the origin (relative to the body scale) are
/// snapped onto it.
const VERTEX_SNAP: f64 = 1e-9;
const MAX_TRANSLATIONS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepKind {
    CapShear { vertex: usize },
    Translate { direction: Vec2 },
    Slide { direction: Vec2 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Start,
    End,
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub index: usize,
    pub kind: StepKind,
    pub t0: f64,
    pub t1: f64,
    pub fp_start: f64,
    pub fp_t0: f64,
    pub fp_t1: f64,
    /// Largest bracket half-width among the three F_p values.
    pub half_width: f64,
    pub chosen: Endpoint,
    pub body: Polygon,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub triangle: Polygon,
    pub trace: Vec<TraceStep>,
    pub fp_input: f64,
    pub fp_final: f64,
    /// Sum over steps of the bracket uncertainty that could reorder a choice.
    pub tolerance: f64,
}

pub fn reduce_to_triangle(poly: &Polygon, p: PExponent, rel_tol: f64) -> Result<Reduction> {
    if !contains_origin_tol(poly) {
        return Err(GeomError::OriginOutside);
    }
    let eval = |k: &Polygon| -> Result<FpReport> { fp(k, p, rel_tol) };
    let input = eval(poly)?;
    let mut cur = poly.clone();
    let mut cur_fp = input;
    let mut trace = Vec::new();
    let mut tolerance = 0.0;

    let mut step = |pcm: Pcm,
                    kind: StepKind,
                    cur: &mut Polygon,
                    cur_fp: &mut FpReport,
                    trace: &mut Vec<TraceStep>|
     -> Result<()> {
        let (e0, e1) = pcm.endpoint_bodies();
        let (e0, e1) = (snap_to_origin(e0), snap_to_origin(e1));
        let (f0, f1) = (eval(&e0)?, eval(&e1)?);
        let (chosen, body, report) = if f1.fp > f0.fp {
            (Endpoint::End, e1, f1)
        } else {
            (Endpoint::Start, e0, f0)
        };
        let hw = cur_fp
            .half_width()
            .max(f0.half_width())
            .max(f1.half_width());
        tolerance += 2.0 * hw;
        let (t0, t1) = pcm.interval();
        trace.push(TraceStep {
            index: trace.len(),
            kind,
            t0,
            t1,
            fp_start: cur_fp.fp,
            fp_t0: f0.fp,
            fp_t1: f1.fp,
            half_width: hw,
            chosen,
            body: body.clone(),
        });
        *cur = body;
        *cur_fp = report;
        Ok(())
    };

    while cur.len() > 3 {
        let j = pick_shear_vertex(&cur)?;
        let pcm = pcm_vertex_shear(&cur, j)?;
        step(
            pcm,
            StepKind::CapShear { vertex: j },
            &mut cur,
            &mut cur_fp,
            &mut trace,
        )?;
    }

    for _ in 0..MAX_TRANSLATIONS {
        let snapped = snap_to_origin(&cur);
        if has_vertex_at_origin(&snapped) {
            if snapped != cur {
                cur_fp = eval(&snapped)?;
                cur = snapped;
            }
            return Ok(Reduction {
                fp_input: input.fp,
                fp_final: cur_fp.fp,
                triangle: cur,
                trace,
                tolerance,
            });
        }
        if let Ok(pcm) = pcm_slide_along_edge(&cur) {
            let kind = StepKind::Slide {
                direction: pcm.direction(),
            };
            step(pcm, kind, &mut cur, &mut cur_fp, &mut trace)?;
        } else {
            let nearest = cur
                .vertices()
                .iter()
                .copied()
                .min_by(|a, b| a.norm().total_cmp(&b.norm()))
                .expect("polygon has vertices");
            let pcm = pcm_translate(&cur, nearest)?;
            let kind = StepKind::Translate {
                direction: pcm.direction(),
            };
            step(pcm, kind, &mut cur, &mut cur_fp, &mut trace)?;
        }
    }
    Err(GeomError::NumericalFailure(
        "translations did not bring a vertex to the origin".into(),
    ))
}

/// Smallest cap area among vertices whose cap leaves the origin on the body
/// side of the chord (so every intermediate body still contains it); ties go
/// to the lowest index.
fn pick_shear_vertex(p: &Polygon) -> Result<usize> {
    let mut best: Option<(usize, f64)> = None;
    for j in 0..p.len() {
        if origin_cap_fraction(p, j) > 1e-12 {
            continue;
        }
        let a = cap_area(p, j);
        if best.is_none_or(|(_, b)| a < b) {
            best = Some((j, a));
        }
    }
    best.map(|b| b.0).ok_or(GeomError::OriginOutside)
}

fn has_vertex_at_origin(p: &Polygon) -> bool {
    p.vertices().contains(&Vec2::ZERO)
}

fn snap_to_origin(p: &Polygon) -> Polygon {
    let tol = VERTEX_SNAP * (1.0 + p.scale());
    match p
        .vertices()
        .iter()
        .copied()
        .filter(|x| x.norm() <= tol)
        .min_by(|a, b| a.norm().total_cmp(&b.norm()))
    {
        Some(x) if x != Vec2::ZERO => p.translate(-x),
        _ => p.clone(),
    }
}
