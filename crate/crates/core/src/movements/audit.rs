//! Discrete midpoint-convexity check on a uniform grid.

use crate::error::{GeomError, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvexityAudit {
    pub passed: bool,
    /// max over interior points of f(tᵢ) − (f(tᵢ₋₁) + f(tᵢ₊₁))/2
    pub worst_violation: f64,
    /// Interior index attaining the worst violation.
    pub worst_index: usize,
}

/// Checks f(tᵢ) ≤ (f(tᵢ₋₁) + f(tᵢ₊₁))/2 + tol at every interior grid point.
pub fn convexity_audit(values: &[(f64, f64)], tol: f64) -> Result<ConvexityAudit> {
    if values.len() < 3 {
        return Err(GeomError::InvalidArgument(format!(
            "need at least 3 grid points, got {}",
            values.len()
        )));
    }
    let h = values[1].0 - values[0].0;
    let span = (values[values.len() - 1].0 - values[0].0).abs();
    if !(h > 0.0) {
        return Err(GeomError::InvalidArgument("grid must be increasing".into()));
    }
    for w in values.windows(2) {
        if ((w[1].0 - w[0].0) - h).abs() > 1e-9 * (1.0 + span) {
            return Err(GeomError::InvalidArgument("grid is not uniform".into()));
        }
    }
    let (worst_index, worst_violation) = values
        .windows(3)
        .map(|w| w[1].1 - 0.5 * (w[0].1 + w[2].1))
        .enumerate()
        .map(|(i, v)| (i + 1, v))
        .fold(
            (1, f64::NEG_INFINITY),
            |acc, x| if x.1 > acc.1 { x } else { acc },
        );
    Ok(ConvexityAudit {
        passed: worst_violation <= tol,
        worst_violation,
        worst_index,
    })
}
