//! Planar convex bodies through their support functions: Firey p-sums,
//! p-difference bodies, the functional F_p(K) = area(K +_p (−K)) / area(K) and
//! its sharp planar constant, plus the parameter-system machinery (linear
//! parameter systems, shadow-system lifts, parallel chord movements) used to
//! reduce polygons to extremal triangles.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod body;
pub mod error;
pub mod functional;
pub mod measure;
pub mod movements;
pub mod polygon;
pub mod psum;
pub mod quadrature;
pub mod random;
pub mod render;
pub mod vec2;

pub use body::{Body, Node};
pub use error::{GeomError, Result};
pub use functional::{c2p, fp, fp_decide, verify_extremal_consistency, FpReport};
pub use measure::{area_bracket, AreaBracket};
pub use polygon::{Polygon, Side};
pub use psum::{p_difference_body, p_sum, PExponent};
pub use vec2::{Direction, Vec2};
