//! Linear parameter systems, parallel chord movements and the reduction of
//! polygons to triangles with a vertex at the origin.

mod audit;
mod lps;
mod pcm;
mod reduce;

pub use audit::{convexity_audit, ConvexityAudit};
pub use lps::{lift, lps_p_sum, LiftedBody, Lps, LpsPSum};
pub use pcm::{
    cap_area, origin_cap_fraction, pcm_slide_along_edge, pcm_translate, pcm_vertex_shear, Pcm,
    PcmKind, SpeedProfile, TRUNCATION_FACTOR,
};
pub use reduce::{reduce_to_triangle, Endpoint, Reduction, StepKind, TraceStep};
