//! Exact convex geometry on V-polytopes: hulls, Minkowski arithmetic,
//! support functions and faces, distances, projections and facets.
//!
//! All bodies are immutable; operations return new values.

mod body;
mod distance;
mod face;
mod projection;
mod shapley;

pub use body::{hull, minkowski_sum, scale, support, ConvexBody};
pub use distance::{deviation, direction_grid, hausdorff, hausdorff_via_support};
pub use face::{is_facet_at, norm_gradient, support_face, FaceCertificate};
pub use projection::{contains, nearest_point, point_distance};
pub use shapley::{averaged_hull, shapley_folkman_gap, ShapleyFolkman, MAX_RAW_SUMS};

pub(crate) use body::support_unchecked;
pub(crate) use face::is_facet_face;

use crate::vector::Vector;

/// Relative tolerance for merging vertices and pruning near-collinear points.
pub const DEDUP_REL: f64 = 1e-9;
/// Relative tolerance for membership in an argmax face.
pub const FACE_REL: f64 = 1e-9;
/// Relative-interior margin for facets, as a fraction of the body diameter.
pub const FACET_MARGIN_REL: f64 = 1e-6;
/// Relative duality-gap target of the minimum-norm-point iteration.
pub const WOLFE_GAP: f64 = 1e-12;

/// `1e-9 · (1 + max ‖p‖)`
pub(crate) fn dedup_tolerance(points: &[Vector]) -> f64 {
    let scale = points.iter().map(Vector::norm).fold(0.0, f64::max);
    DEDUP_REL * (1.0 + scale)
}

pub(crate) fn face_tolerance(radius: f64) -> f64 {
    FACE_REL * (1.0 + radius)
}
