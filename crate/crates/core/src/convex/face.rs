use serde::Serialize;

use super::body::{argmax_face, hull, ConvexBody};
use super::projection::point_distance;
use super::{dedup_tolerance, FACET_MARGIN_REL};
use crate::error::{Error, Result};
use crate::vector::{Direction, Vector};

/// The argmax face `∂s_A(f)` of a body together with its classification.
#[derive(Clone, Debug, Serialize)]
pub struct FaceCertificate {
    pub direction: Direction,
    pub face: ConvexBody,
    pub support_value: f64,
    pub is_exposed: bool,
    /// A vector `d` with `⟨f, d⟩ = 1`, present when the face is a facet.
    /// Always `f / ‖f‖²`, which for a unit `f` is `f` itself.
    pub facet_direction: Option<Vector>,
}

impl FaceCertificate {
    /// Whether the face has codimension one in the ambient space.
    pub fn is_facet(&self) -> bool {
        self.facet_direction.is_some()
    }
}

/// The face of `body` maximizing `⟨u, ·⟩`, i.e. the subdifferential of the
/// support function at `u`.
pub fn support_face(body: &ConvexBody, u: &Vector) -> Result<FaceCertificate> {
    u.check_dim(body.dim())?;
    let direction = Direction::new(u.clone())?;
    let (face, support_value) = argmax_face(body, direction.as_vector())?;
    let is_exposed = face.is_singleton();
    let facet_direction = is_facet_face(&face).then(|| {
        let f = direction.as_vector();
        f.scaled(1.0 / f.norm_squared())
    });
    Ok(FaceCertificate {
        direction,
        face,
        support_value,
        is_exposed,
        facet_direction,
    })
}

/// A face is a facet when it spans a hyperplane: affine dimension `d − 1`.
pub(crate) fn is_facet_face(face: &ConvexBody) -> bool {
    face.affine_dim() + 1 == face.dim()
}

/// Derivative of the Euclidean norm at `x ≠ 0`, namely `x / ‖x‖`.
pub fn norm_gradient(x: &Vector) -> Result<Direction> {
    Direction::new(x.clone())
}

/// Whether `f` is a facet of `body` at `k`.
///
/// Requires the face `∂s_A(f)` to span a hyperplane and `k` to sit inside
/// its relative interior by more than `1e-6 · diam(A)`.
pub fn is_facet_at(body: &ConvexBody, k: &Vector, f: &Direction) -> Result<bool> {
    k.check_dim(body.dim())?;
    f.as_vector().check_dim(body.dim())?;
    let tol = dedup_tolerance(body.vertices()).max(1e-9 * (1.0 + k.norm()));
    let distance = point_distance(body, k)?;
    if distance > tol {
        return Err(Error::PointOutside { distance });
    }
    let cert = support_face(body, f.as_vector())?;
    if !cert.is_facet() {
        return Ok(false);
    }
    if (f.as_vector().dot(k) - cert.support_value).abs() > tol {
        return Ok(false);
    }
    let margin = FACET_MARGIN_REL * body.diameter();
    Ok(relative_boundary_distance(&cert.face, k)? > margin)
}

/// Distance from `k` (a point of `face`) to the relative boundary of `face`.
fn relative_boundary_distance(face: &ConvexBody, k: &Vector) -> Result<f64> {
    let verts = face.vertices();
    match face.affine_dim() {
        0 => Ok(f64::INFINITY),
        1 => {
            let (a, b) = (&verts[0], &verts[verts.len() - 1]);
            Ok(k.distance(a).min(k.distance(b)))
        }
        2 => {
            let (u, w) = plane_basis(verts);
            let origin = &verts[0];
            let to_plane = |p: &Vector| {
                let rel = p - origin;
                Vector::from_iter_unchecked([rel.dot(&u), rel.dot(&w)])
            };
            let polygon = hull(&verts.iter().map(to_plane).collect::<Vec<_>>())?;
            let q = to_plane(k);
            let ring = polygon.vertices();
            let mut best = f64::INFINITY;
            for i in 0..ring.len() {
                let a = &ring[i];
                let b = &ring[(i + 1) % ring.len()];
                let edge = b - a;
                let rel = &q - a;
                // Counterclockwise ring: interior points give positive values.
                let signed = (edge[0] * rel[1] - edge[1] * rel[0]) / edge.norm();
                best = best.min(signed);
            }
            Ok(best)
        }
        d => Err(Error::UnsupportedDimension(d + 1, "facet relative-interior test")),
    }
}

/// Orthonormal basis of the plane spanned by a 2-dimensional point set.
fn plane_basis(verts: &[Vector]) -> (Vector, Vector) {
    let origin = &verts[0];
    let diffs: Vec<Vector> = verts[1..].iter().map(|p| p - origin).collect();
    let first = diffs
        .iter()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap();
    let u = first.scaled(1.0 / first.norm());
    let second = diffs
        .iter()
        .map(|d| d.axpy(-d.dot(&u), &u))
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap();
    let w = second.scaled(1.0 / second.norm());
    (u, w)
}
