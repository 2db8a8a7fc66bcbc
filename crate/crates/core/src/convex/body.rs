use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::projection::min_norm_point;
use super::{dedup_tolerance, face_tolerance};
use crate::error::{Error, Result};
use crate::vector::Vector;

/// A compact convex polytope stored as its extreme vertices.
///
/// Every constructor goes through [`hull`], so the vertex list is always
/// minimal: no stored vertex lies in the hull of the others and no two
/// vertices are closer than the dedup tolerance. In the plane vertices are
/// kept in counterclockwise order starting from the lexicographic minimum;
/// in other dimensions they are sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBody", into = "RawBody")]
pub struct ConvexBody {
    dim: usize,
    vertices: Vec<Vector>,
}

#[derive(Serialize, Deserialize)]
struct RawBody {
    dim: usize,
    vertices: Vec<Vector>,
}

impl TryFrom<RawBody> for ConvexBody {
    type Error = Error;

    fn try_from(raw: RawBody) -> Result<Self> {
        let body = hull(&raw.vertices)?;
        if body.dim != raw.dim {
            return Err(Error::DimensionMismatch {
                expected: raw.dim,
                found: body.dim,
            });
        }
        Ok(body)
    }
}

impl From<ConvexBody> for RawBody {
    fn from(body: ConvexBody) -> Self {
        RawBody {
            dim: body.dim,
            vertices: body.vertices,
        }
    }
}

impl ConvexBody {
    /// The singleton `{point}`.
    pub fn point(point: Vector) -> Self {
        ConvexBody {
            dim: point.dim(),
            vertices: vec![point],
        }
    }

    /// The axis-aligned box `[lo_1, hi_1] × … × [lo_d, hi_d]`.
    pub fn cuboid(lo: &[f64], hi: &[f64]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        let dim = lo.len();
        let corners = (0..1usize << dim)
            .map(|mask| {
                Vector::new(
                    (0..dim)
                        .map(|i| if mask >> i & 1 == 1 { hi[i] } else { lo[i] })
                        .collect::<Vec<_>>(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        hull(&corners)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn is_singleton(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Largest Euclidean norm of a vertex, i.e. `max_{k ∈ K} ‖k‖`.
    pub fn radius(&self) -> f64 {
        self.vertices.iter().map(Vector::norm).fold(0.0, f64::max)
    }

    pub fn diameter(&self) -> f64 {
        let mut best = 0.0_f64;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                best = best.max(a.distance(b));
            }
        }
        best
    }

    /// Arithmetic mean of the vertices; a point of the body.
    pub fn centroid(&self) -> Vector {
        let mut acc = Vector::zeros(self.dim);
        for v in &self.vertices {
            acc = &acc + v;
        }
        acc.scaled(1.0 / self.vertices.len() as f64)
    }

    /// Affine dimension of the body (0 for a point, `dim` for a full body).
    pub fn affine_dim(&self) -> usize {
        affine_rank(&self.vertices, dedup_tolerance(&self.vertices))
    }

    pub fn translate(&self, offset: &Vector) -> Result<ConvexBody> {
        offset.check_dim(self.dim)?;
        Ok(ConvexBody {
            dim: self.dim,
            vertices: self.vertices.iter().map(|v| v + offset).collect(),
        })
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim,
            })
        }
    }
}

/// Convex hull of a finite point set, reduced to its extreme points.
///
/// The plane uses Andrew's monotone chain; the line takes the two extremes;
/// higher dimensions keep a point iff its distance to the hull of the other
/// points exceeds the dedup tolerance.
pub fn hull(points: &[Vector]) -> Result<ConvexBody> {
    let first = points.first().ok_or(Error::Empty("point set"))?;
    let dim = first.dim();
    for p in points {
        p.check_dim(dim)?;
        if p.coords().iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("hull input"));
        }
    }
    let tol = dedup_tolerance(points);
    let vertices = match dim {
        1 => hull_1d(points, tol),
        2 => hull_2d(points, tol),
        _ => hull_filter(points, tol)?,
    };
    Ok(ConvexBody { dim, vertices })
}

fn lex_cmp(a: &Vector, b: &Vector) -> Ordering {
    for (x, y) in a.coords().iter().zip(b.coords()) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn hull_1d(points: &[Vector], tol: f64) -> Vec<Vector> {
    let lo = points.iter().min_by(|a, b| a[0].total_cmp(&b[0])).unwrap();
    let hi = points.iter().max_by(|a, b| a[0].total_cmp(&b[0])).unwrap();
    if hi[0] - lo[0] <= tol {
        vec![lo.clone()]
    } else {
        vec![lo.clone(), hi.clone()]
    }
}

fn cross(o: &Vector, a: &Vector, b: &Vector) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn hull_2d(points: &[Vector], tol: f64) -> Vec<Vector> {
    let mut sorted: Vec<&Vector> = points.iter().collect();
    sorted.sort_by(|a, b| lex_cmp(a, b));
    sorted.dedup_by(|b, a| a.distance(b) <= tol);
    if sorted.len() == 1 {
        return vec![sorted[0].clone()];
    }

    // A middle point survives only if it sits more than `tol` to the right of
    // the chord joining its neighbours.
    let turns_left = |o: &Vector, a: &Vector, b: &Vector| cross(o, a, b) > tol * o.distance(b);

    let mut lower: Vec<&Vector> = Vec::with_capacity(sorted.len());
    for &p in &sorted {
        while lower.len() >= 2 && !turns_left(lower[lower.len() - 2], lower[lower.len() - 1], p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&Vector> = Vec::with_capacity(sorted.len());
    for &p in sorted.iter().rev() {
        while upper.len() >= 2 && !turns_left(upper[upper.len() - 2], upper[upper.len() - 1], p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);

    let mut ring: Vec<Vector> = Vec::with_capacity(lower.len());
    for p in lower {
        if ring.last().is_none_or(|q: &Vector| q.distance(p) > tol) {
            ring.push(p.clone());
        }
    }
    while ring.len() > 1 && ring[0].distance(ring.last().unwrap()) <= tol {
        ring.pop();
    }
    ring
}

fn hull_filter(points: &[Vector], tol: f64) -> Result<Vec<Vector>> {
    let mut unique: Vec<Vector> = Vec::with_capacity(points.len());
    let mut sorted: Vec<&Vector> = points.iter().collect();
    sorted.sort_by(|a, b| lex_cmp(a, b));
    for p in sorted {
        if unique.iter().all(|q| q.distance(p) > tol) {
            unique.push(p.clone());
        }
    }
    if unique.len() <= 2 {
        return Ok(unique);
    }

    // Removing non-extreme points one at a time keeps the hull unchanged, so
    // later tests may run against the already-reduced set.
    let mut keep = vec![true; unique.len()];
    for i in 0..unique.len() {
        let translated: Vec<Vector> = unique
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && keep[j])
            .map(|(_, q)| q - &unique[i])
            .collect();
        let nearest = min_norm_point(&translated)?;
        if nearest.point.norm() <= tol {
            keep[i] = false;
        }
    }
    Ok(unique
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect())
}

/// Rank of the difference vectors `p_i − p_0`, counting singular values above `tol`.
pub(crate) fn affine_rank(points: &[Vector], tol: f64) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let dim = points[0].dim();
    let base = &points[0];
    let cols = points.len() - 1;
    let m = nalgebra::DMatrix::from_fn(dim, cols, |r, c| points[c + 1][r] - base[r]);
    let svd = m.svd(false, false);
    svd.singular_values.iter().filter(|&&s| s > tol).count()
}

/// `s_A(u) = max_{v ∈ A} ⟨u, v⟩`.
pub fn support(body: &ConvexBody, u: &Vector) -> Result<f64> {
    u.check_dim(body.dim)?;
    Ok(support_unchecked(body, u))
}

pub(crate) fn support_unchecked(body: &ConvexBody, u: &Vector) -> f64 {
    body.vertices
        .iter()
        .map(|v| u.dot(v))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// The vertices of `body` attaining `s_A(u)` up to the face tolerance, as a body.
pub(crate) fn argmax_face(body: &ConvexBody, u: &Vector) -> Result<(ConvexBody, f64)> {
    let best = support_unchecked(body, u);
    let tol = face_tolerance(body.radius()) * u.norm();
    let on_face: Vec<Vector> = body
        .vertices
        .iter()
        .filter(|v| u.dot(v) >= best - tol)
        .cloned()
        .collect();
    Ok((hull(&on_face)?, best))
}

/// The Minkowski sum `A + B`.
pub fn minkowski_sum(a: &ConvexBody, b: &ConvexBody) -> Result<ConvexBody> {
    b.check_dim(a.dim)?;
    if b.is_singleton() {
        return a.translate(&b.vertices[0]);
    }
    if a.is_singleton() {
        return b.translate(&a.vertices[0]);
    }
    let mut sums = Vec::with_capacity(a.vertices.len() * b.vertices.len());
    for p in &a.vertices {
        for q in &b.vertices {
            sums.push(p + q);
        }
    }
    hull(&sums)
}

/// The dilation `λA` for `λ ≥ 0`; `λ = 0` collapses to the origin.
pub fn scale(body: &ConvexBody, factor: f64) -> Result<ConvexBody> {
    if factor < 0.0 || factor.is_nan() {
        return Err(Error::NegativeScale(factor));
    }
    if factor == 0.0 {
        return Ok(ConvexBody::point(Vector::zeros(body.dim)));
    }
    Ok(ConvexBody {
        dim: body.dim,
        vertices: body.vertices.iter().map(|v| v.scaled(factor)).collect(),
    })
}
