//! Convexification gap of Minkowski averages of finite point sets.

use serde::Serialize;
use spade::{DelaunayTriangulation, Point2, Triangulation};

use super::body::{hull, ConvexBody};
use super::dedup_tolerance;
use crate::error::{Error, Result};
use crate::vector::Vector;

/// Raw Minkowski sums beyond this count are refused.
pub const MAX_RAW_SUMS: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShapleyFolkman {
    /// `ℍ((1/N)(K_1 + … + K_N), (1/N) conv(K_1 + … + K_N))`
    pub gap: f64,
    /// `(√d / N) · max_i ‖K_i‖`
    pub bound: f64,
}

/// Exact convexification gap of the average of `sets`, together with the
/// Shapley–Folkman–Starr bound.
///
/// The raw sum is enumerated exhaustively. Its deviation from its own hull
/// is the largest empty circle centred in the hull, found among Voronoi
/// vertices inside the hull and nearest-site switch points along hull edges.
pub fn shapley_folkman_gap(sets: &[Vec<Vector>]) -> Result<ShapleyFolkman> {
    let first = sets.first().ok_or(Error::Empty("set sequence"))?;
    let dim = first.first().ok_or(Error::Empty("member set"))?.dim();
    let mut count = 1usize;
    for set in sets {
        if set.is_empty() {
            return Err(Error::Empty("member set"));
        }
        for p in set {
            p.check_dim(dim)?;
        }
        count = count.saturating_mul(set.len());
    }
    if count > MAX_RAW_SUMS {
        return Err(Error::Config(format!(
            "{count} raw sums exceed the enumeration cap {MAX_RAW_SUMS}"
        )));
    }
    let n = sets.len() as f64;
    let envelope = sets
        .iter()
        .flat_map(|s| s.iter().map(Vector::norm))
        .fold(0.0, f64::max);
    let bound = (dim as f64).sqrt() / n * envelope;

    let raw = raw_sums(sets, dim);
    let gap = match dim {
        1 => gap_1d(&raw),
        2 => gap_2d(&raw)?,
        d => return Err(Error::UnsupportedDimension(d, "exact convexification gap")),
    } / n;
    Ok(ShapleyFolkman { gap, bound })
}

fn raw_sums(sets: &[Vec<Vector>], dim: usize) -> Vec<Vector> {
    let mut sums = vec![Vector::zeros(dim)];
    for set in sets {
        let mut next = Vec::with_capacity(sums.len() * set.len());
        for s in &sums {
            for p in set {
                next.push(s + p);
            }
        }
        sums = next;
    }
    sums
}

fn gap_1d(raw: &[Vector]) -> f64 {
    let mut xs: Vec<f64> = raw.iter().map(|p| p[0]).collect();
    xs.sort_by(f64::total_cmp);
    xs.windows(2).map(|w| (w[1] - w[0]) / 2.0).fold(0.0, f64::max)
}

fn gap_2d(raw: &[Vector]) -> Result<f64> {
    let body = hull(raw)?;
    if body.is_singleton() {
        return Ok(0.0);
    }
    let ring = body.vertices();
    let mut best = 0.0_f64;

    let edges: Vec<(&Vector, &Vector)> = if ring.len() == 2 {
        vec![(&ring[0], &ring[1])]
    } else {
        (0..ring.len())
            .map(|i| (&ring[i], &ring[(i + 1) % ring.len()]))
            .collect()
    };
    for &(a, b) in &edges {
        best = best.max(edge_max_distance(a, b, raw));
    }

    if ring.len() >= 3 {
        let sites: Vec<Point2<f64>> = raw.iter().map(|p| Point2::new(p[0], p[1])).collect();
        let triangulation: DelaunayTriangulation<Point2<f64>> =
            DelaunayTriangulation::bulk_load(sites)
                .map_err(|e| Error::Config(format!("triangulation failed: {e:?}")))?;
        let tol = dedup_tolerance(ring);
        for face in triangulation.inner_faces() {
            let c = face.circumcenter();
            if !inside_polygon(ring, c.x, c.y, tol) {
                continue;
            }
            let corner = face.positions()[0];
            best = best.max(((c.x - corner.x).powi(2) + (c.y - corner.y).powi(2)).sqrt());
        }
    }
    Ok(best)
}

fn inside_polygon(ring: &[Vector], x: f64, y: f64, tol: f64) -> bool {
    (0..ring.len()).all(|i| {
        let a = &ring[i];
        let b = &ring[(i + 1) % ring.len()];
        let (ex, ey) = (b[0] - a[0], b[1] - a[1]);
        let cross = ex * (y - a[1]) - ey * (x - a[0]);
        cross >= -tol * (ex * ex + ey * ey).sqrt()
    })
}

/// `max_{t ∈ [0,1]} min_r ‖a + t(b − a) − r‖`.
///
/// Squared distances along the edge share the `t²‖b − a‖²` term, so the
/// minimum is that term plus the lower envelope of lines `c_r + m_r t`.
/// Each envelope piece is convex in `t`, so maxima sit at breakpoints.
fn edge_max_distance(a: &Vector, b: &Vector, raw: &[Vector]) -> f64 {
    let e = b - a;
    let len2 = e.norm_squared();
    let mut lines: Vec<(f64, f64)> = raw
        .iter()
        .map(|r| {
            let ar = a - r;
            (2.0 * ar.dot(&e), ar.norm_squared())
        })
        .collect();
    // Decreasing slope, then increasing intercept.
    lines.sort_by(|p, q| q.0.total_cmp(&p.0).then(p.1.total_cmp(&q.1)));
    lines.dedup_by(|q, p| p.0 == q.0);

    let cross_at = |p: (f64, f64), q: (f64, f64)| (q.1 - p.1) / (p.0 - q.0);
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(lines.len());
    for line in lines {
        while hull.len() >= 2 {
            let l1 = hull[hull.len() - 2];
            let l2 = hull[hull.len() - 1];
            if cross_at(l1, line) <= cross_at(l1, l2) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(line);
    }

    let envelope = |t: f64| {
        hull.iter()
            .map(|&(m, c)| c + m * t)
            .fold(f64::INFINITY, f64::min)
    };
    let value = |t: f64| (envelope(t) + len2 * t * t).max(0.0).sqrt();
    let mut best = value(0.0).max(value(1.0));
    for w in hull.windows(2) {
        let t = cross_at(w[0], w[1]);
        if t > 0.0 && t < 1.0 {
            let sq = w[0].1 + w[0].0 * t + len2 * t * t;
            best = best.max(sq.max(0.0).sqrt());
        }
    }
    best
}

/// Hull of the averaged raw sum, `(1/N) Σ conv K_i`.
pub fn averaged_hull(sets: &[Vec<Vector>]) -> Result<ConvexBody> {
    let first = sets.first().ok_or(Error::Empty("set sequence"))?;
    let mut acc = hull(first)?;
    for set in &sets[1..] {
        acc = super::minkowski_sum(&acc, &hull(set)?)?;
    }
    super::scale(&acc, 1.0 / sets.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn single_segment_gap_is_half() {
        let r = shapley_folkman_gap(&[vec![v(&[0.0, 0.0]), v(&[1.0, 0.0])]]).unwrap();
        assert!((r.gap - 0.5).abs() <= 1e-12);
        assert!((r.bound - 2.0_f64.sqrt()).abs() <= 1e-12);
    }

    #[test]
    fn singletons_have_no_gap() {
        let sets = vec![vec![v(&[0.3, 0.1])], vec![v(&[-1.0, 2.0])], vec![v(&[0.0, 0.0])]];
        assert_eq!(shapley_folkman_gap(&sets).unwrap().gap, 0.0);
    }

    #[test]
    fn copies_of_a_segment() {
        for n in [1usize, 2, 4, 8, 10] {
            let sets = vec![vec![v(&[0.0, 0.0]), v(&[1.0, 0.0])]; n];
            let r = shapley_folkman_gap(&sets).unwrap();
            assert!((r.gap - 0.5 / n as f64).abs() <= 1e-12, "n={n}: {}", r.gap);
            assert!(r.gap <= r.bound);
        }
    }

    #[test]
    fn triangle_vertices_gap() {
        // Circumcenter of the right triangle is the hypotenuse midpoint.
        let sets = vec![vec![v(&[0.0, 0.0]), v(&[2.0, 0.0]), v(&[0.0, 2.0])]];
        let r = shapley_folkman_gap(&sets).unwrap();
        assert!((r.gap - 2.0_f64.sqrt()).abs() <= 1e-12);
    }

    #[test]
    fn errors() {
        assert!(shapley_folkman_gap(&[]).is_err());
        assert!(shapley_folkman_gap(&[vec![v(&[0.0, 0.0])], vec![]]).is_err());
        assert!(matches!(
            shapley_folkman_gap(&[vec![v(&[0.0, 0.0, 0.0])]]),
            Err(Error::UnsupportedDimension(3, _))
        ));
    }
}
