//! Euclidean projection onto a polytope via Wolfe's minimum-norm-point method.

use nalgebra::{DMatrix, DVector};

use super::body::ConvexBody;
use super::{dedup_tolerance, WOLFE_GAP};
use crate::error::{Error, Result};
use crate::vector::Vector;

/// Barycentric weights at or below this are treated as zero.
const WEIGHT_FLOOR: f64 = 1e-14;

pub(crate) struct MinNorm {
    pub point: Vector,
}

/// Minimum-norm point of `conv(points)`.
///
/// Terminates when `‖x‖² − min_i ⟨x, p_i⟩ ≤ 1e-12 · max_i ‖p_i‖²`. The major
/// iteration count is capped at `10 · n · d`.
pub(crate) fn min_norm_point(points: &[Vector]) -> Result<MinNorm> {
    let n = points.len();
    if n == 0 {
        return Err(Error::Empty("projection vertex set"));
    }
    let dim = points[0].dim();
    let scale2 = points.iter().map(Vector::norm_squared).fold(0.0, f64::max);
    let eps = WOLFE_GAP * scale2;

    let start = (0..n)
        .min_by(|&a, &b| points[a].norm_squared().total_cmp(&points[b].norm_squared()))
        .unwrap();
    let mut active = vec![start];
    let mut weights = vec![1.0];
    let mut x = points[start].clone();
    let cap = (10 * n * dim).max(1);
    let mut gap = f64::INFINITY;

    for _ in 0..cap {
        let (j, lowest) = points
            .iter()
            .enumerate()
            .map(|(i, p)| (i, x.dot(p)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        gap = x.norm_squared() - lowest;
        if gap <= eps || active.contains(&j) {
            return Ok(MinNorm { point: x });
        }
        active.push(j);
        weights.push(0.0);

        loop {
            let alpha = affine_minimizer(points, &active);
            if alpha.iter().all(|&a| a > WEIGHT_FLOOR) {
                weights = alpha;
                x = combination(points, &active, &weights);
                break;
            }
            // Step from the current weights toward `alpha` until the first
            // weight hits zero, then drop every weight that did.
            let theta = weights
                .iter()
                .zip(&alpha)
                .filter(|&(&w, &a)| a <= WEIGHT_FLOOR && w > a)
                .map(|(&w, &a)| w / (w - a))
                .fold(1.0_f64, f64::min);
            for (w, a) in weights.iter_mut().zip(&alpha) {
                *w = theta * a + (1.0 - theta) * *w;
            }
            let mut i = 0;
            while i < active.len() {
                if weights[i] <= WEIGHT_FLOOR {
                    active.remove(i);
                    weights.remove(i);
                } else {
                    i += 1;
                }
            }
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
        }
    }
    Err(Error::NearestPointDiverged {
        iterations: cap,
        gap,
    })
}

fn combination(points: &[Vector], active: &[usize], weights: &[f64]) -> Vector {
    let mut acc = Vector::zeros(points[0].dim());
    for (&i, &w) in active.iter().zip(weights) {
        acc = acc.axpy(w, &points[i]);
    }
    acc
}

/// Affine weights of the minimum-norm point of `aff{points[i] : i ∈ active}`.
fn affine_minimizer(points: &[Vector], active: &[usize]) -> Vec<f64> {
    if active.len() == 1 {
        return vec![1.0];
    }
    let base = &points[active[0]];
    let dim = base.dim();
    let cols = active.len() - 1;
    let m = DMatrix::from_fn(dim, cols, |r, c| points[active[c + 1]][r] - base[r]);
    let rhs = DVector::from_iterator(dim, base.coords().iter().map(|c| -c));
    let svd = m.svd(true, true);
    let cutoff = 1e-12 * svd.singular_values.max();
    let beta = svd
        .solve(&rhs, cutoff)
        .unwrap_or_else(|_| DVector::zeros(cols));
    let mut alpha = Vec::with_capacity(active.len());
    alpha.push(1.0 - beta.sum());
    alpha.extend(beta.iter().copied());
    alpha
}

/// The Euclidean-nearest point `k_x(A)`; returns `x` itself when `x ∈ A`.
pub fn nearest_point(body: &ConvexBody, x: &Vector) -> Result<Vector> {
    x.check_dim(body.dim())?;
    let translated: Vec<Vector> = body.vertices().iter().map(|v| v - x).collect();
    let result = min_norm_point(&translated)?;
    let inside = 1e-12 * (1.0 + body.radius().max(x.norm()));
    if result.point.norm() <= inside {
        return Ok(x.clone());
    }
    Ok(x + &result.point)
}

/// `d(x, A) = min_{a ∈ A} ‖x − a‖`.
pub fn point_distance(body: &ConvexBody, x: &Vector) -> Result<f64> {
    Ok(x.distance(&nearest_point(body, x)?))
}

/// Whether `x` lies in `body` up to the dedup tolerance.
pub fn contains(body: &ConvexBody, x: &Vector) -> Result<bool> {
    let tol = dedup_tolerance(body.vertices()).max(1e-9 * (1.0 + x.norm()));
    Ok(point_distance(body, x)? <= tol)
}
