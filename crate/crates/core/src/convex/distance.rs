use std::f64::consts::PI;

use super::body::{support_unchecked, ConvexBody};
use super::projection::point_distance;
use crate::error::{Error, Result};
use crate::vector::Vector;

/// Deviation `𝔻(A, B) = sup_{a ∈ A} d(a, B)`.
///
/// `d(·, B)` is convex, so the supremum over `A` is attained at a vertex.
pub fn deviation(a: &ConvexBody, b: &ConvexBody) -> Result<f64> {
    b.check_dim(a.dim())?;
    a.vertices()
        .iter()
        .try_fold(0.0_f64, |acc, v| Ok(acc.max(point_distance(b, v)?)))
}

/// Pompeiu–Hausdorff distance `ℍ(A, B) = max(𝔻(A, B), 𝔻(B, A))`.
pub fn hausdorff(a: &ConvexBody, b: &ConvexBody) -> Result<f64> {
    Ok(deviation(a, b)?.max(deviation(b, a)?))
}

/// Deterministic unit directions covering the sphere `S^{d−1}`.
///
/// The line uses `±1`; the plane uses `m` equally spaced angles starting at
/// angle zero, so doubling `m` refines the grid; the sphere uses a Fibonacci
/// lattice of `m` points.
pub fn direction_grid(dim: usize, m: usize) -> Result<Vec<Vector>> {
    if m < 8 {
        return Err(Error::Config(format!("direction grid needs m ≥ 8, got {m}")));
    }
    match dim {
        1 => Ok(vec![
            Vector::from_iter_unchecked([1.0]),
            Vector::from_iter_unchecked([-1.0]),
        ]),
        2 => Ok((0..m)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / m as f64;
                Vector::from_iter_unchecked([t.cos(), t.sin()])
            })
            .collect()),
        3 => {
            let golden = PI * (3.0 - 5.0_f64.sqrt());
            Ok((0..m)
                .map(|k| {
                    let z = 1.0 - (2.0 * k as f64 + 1.0) / m as f64;
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    let phi = golden * k as f64;
                    Vector::from_iter_unchecked([r * phi.cos(), r * phi.sin(), z])
                })
                .collect())
        }
        d => Err(Error::UnsupportedDimension(d, "direction grids")),
    }
}

/// Hörmander's formula evaluated on a direction grid:
/// `max_u |s_A(u) − s_B(u)|` over `direction_grid(d, m)`.
///
/// Never exceeds the exact distance; converges to it as `m` grows.
pub fn hausdorff_via_support(a: &ConvexBody, b: &ConvexBody, m: usize) -> Result<f64> {
    b.check_dim(a.dim())?;
    let grid = direction_grid(a.dim(), m)?;
    Ok(grid
        .iter()
        .map(|u| (support_unchecked(a, u) - support_unchecked(b, u)).abs())
        .fold(0.0, f64::max))
}
