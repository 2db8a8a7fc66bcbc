use serde::Serialize;

use crate::convex::{shapley_folkman_gap, ShapleyFolkman};
use crate::error::{Error, Result};
use crate::vector::Vector;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexificationRow {
    pub n: usize,
    pub gap: f64,
    pub bound: f64,
    pub within: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvexificationReport {
    pub rows: Vec<ConvexificationRow>,
    /// Every gap is at most its bound.
    pub all_within: bool,
    /// Gaps do not increase along the requested prefix lengths.
    pub nonincreasing: bool,
}

/// Shapley–Folkman gap `ℍ((1/n) Σ_{i<n} A_i, (1/n) Σ_{i<n} conv A_i)` for
/// each prefix length `n` in `ns`, against `(√d / n) · max_i ‖A_i‖`.
pub fn convexification_check(sets: &[Vec<Vector>], ns: &[usize]) -> Result<ConvexificationReport> {
    if ns.is_empty() {
        return Err(Error::Config("at least one prefix length is required".into()));
    }
    let rows = ns
        .iter()
        .map(|&n| {
            if n == 0 || n > sets.len() {
                return Err(Error::Config(format!(
                    "prefix length {n} outside 1..={}",
                    sets.len()
                )));
            }
            let ShapleyFolkman { gap, bound } = shapley_folkman_gap(&sets[..n])?;
            Ok(ConvexificationRow {
                n,
                gap,
                bound,
                within: gap <= bound + 1e-12 * (1.0 + bound),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let all_within = rows.iter().all(|r| r.within);
    let nonincreasing = rows
        .windows(2)
        .all(|w| w[1].gap <= w[0].gap + 1e-12 * (1.0 + w[0].gap));
    Ok(ConvexificationReport {
        rows,
        all_within,
        nonincreasing,
    })
}
