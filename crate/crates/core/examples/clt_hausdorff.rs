//! Stability of `√N ℍ(Ȳ_N, EY)` across sample sizes.

use randset::convex::hull;
use randset::limit::{clt_hausdorff_experiment, ExperimentConfig};
use randset::{DiscreteRandomSet, Vector};

fn main() -> randset::Result<()> {
    let y = DiscreteRandomSet::new(vec![
        (0.5, hull(&[Vector::new([0.0, 0.0])?, Vector::new([1.0, 0.0])?])?),
        (0.5, hull(&[Vector::new([0.0, 0.0])?, Vector::new([0.0, 1.0])?])?),
    ])?;
    let report = clt_hausdorff_experiment(&y, &ExperimentConfig::new(42, vec![400, 1600], 1000))?;
    for s in &report.summaries {
        println!("N = {:>4}  mean {:.4}  median {:.4}", s.n, s.mean[0], s.median[0]);
    }
    for v in &report.verdicts {
        println!("{} {}: {}", if v.passed { "PASS" } else { "FAIL" }, v.name, v.detail);
    }
    Ok(())
}
