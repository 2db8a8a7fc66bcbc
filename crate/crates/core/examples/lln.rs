//! Law of large numbers: `ℍ(Ȳ_N, EY)` shrinks like `N^{-1/2}`.

use randset::limit::{lln_experiment, ExperimentConfig};
use randset::convex::hull;
use randset::{DiscreteRandomSet, Vector};

fn main() -> randset::Result<()> {
    let y = DiscreteRandomSet::new(vec![
        (0.5, hull(&[Vector::new([0.0, 0.0])?, Vector::new([1.0, 0.0])?])?),
        (0.5, hull(&[Vector::new([0.0, 0.0])?, Vector::new([0.0, 1.0])?])?),
    ])?;
    let config = ExperimentConfig::new(42, vec![16, 64, 256, 1024, 4096], 200);
    let report = lln_experiment(&y, &config)?;
    for s in &report.summaries {
        println!("N = {:>5}  median H = {:.5}  mean H = {:.5}", s.n, s.median[0], s.mean[0]);
    }
    for v in &report.verdicts {
        println!("{} {}: {}", if v.passed { "PASS" } else { "FAIL" }, v.name, v.detail);
    }
    Ok(())
}
