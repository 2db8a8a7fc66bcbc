//! Exposed-point CLT: `√N (y_N − k)` is asymptotically `N(0, Σ)` with `Σ`
//! the covariance of the exposed selection.

use randset::convex::hull;
use randset::limit::{clt_exposed_experiment, ExperimentConfig};
use randset::{DiscreteRandomSet, Direction, Vector};

fn main() -> randset::Result<()> {
    let y = DiscreteRandomSet::new(vec![
        (0.5, hull(&[Vector::new([0.0, 0.0])?, Vector::new([1.0, 0.0])?])?),
        (0.5, hull(&[Vector::new([0.0, 0.0])?, Vector::new([0.0, 1.0])?])?),
    ])?;
    let f = Direction::from_coords([1.0, 1.0])?;
    println!("predicted Σ = {:?}", y.exposed_selection(&f)?.covariance);

    let report = clt_exposed_experiment(&y, &f, &ExperimentConfig::new(42, vec![1000], 2000))?;
    println!("empirical Σ = {:?}", report.summaries[0].covariance);
    for v in &report.verdicts {
        println!("{} {}: {}", if v.passed { "PASS" } else { "FAIL" }, v.name, v.detail);
    }
    Ok(())
}
