//! A facet of one atom appears in the sample mean with probability
//! `1 − (1 − p)^N`.

use randset::convex::hull;
use randset::limit::{facet_frequency_experiment, ExperimentConfig};
use randset::{DiscreteRandomSet, Direction, Vector};

fn main() -> randset::Result<()> {
    let y = DiscreteRandomSet::new(vec![
        (0.5, hull(&[Vector::new([0.0, 0.0])?, Vector::new([1.0, 0.0])?])?),
        (0.5, hull(&[Vector::new([0.0, 0.0])?, Vector::new([0.0, 1.0])?])?),
    ])?;
    let f = Direction::from_coords([0.0, -1.0])?;
    let report = facet_frequency_experiment(&y, &f, &ExperimentConfig::new(42, vec![1, 2, 3, 5], 10_000))?;
    for s in &report.summaries {
        let predicted = y.facet_inheritance(&f, s.n as u32)?.prob_n;
        println!("N = {}  frequency {:.4}  predicted {:.4}", s.n, s.mean[0], predicted);
    }
    println!("all verdicts passed: {}", report.passed());
    Ok(())
}
