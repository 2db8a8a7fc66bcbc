//! Tangent-plane CLT for the support function in a fixed direction.

use randset::limit::{clt_tangent_experiment, ExperimentConfig};
use randset::{ConvexBody, DiscreteRandomSet, Direction};

fn main() -> randset::Result<()> {
    let stacked = DiscreteRandomSet::new(vec![
        (0.5, ConvexBody::cuboid(&[0.0, 0.0], &[1.0, 1.0])?),
        (0.5, ConvexBody::cuboid(&[0.0, 1.0], &[1.0, 2.0])?),
    ])?;
    let config = ExperimentConfig::new(42, vec![1000], 2000);
    for u in [[0.0, 1.0], [1.0, 1.0], [1.0, 0.0]] {
        let u = Direction::from_coords(u)?;
        let report = clt_tangent_experiment(&stacked, &u, &config)?;
        println!("u = {:?}  sigma^2 = {:.4}", u.as_vector(), stacked.tangent_variance(&u)?);
        for v in &report.verdicts {
            println!("  {} {}: {}", if v.passed { "PASS" } else { "FAIL" }, v.name, v.detail);
        }
    }
    Ok(())
}
