//! Facet CLT for the distance from an outside point to the sample mean.

use randset::limit::{clt_facet_experiment, ExperimentConfig, FacetSetup};
use randset::{ConvexBody, DiscreteRandomSet, Vector};

fn main() -> randset::Result<()> {
    let stacked = DiscreteRandomSet::new(vec![
        (0.5, ConvexBody::cuboid(&[0.0, 0.0], &[1.0, 1.0])?),
        (0.5, ConvexBody::cuboid(&[0.0, 1.0], &[1.0, 2.0])?),
    ])?;
    let side_by_side = DiscreteRandomSet::new(vec![
        (0.5, ConvexBody::cuboid(&[0.0, 0.0], &[1.0, 1.0])?),
        (0.5, ConvexBody::cuboid(&[2.0, 0.0], &[3.0, 1.0])?),
    ])?;
    let config = ExperimentConfig::new(42, vec![1000], 2000);

    for (name, y, x) in [
        ("stacked squares", &stacked, [0.5, -1.0]),
        ("side by side", &side_by_side, [1.5, -1.0]),
        ("side by side", &side_by_side, [1.2, -1.0]),
    ] {
        let x = Vector::new(x)?;
        println!("{name}, x = {x:?}");
        match FacetSetup::new(y, &x) {
            Ok(setup) => {
                println!(
                    "  k = {:?}, d(x, EY) = {}, predicted variance {}",
                    setup.nearest, setup.distance, setup.predicted_variance
                );
                let report = clt_facet_experiment(y, &x, &config)?;
                for v in &report.verdicts {
                    println!("  {} {}: {}", if v.passed { "PASS" } else { "FAIL" }, v.name, v.detail);
                }
            }
            Err(e) => println!("  rejected: {e}"),
        }
    }
    Ok(())
}
