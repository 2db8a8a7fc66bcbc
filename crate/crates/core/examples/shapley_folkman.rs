//! Minkowski averages of nonconvex sets approach their convex hulls.

use randset::limit::convexification_check;
use randset::Vector;

fn main() -> randset::Result<()> {
    // Three corners of a square, repeated: averages fill in the missing corner.
    let corners = vec![
        Vector::new([0.0, 0.0])?,
        Vector::new([1.0, 0.0])?,
        Vector::new([0.0, 1.0])?,
    ];
    let sets = vec![corners; 8];
    let report = convexification_check(&sets, &[1, 2, 3, 4, 6, 8])?;
    for row in &report.rows {
        println!("n = {}  gap {:.5}  bound {:.5}", row.n, row.gap, row.bound);
    }
    println!("within bound: {}, nonincreasing: {}", report.all_within, report.nonincreasing);
    Ok(())
}
