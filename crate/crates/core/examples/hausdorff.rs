//! Exact Hausdorff distance against its support-function form on a grid.

use randset::convex::{deviation, hausdorff, hausdorff_via_support, hull};
use randset::{ConvexBody, Vector};

fn main() -> randset::Result<()> {
    let square = ConvexBody::cuboid(&[0.0, 0.0], &[1.0, 1.0])?;
    let diamond = hull(&[
        Vector::new([0.5, -0.5])?,
        Vector::new([1.5, 0.5])?,
        Vector::new([0.5, 1.5])?,
        Vector::new([-0.5, 0.5])?,
    ])?;
    println!("D(square, diamond) = {:.6}", deviation(&square, &diamond)?);
    println!("D(diamond, square) = {:.6}", deviation(&diamond, &square)?);
    println!("H exact            = {:.6}", hausdorff(&square, &diamond)?);
    for m in [8, 36, 360, 3600] {
        println!("H grid m={m:<5}     = {:.6}", hausdorff_via_support(&square, &diamond, m)?);
    }
    Ok(())
}
