//! Hulls, Minkowski sums, scaling and support functions in the plane.

use randset::convex::{hull, minkowski_sum, scale, support};
use randset::{ConvexBody, Vector};

fn main() -> randset::Result<()> {
    let triangle = hull(&[
        Vector::new([0.0, 0.0])?,
        Vector::new([1.0, 0.0])?,
        Vector::new([0.0, 1.0])?,
        Vector::new([0.2, 0.2])?,
    ])?;
    let square = ConvexBody::cuboid(&[0.0, 0.0], &[1.0, 1.0])?;
    let sum = minkowski_sum(&triangle, &square)?;
    println!("triangle vertices: {:?}", triangle.vertices());
    println!("triangle + square: {:?}", sum.vertices());

    for angle in [0.0_f64, 45.0, 135.0, 270.0] {
        let t = angle.to_radians();
        let u = Vector::new([t.cos(), t.sin()])?;
        println!(
            "u = {angle:>5}°  s_T = {:+.4}  s_S = {:+.4}  s_(T+S) = {:+.4}",
            support(&triangle, &u)?,
            support(&square, &u)?,
            support(&sum, &u)?
        );
    }

    let half = scale(&sum, 0.5)?;
    println!("(T + S) / 2: {:?}", half.vertices());
    Ok(())
}
