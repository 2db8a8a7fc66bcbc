//! Euclidean projection onto polytopes and the nearest-point selection.

use randset::convex::{nearest_point, norm_gradient, point_distance};
use randset::{ConvexBody, DiscreteRandomSet, Vector};

fn main() -> randset::Result<()> {
    let cube = ConvexBody::cuboid(&[0.0; 3], &[1.0; 3])?;
    let x = Vector::new([2.0, 0.5, -1.0])?;
    let k = nearest_point(&cube, &x)?;
    println!("k_x(cube) = {k:?}, d = {:.6}", point_distance(&cube, &x)?);
    println!("outer normal HB_(k-x) = {:?}", norm_gradient(&(&k - &x))?.as_vector());

    let side_by_side = DiscreteRandomSet::new(vec![
        (0.5, ConvexBody::cuboid(&[0.0, 0.0], &[1.0, 1.0])?),
        (0.5, ConvexBody::cuboid(&[2.0, 0.0], &[3.0, 1.0])?),
    ])?;
    for x in [[1.5, -1.0], [1.2, -1.0]] {
        let sel = side_by_side.nearest_point_selection(&Vector::new(x)?)?;
        println!(
            "x = {x:?}: selection mean {:?}, k_x(EY) {:?}, compatible {}",
            sel.selection.mean, sel.nearest, sel.compatible
        );
    }
    Ok(())
}
