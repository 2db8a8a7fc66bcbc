//! Expectation of a discrete random set and the faces it exposes.
//!
//! The face of `EY` in direction `f` equals the weighted Minkowski sum of the
//! atom faces in direction `f`.

use randset::convex::{hull, support_face};
use randset::{ConvexBody, DiscreteRandomSet, Direction, Vector};

fn main() -> randset::Result<()> {
    let segment = |a: [f64; 2], b: [f64; 2]| -> randset::Result<ConvexBody> {
        hull(&[Vector::new(a)?, Vector::new(b)?])
    };
    let y = DiscreteRandomSet::new(vec![
        (0.5, segment([0.0, 0.0], [1.0, 0.0])?),
        (0.5, segment([0.0, 0.0], [0.0, 1.0])?),
    ])?;
    let ey = y.expectation()?;
    println!("EY vertices: {:?}", ey.vertices());

    for f in [[1.0, 1.0], [0.0, -1.0], [1.0, 0.0]] {
        let f = Direction::from_coords(f)?;
        let certificate = support_face(&ey, f.as_vector())?;
        let face = y.expectation_face(&f)?;
        println!(
            "f = {:?}: face {:?}, exposed {}, facet {}, residual {:.1e}",
            f.as_vector(),
            certificate.face.vertices(),
            certificate.is_exposed,
            certificate.is_facet(),
            face.residual
        );
        match y.exposed_selection(&f) {
            Ok(sel) => println!("  exposed selection mean {:?}, covariance {:?}", sel.mean, sel.covariance),
            Err(e) => println!("  {e}"),
        }
        println!("  tangent variance {:.4}", y.tangent_variance(&f)?);
    }
    Ok(())
}
