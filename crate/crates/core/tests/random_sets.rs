mod common;

use common::*;
use proptest::prelude::*;
use randset::convex::{hausdorff, minkowski_sum, support, support_face};
use randset::random_set::mean_of_atom_faces;
use randset::{ConvexBody, DiscreteRandomSet, Direction, Error};

fn random_set() -> impl Strategy<Value = DiscreteRandomSet> {
    any::<u64>().prop_map(|seed| Gen::new(seed).random_set())
}

fn direction() -> impl Strategy<Value = Direction> {
    (0.0..std::f64::consts::TAU).prop_map(|t| Direction::from_coords(vec![t.cos(), t.sin()]).unwrap())
}

/// Outer normal of the edge from vertex `i` to `i + 1` of a planar polygon.
fn edge_normal(body: &ConvexBody, i: usize) -> Option<Direction> {
    let vs = body.vertices();
    if vs.len() < 2 {
        return None;
    }
    let a = &vs[i % vs.len()];
    let b = &vs[(i + 1) % vs.len()];
    let e = b - a;
    // Vertices run counterclockwise, so the outer normal is the edge turned clockwise.
    Direction::new(v(&[e[1], -e[0]])).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn expectation_support_is_weighted_sum(y in random_set(), f in direction()) {
        let ey = y.expectation().unwrap();
        let weighted: f64 = y.atoms().iter().map(|a| a.weight * support(&a.body, f.as_vector()).unwrap()).sum();
        prop_assert!((support(&ey, f.as_vector()).unwrap() - weighted).abs() <= 1e-9);
    }

    #[test]
    fn faces_commute_with_expectation(y in random_set(), f in direction()) {
        let ey = y.expectation().unwrap();
        let face = support_face(&ey, f.as_vector()).unwrap().face;
        let averaged = mean_of_atom_faces(&y, &f).unwrap();
        prop_assert!(hausdorff(&face, &averaged).unwrap() <= 1e-9);
        let certified = y.expectation_face(&f).unwrap();
        prop_assert!(certified.residual <= 1e-9);
    }

    #[test]
    fn exposed_selection_is_unique(y in random_set(), f in direction()) {
        match y.exposed_selection(&f) {
            Ok(sel) => {
                for (atom, k) in y.atoms().iter().zip(&sel.points) {
                    let face = support_face(&atom.body, f.as_vector()).unwrap().face;
                    prop_assert!(face.is_singleton());
                    prop_assert!(face.vertices()[0].distance(k) <= 1e-12);
                }
                let ey_face = support_face(&y.expectation().unwrap(), f.as_vector()).unwrap().face;
                prop_assert!(ey_face.is_singleton());
                prop_assert!(ey_face.vertices()[0].distance(&sel.mean) <= 1e-9);
            }
            Err(Error::NotExposed { atoms }) => {
                for j in atoms {
                    prop_assert!(!support_face(&y.atoms()[j].body, f.as_vector()).unwrap().face.is_singleton());
                }
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn tangent_variance_matches_brute_force(y in random_set(), f in direction()) {
        // Supports from raw vertices, moments from the definition.
        let s: Vec<f64> = y.atoms().iter().map(|a| a.body.vertices().iter().map(|p| p.dot(f.as_vector())).fold(f64::NEG_INFINITY, f64::max)).collect();
        let w: Vec<f64> = y.atoms().iter().map(|a| a.weight).collect();
        let mean: f64 = s.iter().zip(&w).map(|(s, w)| s * w).sum();
        let second: f64 = s.iter().zip(&w).map(|(s, w)| s * s * w).sum();
        let direct = (second - mean * mean).max(0.0);
        prop_assert!((y.tangent_variance(&f).unwrap() - direct).abs() <= 1e-9);
    }

    #[test]
    fn facets_are_inherited_by_sums(y in random_set(), edge in 0usize..8, draws in prop::collection::vec(0usize..4, 1..6)) {
        let Some(f) = edge_normal(&y.atoms()[0].body, edge) else { return Ok(()); };
        let draws: Vec<usize> = draws.iter().map(|&j| j % y.len()).collect();
        let has_facet = |k: &ConvexBody| support_face(k, f.as_vector()).unwrap().face.affine_dim() == 1;
        let mut sum = y.atoms()[0].body.clone();
        let any_facet = draws.iter().any(|&j| has_facet(&y.atoms()[j].body)) || has_facet(&sum);
        for &j in &draws {
            sum = minkowski_sum(&sum, &y.atoms()[j].body).unwrap();
        }
        prop_assert_eq!(has_facet(&sum), any_facet);

        let fi1 = y.facet_inheritance(&f, 1).unwrap();
        let fi5 = y.facet_inheritance(&f, 5).unwrap();
        prop_assert!(fi1.prob_n <= fi5.prob_n + 1e-15);
        prop_assert!((fi5.prob_n - (1.0 - (1.0 - fi1.p_facet).powi(5))).abs() <= 1e-15);
    }
}

#[test]
fn sampling_follows_weights() {
    let y = DiscreteRandomSet::new(vec![
        (0.2, ConvexBody::point(v(&[0.0]))),
        (0.3, ConvexBody::point(v(&[1.0]))),
        (0.5, ConvexBody::point(v(&[2.0]))),
    ])
    .unwrap();
    let mut counts = [0usize; 3];
    let n = 20_000;
    for i in 0..n {
        counts[y.sample((i as f64 + 0.5) / n as f64)] += 1;
    }
    assert_eq!(counts, [4000, 6000, 10_000]);
}

#[test]
fn nearest_point_selection_examples() {
    let sel = stacked_squares().nearest_point_selection(&v(&[0.5, -1.0])).unwrap();
    assert!(sel.compatible);
    assert!(sel.nearest.distance(&v(&[0.5, 0.5])) <= 1e-12);
    assert!((sel.selection.covariance[1][1] - 0.25).abs() <= 1e-12);
    assert!(sel.selection.covariance[0][0].abs() <= 1e-12);

    let sel = side_by_side().nearest_point_selection(&v(&[1.2, -1.0])).unwrap();
    assert!(!sel.compatible);
    assert!(sel.selection.mean.distance(&v(&[1.5, 0.0])) <= 1e-12);
    assert!(sel.nearest.distance(&v(&[1.2, 0.0])) <= 1e-12);
}

#[test]
fn not_exposed_names_the_flat_atom() {
    let f = Direction::from_coords(vec![1.0, 0.0]).unwrap();
    let err = two_segments().exposed_selection(&f).unwrap_err();
    assert!(matches!(&err, Error::NotExposed { atoms } if atoms == &vec![1]));
    assert!(err.to_string().contains("atom 2"));
}
