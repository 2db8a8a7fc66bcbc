mod common;

use common::*;
use randset::io::records_csv;
use randset::limit::{
    clt_exposed_experiment, clt_facet_experiment, clt_hausdorff_experiment,
    clt_tangent_experiment, facet_frequency_experiment, lln_experiment, DrawScheme,
    ExperimentConfig, FacetSetup,
};
use randset::{ConvexBody, DiscreteRandomSet, Direction, Error};

fn dir(c: &[f64]) -> Direction {
    Direction::from_coords(c.to_vec()).unwrap()
}

#[test]
fn same_seed_same_records_any_thread_count() {
    let y = two_segments();
    let config = ExperimentConfig::new(9, vec![4, 16, 64], 40);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| lln_experiment(&y, &config).unwrap());
    let b = four.install(|| lln_experiment(&y, &config).unwrap());
    assert_eq!(records_csv(&a), records_csv(&b));
    let c = lln_experiment(&y, &ExperimentConfig::new(10, vec![4, 16, 64], 40)).unwrap();
    assert_ne!(records_csv(&a), records_csv(&c));
}

#[test]
fn records_grouped_per_size() {
    let config = ExperimentConfig::new(1, vec![2, 5, 11], 30);
    let report = lln_experiment(&two_segments(), &config).unwrap();
    assert_eq!(report.records.len(), 90);
    for n in [2, 5, 11] {
        assert_eq!(report.records_at(n).count(), 30);
    }
    let csv = records_csv(&report);
    assert_eq!(csv.lines().count(), 91);
    assert!(csv.starts_with("replication,N,stat\n"));
}

#[test]
fn nested_prefixes_share_draws() {
    // Under the nested scheme the N=1 draw is the first draw of the N=2 run,
    // so the two-segment mean at N=1 is one of the atoms themselves.
    let y = two_segments();
    let config = ExperimentConfig::new(3, vec![1, 2], 50);
    let report = lln_experiment(&y, &config).unwrap();
    // Either unit segment is at Hausdorff distance ½ from EY = [0,½]².
    for h in report.component_at(1, 0) {
        assert!((h - 0.5).abs() <= 1e-12, "{h}");
    }
    let indep = ExperimentConfig::new(3, vec![1, 2], 50).with_draw_scheme(DrawScheme::Independent);
    let other = lln_experiment(&y, &indep).unwrap();
    assert_eq!(other.config.draw_scheme, DrawScheme::Independent);
}

#[test]
fn constant_law_has_zero_error() {
    let y = DiscreteRandomSet::constant(square([0.0, 0.0], [1.0, 1.0]));
    let report = lln_experiment(&y, &ExperimentConfig::new(0, vec![1, 4, 16], 25)).unwrap();
    assert!(report.records.iter().all(|r| r.stat[0] <= 1e-12));
    assert!(report.passed());
}

#[test]
fn lln_statistic_has_closed_form_on_two_segments() {
    // Ȳ_N = [0,B/N]×[0,1−B/N] and ℍ(Ȳ_N, [0,½]²) = |B/N − ½|, so √N·ℍ lives
    // on the lattice k/√N.
    let report = clt_hausdorff_experiment(&two_segments(), &ExperimentConfig::new(5, vec![16, 64], 40)).unwrap();
    assert_eq!(report.config.draw_scheme, DrawScheme::Independent);
    for n in [16, 64] {
        let root = (n as f64).sqrt();
        for s in report.component_at(n, 0) {
            let k = s * root;
            assert!((k - k.round()).abs() <= 1e-9, "{s} at N={n}");
        }
    }
}

#[test]
fn hausdorff_clt_needs_two_sizes() {
    let err = clt_hausdorff_experiment(&two_segments(), &ExperimentConfig::new(0, vec![10], 30)).unwrap_err();
    assert!(matches!(err, Error::Config(_)));
}

#[test]
fn exposed_records_have_the_selection_covariance_support() {
    let report = clt_exposed_experiment(&two_segments(), &dir(&[1.0, 1.0]), &ExperimentConfig::new(2, vec![50], 100)).unwrap();
    // Offsets lie on the line spanned by (1,−1).
    for r in &report.records {
        assert!((r.stat[0] + r.stat[1]).abs() <= 1e-9);
    }
    assert_eq!(report.stat_names.len(), 2);
    assert!(records_csv(&report).starts_with("replication,N,stat_0,stat_1\n"));
}

#[test]
fn exposed_rejects_flat_faces() {
    let err = clt_exposed_experiment(&two_segments(), &dir(&[1.0, 0.0]), &ExperimentConfig::new(0, vec![5], 5)).unwrap_err();
    assert!(matches!(err, Error::NotExposed { .. }));
}

#[test]
fn exposed_runs_discard_nothing() {
    // Sums of exposed points are exposed, so no replication is degenerate.
    let report = clt_exposed_experiment(&two_segments(), &dir(&[1.0, 2.0]), &ExperimentConfig::new(4, vec![10], 30)).unwrap();
    assert_eq!(report.diagnostics.discarded, 0);
}

#[test]
fn tangent_support_component_is_exact() {
    let report = clt_tangent_experiment(&stacked_squares(), &dir(&[0.0, 1.0]), &ExperimentConfig::new(8, vec![25], 40)).unwrap();
    // s_{K_j}((0,1)) ∈ {1, 2} and s_EY = 1.5: (Σ s − 1.5 N)/√N = (T − N/2)/√N.
    for r in report.records_at(25) {
        let t = r.stat[0] * 5.0 + 12.5;
        assert!((t - t.round()).abs() <= 1e-9);
        assert!(r.stat[1] <= 0.5 + 1e-12);
    }
}

#[test]
fn facet_setup_on_stacked_squares() {
    let setup = FacetSetup::new(&stacked_squares(), &v(&[0.5, -1.0])).unwrap();
    assert!(setup.nearest.distance(&v(&[0.5, 0.5])) <= 1e-12);
    assert!((setup.distance - 1.5).abs() <= 1e-12);
    assert!(setup.norm_gradient.as_vector().distance(&v(&[0.0, 1.0])) <= 1e-12);
    assert!((setup.predicted_variance - 0.25).abs() <= 1e-12);
}

#[test]
fn facet_preconditions() {
    let config = ExperimentConfig::new(0, vec![5], 5);
    assert!(matches!(
        clt_facet_experiment(&stacked_squares(), &v(&[0.5, 0.5]), &config),
        Err(Error::InsideBody)
    ));
    assert!(matches!(
        clt_facet_experiment(&side_by_side(), &v(&[1.2, -1.0]), &config),
        Err(Error::IncompatibleSelection { .. })
    ));
    // Nearest point of [0,1]² to (2,2) is the vertex (1,1): no facet.
    let y = DiscreteRandomSet::constant(square([0.0, 0.0], [1.0, 1.0]));
    assert!(matches!(clt_facet_experiment(&y, &v(&[2.0, 2.0]), &config), Err(Error::NoFacet)));
}

#[test]
fn facet_statistic_is_exact_on_stacked_squares() {
    let report = clt_facet_experiment(&stacked_squares(), &v(&[0.5, -1.0]), &ExperimentConfig::new(6, vec![16], 40)).unwrap();
    // d(x, Ȳ_N) = 1 + T/N with T the number of upper squares.
    for s in report.component_at(16, 0) {
        let t = s * 4.0 + 8.0;
        assert!((t - t.round()).abs() <= 1e-9);
    }
    assert_eq!(report.diagnostics.facet_excursions, 0);
}

#[test]
fn facet_frequency_matches_closed_form_predictions() {
    let report = facet_frequency_experiment(&two_segments(), &dir(&[0.0, -1.0]), &ExperimentConfig::new(1, vec![1, 2, 3], 400)).unwrap();
    let predicted = report.parameters.predicted.as_ref().unwrap();
    assert_eq!(predicted["p_facet"], 0.5);
    assert_eq!(predicted["probability"][2]["p"], 0.875);
    assert!(report.passed(), "{:?}", report.failed_verdicts().collect::<Vec<_>>());
}

#[test]
fn invalid_configs_rejected() {
    let y = two_segments();
    for config in [
        ExperimentConfig::new(0, vec![5], 0),
        ExperimentConfig::new(0, vec![], 5),
        ExperimentConfig::new(0, vec![0, 4], 5),
        ExperimentConfig::new(0, vec![4, 4], 5),
    ] {
        assert!(matches!(lln_experiment(&y, &config), Err(Error::Config(_))));
    }
}

#[test]
fn three_dimensional_lln() {
    let cube = ConvexBody::cuboid(&[0.0; 3], &[1.0; 3]).unwrap();
    let y = DiscreteRandomSet::new(vec![
        (0.5, cube),
        (0.5, ConvexBody::point(v(&[0.0, 0.0, 0.0]))),
    ])
    .unwrap();
    let report = lln_experiment(&y, &ExperimentConfig::new(2, vec![4, 16, 64], 20));
    let report = report.unwrap();
    let first = report.summary_at(4).unwrap().median[0];
    let last = report.summary_at(64).unwrap().median[0];
    assert!(last < first);
}
