use std::time::Instant;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde_json::json;

use super::{
    Diagnostics, DrawScheme, ExperimentConfig, ExperimentKind, ExperimentReport, MeanProcess,
    Parameters, Record, SizeSummary, Verdict, COVARIANCE_TOL, DEGENERATE_VARIANCE_MAX, KS_ALPHA,
    LLN_SLOPE_RANGE, MAX_DEGENERATE_FRACTION, VARIANCE_REL_TOL,
};
use crate::convex::{
    hausdorff, is_facet_at, is_facet_face, nearest_point, point_distance, support_face,
    support_unchecked, ConvexBody,
};
use crate::error::{Error, Result};
use crate::random_set::{mean_of_atom_faces, DiscreteRandomSet, Selection};
use crate::rng::DrawStream;
use crate::stats::{self, KS_MIN_SAMPLE};
use crate::vector::{Direction, Vector};

/// Below this an analytic variance is treated as exactly zero.
const ZERO_VARIANCE: f64 = 1e-12;

struct Observation {
    stat: Vec<f64>,
    flagged: bool,
}

impl Observation {
    fn plain(stat: Vec<f64>) -> Self {
        Observation {
            stat,
            flagged: false,
        }
    }
}

/// Per-replication state fed one atom index at a time.
trait Tracker {
    fn push(&mut self, atom: usize) -> Result<()>;
    /// `None` marks a degenerate replication to be discarded.
    fn observe(&self, n: usize) -> Result<Option<Observation>>;
}

struct Simulation {
    records: Vec<Record>,
    diagnostics: Diagnostics,
}

fn simulate<T, F>(y: &DiscreteRandomSet, config: &ExperimentConfig, make: F) -> Result<Simulation>
where
    T: Tracker,
    F: Fn() -> T + Sync,
{
    config.validate()?;
    let sizes = &config.sample_sizes;
    let run = |r: usize| -> Result<Option<(Vec<Record>, usize)>> {
        let mut rows = Vec::with_capacity(sizes.len());
        let mut flagged = 0;
        let mut observe = |tracker: &T, n: usize| -> Result<bool> {
            match tracker.observe(n)? {
                Some(obs) => {
                    flagged += usize::from(obs.flagged);
                    rows.push(Record {
                        replication: r,
                        n,
                        stat: obs.stat,
                    });
                    Ok(true)
                }
                None => Ok(false),
            }
        };
        match config.draw_scheme {
            DrawScheme::Nested => {
                let mut stream = DrawStream::new(config.master_seed, r as u64);
                let mut tracker = make();
                let mut drawn = 0;
                for &n in sizes {
                    while drawn < n {
                        tracker.push(y.sample(stream.next_uniform()))?;
                        drawn += 1;
                    }
                    if !observe(&tracker, n)? {
                        return Ok(None);
                    }
                }
            }
            DrawScheme::Independent => {
                for (k, &n) in sizes.iter().enumerate() {
                    let key = (r * sizes.len() + k) as u64;
                    let mut stream = DrawStream::new(config.master_seed, key);
                    let mut tracker = make();
                    for _ in 0..n {
                        tracker.push(y.sample(stream.next_uniform()))?;
                    }
                    if !observe(&tracker, n)? {
                        return Ok(None);
                    }
                }
            }
        }
        Ok(Some((rows, flagged)))
    };
    let outcomes: Vec<Option<(Vec<Record>, usize)>> = (0..config.replications)
        .into_par_iter()
        .map(run)
        .collect::<Result<_>>()?;

    let mut records = Vec::with_capacity(config.replications * sizes.len());
    let mut diagnostics = Diagnostics::default();
    for outcome in outcomes {
        match outcome {
            Some((rows, flagged)) => {
                records.extend(rows);
                diagnostics.facet_excursions += flagged;
            }
            None => diagnostics.discarded += 1,
        }
    }
    if diagnostics.discarded as f64 > MAX_DEGENERATE_FRACTION * config.replications as f64 {
        return Err(Error::DegenerateFaces {
            degenerate: diagnostics.discarded,
            total: config.replications,
        });
    }
    Ok(Simulation {
        records,
        diagnostics,
    })
}

fn summarize(records: &[Record], sizes: &[usize]) -> Result<Vec<SizeSummary>> {
    sizes
        .iter()
        .map(|&n| {
            let rows: Vec<Vec<f64>> = records
                .iter()
                .filter(|r| r.n == n)
                .map(|r| r.stat.clone())
                .collect();
            let width = rows.first().map_or(0, Vec::len);
            let count = rows.len();
            let mean = (0..width)
                .map(|k| rows.iter().map(|r| r[k]).sum::<f64>() / count as f64)
                .collect();
            let covariance = if count >= 2 {
                Some(stats::mean_and_covariance(&rows)?.1)
            } else {
                None
            };
            let median = (0..width)
                .map(|k| stats::median(&rows.iter().map(|r| r[k]).collect::<Vec<_>>()))
                .collect::<Result<Vec<_>>>()?;
            Ok(SizeSummary {
                n,
                count,
                mean,
                covariance,
                median,
            })
        })
        .collect()
}

struct Assembly {
    kind: ExperimentKind,
    config: ExperimentConfig,
    parameters: Parameters,
    stat_names: Vec<String>,
    simulation: Simulation,
    started: Instant,
}

impl Assembly {
    fn finish(self, grade: impl FnOnce(&[Record], &[SizeSummary]) -> Result<Vec<Verdict>>) -> Result<ExperimentReport> {
        let summaries = summarize(&self.simulation.records, &self.config.sample_sizes)?;
        let verdicts = grade(&self.simulation.records, &summaries)?;
        Ok(ExperimentReport {
            experiment: self.kind,
            config: self.config,
            parameters: self.parameters,
            stat_names: self.stat_names,
            records: self.simulation.records,
            summaries,
            verdicts,
            diagnostics: self.simulation.diagnostics,
            duration: self.started.elapsed(),
        })
    }
}

fn component(records: &[Record], n: usize, k: usize) -> Vec<f64> {
    records.iter().filter(|r| r.n == n).map(|r| r.stat[k]).collect()
}

fn ks_normal_verdict(name: String, sample: &[f64], sigma: f64) -> Result<Verdict> {
    if sample.len() < KS_MIN_SAMPLE {
        return Ok(Verdict::skipped(name, "fewer than 20 records"));
    }
    let ks = stats::ks_test_normal(sample, 0.0, sigma)?;
    Ok(Verdict::check(
        name,
        ks.p_value > KS_ALPHA,
        ks.p_value,
        format!("D = {:.5}, p = {:.4} against N(0, {:.6})", ks.statistic, ks.p_value, sigma * sigma),
    ))
}

fn variance_verdict(name: String, sample: &[f64], predicted: f64) -> Result<Verdict> {
    if sample.len() < 2 {
        return Ok(Verdict::skipped(name, "fewer than 2 records"));
    }
    let (_, var) = stats::mean_and_variance(sample)?;
    Ok(if predicted > ZERO_VARIANCE {
        let rel = (var - predicted).abs() / predicted;
        Verdict::check(
            name,
            rel <= VARIANCE_REL_TOL,
            var,
            format!("variance {var:.6} vs predicted {predicted:.6} (relative error {rel:.4}, tolerance {VARIANCE_REL_TOL})"),
        )
    } else {
        Verdict::check(
            name,
            var <= DEGENERATE_VARIANCE_MAX,
            var,
            format!("variance {var:.3e} with predicted 0 (ceiling {DEGENERATE_VARIANCE_MAX})"),
        )
    })
}

/// Law of large numbers: records `ℍ(Ȳ_N, EY)`.
///
/// Verdicts: median `ℍ` decreases from the first to the last sample size,
/// the log-log slope of the medians lies in `[-0.65, -0.35]`, and every
/// record stays below `max_j ℍ(K_j, EY)`.
pub fn lln_experiment(y: &DiscreteRandomSet, config: &ExperimentConfig) -> Result<ExperimentReport> {
    let started = Instant::now();
    let target = y.expectation()?;
    let simulation = simulate(y, config, || HausdorffTracker::new(y, &target, false))?;
    let ceiling = y
        .atoms()
        .iter()
        .map(|a| hausdorff(&a.body, &target))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Assembly {
        kind: ExperimentKind::Lln,
        config: config.clone(),
        parameters: Parameters {
            predicted: Some(json!({ "max_atom_hausdorff": ceiling })),
            ..Parameters::default()
        },
        stat_names: vec!["hausdorff".into()],
        simulation,
        started,
    }
    .finish(|records, summaries| {
        let mut verdicts = Vec::new();
        let worst = records.iter().map(|r| r.stat[0]).fold(0.0, f64::max);
        verdicts.push(Verdict::check(
            "hausdorff_ceiling",
            worst <= ceiling + 1e-9 * (1.0 + ceiling),
            worst,
            format!("largest record {worst:.6} vs max_j H(K_j, EY) = {ceiling:.6}"),
        ));
        let medians: Vec<f64> = summaries.iter().map(|s| s.median[0]).collect();
        let sizes: Vec<f64> = summaries.iter().map(|s| s.n as f64).collect();
        if medians.len() >= 2 {
            let (first, last) = (medians[0], medians[medians.len() - 1]);
            verdicts.push(Verdict::check(
                "median_decreasing",
                last <= first,
                last,
                format!("median H {first:.6} at N={} → {last:.6} at N={}", sizes[0], sizes[sizes.len() - 1]),
            ));
        }
        if medians.iter().all(|&m| m == 0.0) {
            verdicts.push(Verdict::skipped("loglog_slope", "all medians are zero"));
        } else if medians.len() < 3 {
            verdicts.push(Verdict::skipped("loglog_slope", "fewer than 3 sample sizes"));
        } else if medians.iter().any(|&m| m <= 0.0) {
            verdicts.push(Verdict::check(
                "loglog_slope",
                false,
                f64::NAN,
                "some but not all medians are zero".into(),
            ));
        } else {
            let (slope, _) = stats::loglog_slope(&sizes, &medians)?;
            let (lo, hi) = LLN_SLOPE_RANGE;
            verdicts.push(Verdict::check(
                "loglog_slope",
                (lo..=hi).contains(&slope),
                slope,
                format!("slope {slope:.4}, accepted range [{lo}, {hi}]"),
            ));
        }
        Ok(verdicts)
    })
}

/// Hausdorff CLT surrogate: records `√N · ℍ(Ȳ_N, EY)` with independent
/// draws per sample size and compares consecutive sizes with a two-sample
/// KS test.
pub fn clt_hausdorff_experiment(
    y: &DiscreteRandomSet,
    config: &ExperimentConfig,
) -> Result<ExperimentReport> {
    let started = Instant::now();
    if config.sample_sizes.len() < 2 {
        return Err(Error::Config(
            "the Hausdorff CLT check needs at least two sample sizes".into(),
        ));
    }
    let config = config.clone().with_draw_scheme(DrawScheme::Independent);
    let target = y.expectation()?;
    let simulation = simulate(y, &config, || HausdorffTracker::new(y, &target, true))?;
    let sizes = config.sample_sizes.clone();
    Assembly {
        kind: ExperimentKind::CltHausdorff,
        config,
        parameters: Parameters::default(),
        stat_names: vec!["scaled_hausdorff".into()],
        simulation,
        started,
    }
    .finish(|records, _| {
        let mut verdicts = Vec::new();
        let lowest = records.iter().map(|r| r.stat[0]).fold(f64::INFINITY, f64::min);
        verdicts.push(Verdict::check(
            "nonnegative",
            lowest >= 0.0,
            lowest,
            format!("smallest record {lowest}"),
        ));
        for w in sizes.windows(2) {
            let name = format!("ks_stability_{}_{}", w[0], w[1]);
            let a = component(records, w[0], 0);
            let b = component(records, w[1], 0);
            if a.iter().chain(&b).all(|&v| v == 0.0) {
                verdicts.push(Verdict::check(name, true, 1.0, "both samples identically zero".into()));
            } else if a.len() < KS_MIN_SAMPLE || b.len() < KS_MIN_SAMPLE {
                verdicts.push(Verdict::skipped(name, "fewer than 20 records"));
            } else {
                let ks = stats::ks_two_sample(&a, &b)?;
                verdicts.push(Verdict::check(
                    name,
                    ks.p_value > KS_ALPHA,
                    ks.p_value,
                    format!("D = {:.5}, p = {:.4}", ks.statistic, ks.p_value),
                ));
            }
        }
        Ok(verdicts)
    })
}

struct HausdorffTracker<'a> {
    y: &'a DiscreteRandomSet,
    target: &'a ConvexBody,
    process: MeanProcess,
    root_n: bool,
}

impl<'a> HausdorffTracker<'a> {
    fn new(y: &'a DiscreteRandomSet, target: &'a ConvexBody, root_n: bool) -> Self {
        HausdorffTracker {
            y,
            target,
            process: MeanProcess::new(),
            root_n,
        }
    }
}

impl Tracker for HausdorffTracker<'_> {
    fn push(&mut self, atom: usize) -> Result<()> {
        self.process.push(&self.y.atoms()[atom].body)
    }

    fn observe(&self, n: usize) -> Result<Option<Observation>> {
        let h = hausdorff(&self.process.mean()?, self.target)?;
        let factor = if self.root_n { (n as f64).sqrt() } else { 1.0 };
        Ok(Some(Observation::plain(vec![factor * h])))
    }
}

/// Exposed-point CLT: with `f` exposing `k` in `EY`, records
/// `√N (y_N − k)` where `y_N` is the point of `Ȳ_N` exposed by `f`.
///
/// Verdicts per sample size: covariance within `0.03` entrywise of the
/// selection covariance `Σ`; mean within `4 √(tr Σ / reps)` of zero; KS
/// normality along each eigenvector of `Σ` with positive eigenvalue, and
/// records vanishing along null eigenvectors.
pub fn clt_exposed_experiment(
    y: &DiscreteRandomSet,
    f: &Direction,
    config: &ExperimentConfig,
) -> Result<ExperimentReport> {
    let started = Instant::now();
    let selection = y.exposed_selection(f)?;
    let dim = y.dim();
    let sigma = selection.covariance.clone();
    let simulation = simulate(y, config, || ExposedTracker {
        y,
        f,
        points: &selection.points,
        k: &selection.mean,
        process: MeanProcess::new(),
        point_sum: Vector::zeros(dim),
    })?;
    let sizes = config.sample_sizes.clone();
    let reps = config.replications;
    Assembly {
        kind: ExperimentKind::CltExposed,
        config: config.clone(),
        parameters: Parameters {
            direction: Some(f.as_vector().to_vec()),
            point: None,
            predicted: Some(json!({
                "exposed_point": selection.mean.to_vec(),
                "covariance": sigma,
            })),
        },
        stat_names: (0..dim).map(|i| format!("scaled_offset_{i}")).collect(),
        simulation,
        started,
    }
    .finish(|records, summaries| {
        let eigen = SymmetricEigen::new(DMatrix::from_fn(dim, dim, |r, c| sigma[r][c]));
        let trace: f64 = (0..dim).map(|i| sigma[i][i]).sum();
        let mut verdicts = Vec::new();
        for summary in summaries {
            let n = summary.n;
            match &summary.covariance {
                Some(cov) => {
                    let err = (0..dim)
                        .flat_map(|r| (0..dim).map(move |c| (r, c)))
                        .map(|(r, c)| (cov[r][c] - sigma[r][c]).abs())
                        .fold(0.0, f64::max);
                    verdicts.push(Verdict::check(
                        format!("covariance_{n}"),
                        err <= COVARIANCE_TOL,
                        err,
                        format!("max entrywise error {err:.5} vs tolerance {COVARIANCE_TOL}; empirical {cov:?}"),
                    ));
                }
                None => verdicts.push(Verdict::skipped(format!("covariance_{n}"), "fewer than 2 records")),
            }
            let mean_norm = summary.mean.iter().map(|m| m * m).sum::<f64>().sqrt();
            let bound = 4.0 * (trace / reps as f64).sqrt() + 1e-12;
            verdicts.push(Verdict::check(
                format!("mean_{n}"),
                mean_norm <= bound,
                mean_norm,
                format!("‖mean‖ {mean_norm:.5} vs bound {bound:.5}"),
            ));
            for axis in 0..dim {
                let lambda = eigen.eigenvalues[axis];
                let e = eigen.eigenvectors.column(axis);
                let projected: Vec<f64> = records
                    .iter()
                    .filter(|r| r.n == n)
                    .map(|r| r.stat.iter().zip(e.iter()).map(|(s, c)| s * c).sum())
                    .collect();
                if lambda > ZERO_VARIANCE {
                    verdicts.push(ks_normal_verdict(
                        format!("ks_normal_{n}_axis_{axis}"),
                        &projected,
                        lambda.sqrt(),
                    )?);
                } else {
                    let worst = projected.iter().map(|p| p.abs()).fold(0.0, f64::max);
                    verdicts.push(Verdict::check(
                        format!("null_axis_{n}_axis_{axis}"),
                        worst <= 1e-9,
                        worst,
                        format!("largest |projection| {worst:.3e} on a null direction of Σ"),
                    ));
                }
            }
        }
        if summaries.is_empty() {
            verdicts.push(Verdict::skipped("covariance", "no sample sizes"));
        }
        let _ = sizes;
        Ok(verdicts)
    })
}

struct ExposedTracker<'a> {
    y: &'a DiscreteRandomSet,
    f: &'a Direction,
    points: &'a [Vector],
    k: &'a Vector,
    process: MeanProcess,
    point_sum: Vector,
}

impl Tracker for ExposedTracker<'_> {
    fn push(&mut self, atom: usize) -> Result<()> {
        self.process.push(&self.y.atoms()[atom].body)?;
        self.point_sum = &self.point_sum + &self.points[atom];
        Ok(())
    }

    fn observe(&self, n: usize) -> Result<Option<Observation>> {
        let sum = self.process.running_sum().ok_or(Error::Empty("mean process"))?;
        let face = support_face(sum, self.f.as_vector())?.face;
        if !face.is_singleton() {
            return Ok(None);
        }
        let exposed_sum = &face.vertices()[0];
        // The face of the sum must be the sum of the per-draw faces.
        let residual = exposed_sum.distance(&self.point_sum);
        if residual > 1e-9 * (1.0 + self.point_sum.norm()) {
            return Err(Error::CommutationViolated { residual });
        }
        let nf = n as f64;
        let offset = &exposed_sum.scaled(1.0 / nf) - self.k;
        Ok(Some(Observation::plain(offset.scaled(nf.sqrt()).to_vec())))
    }
}

/// Tangent-plane CLT: records `(1/√N) Σ_i (s_{Y_i}(u) − s_{EY}(u))` and
/// `ℍ((1/N) Σ_i ∂s_{Y_i}(u), ∂s_{EY}(u))`.
///
/// Verdicts per sample size: variance within 10% of `σ²(u)` (or at most
/// `1e-3` when `σ²(u) = 0`) and KS normality against `N(0, σ²(u))`. The
/// face residual must not grow from the first to the last sample size.
pub fn clt_tangent_experiment(
    y: &DiscreteRandomSet,
    u: &Direction,
    config: &ExperimentConfig,
) -> Result<ExperimentReport> {
    let started = Instant::now();
    let sigma2 = y.tangent_variance(u)?;
    let ey = y.expectation()?;
    let s_ey = support_unchecked(&ey, u.as_vector());
    let face_ey = support_face(&ey, u.as_vector())?.face;
    let supports: Vec<f64> = y
        .atoms()
        .iter()
        .map(|a| support_unchecked(&a.body, u.as_vector()))
        .collect();
    let faces = y
        .atoms()
        .iter()
        .map(|a| Ok(support_face(&a.body, u.as_vector())?.face))
        .collect::<Result<Vec<_>>>()?;
    let simulation = simulate(y, config, || TangentTracker {
        supports: &supports,
        faces: &faces,
        s_ey,
        face_ey: &face_ey,
        support_sum: 0.0,
        face_process: MeanProcess::new(),
    })?;
    let face_mean = mean_of_atom_faces(y, u)?;
    Assembly {
        kind: ExperimentKind::CltTangent,
        config: config.clone(),
        parameters: Parameters {
            direction: Some(u.as_vector().to_vec()),
            point: None,
            predicted: Some(json!({
                "variance": sigma2,
                "support_of_expectation": s_ey,
                "face_identity_residual": hausdorff(&face_mean, &face_ey)?,
            })),
        },
        stat_names: vec!["normalized_support_sum".into(), "face_mean_hausdorff".into()],
        simulation,
        started,
    }
    .finish(|records, summaries| {
        let mut verdicts = Vec::new();
        for summary in summaries {
            let n = summary.n;
            let sample = component(records, n, 0);
            verdicts.push(variance_verdict(format!("variance_{n}"), &sample, sigma2)?);
            if sigma2 > ZERO_VARIANCE {
                verdicts.push(ks_normal_verdict(format!("ks_normal_{n}"), &sample, sigma2.sqrt())?);
            }
        }
        if summaries.len() >= 2 {
            let first = summaries[0].median[1];
            let last = summaries[summaries.len() - 1].median[1];
            verdicts.push(Verdict::check(
                "face_mean_convergence",
                last <= first,
                last,
                format!("median face residual {first:.6} → {last:.6}"),
            ));
        }
        Ok(verdicts)
    })
}

struct TangentTracker<'a> {
    supports: &'a [f64],
    faces: &'a [ConvexBody],
    s_ey: f64,
    face_ey: &'a ConvexBody,
    support_sum: f64,
    face_process: MeanProcess,
}

impl Tracker for TangentTracker<'_> {
    fn push(&mut self, atom: usize) -> Result<()> {
        self.support_sum += self.supports[atom];
        self.face_process.push(&self.faces[atom])
    }

    fn observe(&self, n: usize) -> Result<Option<Observation>> {
        let nf = n as f64;
        let normalized = (self.support_sum - nf * self.s_ey) / nf.sqrt();
        let residual = hausdorff(&self.face_process.mean()?, self.face_ey)?;
        Ok(Some(Observation::plain(vec![normalized, residual])))
    }
}

/// Everything the facet CLT derives from `Y` and the query point `x`.
#[derive(Clone, Debug)]
pub struct FacetSetup {
    /// `k = k_x(EY)`
    pub nearest: Vector,
    /// `d(x, EY)`
    pub distance: f64,
    /// `HB_{k−x} = (k − x) / ‖k − x‖`
    pub norm_gradient: Direction,
    /// Outer normal `f = −HB_{k−x}` of the facet containing `k`.
    pub facet_normal: Direction,
    pub selection: Selection,
    /// `HB_{k−x} Σ HB_{k−x}ᵀ`
    pub predicted_variance: f64,
}

impl FacetSetup {
    /// Checks the hypotheses of the facet CLT for `Y` and `x`.
    ///
    /// Fails with [`Error::InsideBody`] when `x ∈ EY`, with
    /// [`Error::IncompatibleSelection`] when the mean of the nearest points
    /// `k_x(K_j)` is not `k_x(EY)`, and with [`Error::NoFacet`] when `k_x(EY)`
    /// is not inside a facet with normal `−HB_{k−x}`.
    pub fn new(y: &DiscreteRandomSet, x: &Vector) -> Result<Self> {
        x.check_dim(y.dim())?;
        let ey = y.expectation()?;
        let distance = point_distance(&ey, x)?;
        if distance <= 1e-9 * (1.0 + ey.radius().max(x.norm())) {
            return Err(Error::InsideBody);
        }
        let nearest_sel = y.nearest_point_selection(x)?;
        if !nearest_sel.compatible {
            return Err(Error::IncompatibleSelection {
                selection_mean: nearest_sel.selection.mean.to_vec(),
                nearest: nearest_sel.nearest.to_vec(),
            });
        }
        let nearest = nearest_sel.nearest;
        let hb = Direction::new(&nearest - x)?;
        let facet_normal = hb.flipped();
        if !is_facet_at(&ey, &nearest, &facet_normal)? {
            return Err(Error::NoFacet);
        }
        let predicted_variance = nearest_sel.selection.quadratic_form(hb.as_vector()).max(0.0);
        Ok(FacetSetup {
            nearest,
            distance,
            norm_gradient: hb,
            facet_normal,
            selection: nearest_sel.selection,
            predicted_variance,
        })
    }
}

/// Facet CLT: records `√N (d(x, Ȳ_N) − d(x, EY))`.
///
/// Verdicts per sample size: variance within 10% of `HB Σ HBᵀ` (at most
/// `1e-3` when that vanishes) and KS normality when it does not. Records
/// whose nearest point leaves the facet of `EY` are counted in
/// `diagnostics.facet_excursions` but kept.
pub fn clt_facet_experiment(
    y: &DiscreteRandomSet,
    x: &Vector,
    config: &ExperimentConfig,
) -> Result<ExperimentReport> {
    let started = Instant::now();
    let setup = FacetSetup::new(y, x)?;
    let simulation = simulate(y, config, || FacetTracker {
        y,
        x,
        setup: &setup,
        process: MeanProcess::new(),
    })?;
    let predicted = setup.predicted_variance;
    Assembly {
        kind: ExperimentKind::CltFacet,
        config: config.clone(),
        parameters: Parameters {
            direction: None,
            point: Some(x.to_vec()),
            predicted: Some(json!({
                "nearest_point": setup.nearest.to_vec(),
                "distance": setup.distance,
                "norm_gradient": setup.norm_gradient.as_vector().to_vec(),
                "selection_covariance": setup.selection.covariance,
                "variance": predicted,
            })),
        },
        stat_names: vec!["scaled_distance_offset".into()],
        simulation,
        started,
    }
    .finish(|records, summaries| {
        let mut verdicts = Vec::new();
        for summary in summaries {
            let n = summary.n;
            let sample = component(records, n, 0);
            verdicts.push(variance_verdict(format!("variance_{n}"), &sample, predicted)?);
            if predicted > ZERO_VARIANCE {
                verdicts.push(ks_normal_verdict(format!("ks_normal_{n}"), &sample, predicted.sqrt())?);
            }
        }
        Ok(verdicts)
    })
}

struct FacetTracker<'a> {
    y: &'a DiscreteRandomSet,
    x: &'a Vector,
    setup: &'a FacetSetup,
    process: MeanProcess,
}

impl Tracker for FacetTracker<'_> {
    fn push(&mut self, atom: usize) -> Result<()> {
        self.process.push(&self.y.atoms()[atom].body)
    }

    fn observe(&self, n: usize) -> Result<Option<Observation>> {
        let mean = self.process.mean()?;
        let k = nearest_point(&mean, self.x)?;
        let d = k.distance(self.x);
        let on_facet = is_facet_at(&mean, &k, &self.setup.facet_normal)?;
        Ok(Some(Observation {
            stat: vec![(n as f64).sqrt() * (d - self.setup.distance)],
            flagged: !on_facet,
        }))
    }
}

/// Facet inheritance: records whether `∂s_{Ȳ_N}(f)` is a facet and checks
/// the frequency against `1 − (1 − p)^N` with a 3σ binomial band.
pub fn facet_frequency_experiment(
    y: &DiscreteRandomSet,
    f: &Direction,
    config: &ExperimentConfig,
) -> Result<ExperimentReport> {
    let started = Instant::now();
    let p_facet = y.facet_inheritance(f, 1)?.p_facet;
    let simulation = simulate(y, config, || FacetFreqTracker {
        y,
        f,
        process: MeanProcess::new(),
    })?;
    let predictions = config
        .sample_sizes
        .iter()
        .map(|&n| Ok((n, y.facet_inheritance(f, n as u32)?.prob_n)))
        .collect::<Result<Vec<_>>>()?;
    Assembly {
        kind: ExperimentKind::FacetFreq,
        config: config.clone(),
        parameters: Parameters {
            direction: Some(f.as_vector().to_vec()),
            point: None,
            predicted: Some(json!({
                "p_facet": p_facet,
                "probability": predictions.iter().map(|&(n, p)| json!({"n": n, "p": p})).collect::<Vec<_>>(),
            })),
        },
        stat_names: vec!["has_facet".into()],
        simulation,
        started,
    }
    .finish(|records, _| {
        let mut verdicts = Vec::new();
        for &(n, p) in &predictions {
            let sample = component(records, n, 0);
            let hits = sample.iter().filter(|&&s| s > 0.5).count();
            let trials = sample.len();
            let freq = hits as f64 / trials.max(1) as f64;
            verdicts.push(Verdict::check(
                format!("binomial_band_{n}"),
                stats::binomial_band(trials as u64, p, hits as u64),
                freq,
                format!("{hits}/{trials} = {freq:.5} vs 1-(1-p)^N = {p:.5}"),
            ));
        }
        Ok(verdicts)
    })
}

struct FacetFreqTracker<'a> {
    y: &'a DiscreteRandomSet,
    f: &'a Direction,
    process: MeanProcess,
}

impl Tracker for FacetFreqTracker<'_> {
    fn push(&mut self, atom: usize) -> Result<()> {
        self.process.push(&self.y.atoms()[atom].body)
    }

    fn observe(&self, _n: usize) -> Result<Option<Observation>> {
        let sum = self.process.running_sum().ok_or(Error::Empty("mean process"))?;
        let face = support_face(sum, self.f.as_vector())?.face;
        Ok(Some(Observation::plain(vec![f64::from(u8::from(is_facet_face(&face)))])))
    }
}
