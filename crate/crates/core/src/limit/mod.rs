//! Seeded Monte Carlo experiments on the sample mean `Ȳ_N = (1/N) Σ Y_i`.
//!
//! Every experiment draws i.i.d. atoms from a [`DiscreteRandomSet`],
//! records one statistic per replication and checkpoint `N`, and grades the
//! records against the analytic limit law. Replications run in parallel;
//! records are merged by replication index so output does not depend on
//! scheduling.
//!
//! [`DiscreteRandomSet`]: crate::random_set::DiscreteRandomSet

mod convexification;
mod experiments;
mod process;

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use convexification::{convexification_check, ConvexificationReport, ConvexificationRow};
pub use experiments::{
    clt_exposed_experiment, clt_facet_experiment, clt_hausdorff_experiment,
    clt_tangent_experiment, facet_frequency_experiment, lln_experiment, FacetSetup,
};
pub use process::{mean_process_extend, MeanProcess};

/// p-value threshold for every KS verdict.
pub const KS_ALPHA: f64 = 0.01;
/// LLN rate window for the log-log slope of median `ℍ(Ȳ_N, EY)` against `N`.
pub const LLN_SLOPE_RANGE: (f64, f64) = (-0.65, -0.35);
/// Entrywise tolerance on the exposed-point covariance.
pub const COVARIANCE_TOL: f64 = 0.03;
/// Relative tolerance on tangent and facet variances.
pub const VARIANCE_REL_TOL: f64 = 0.10;
/// Variance ceiling when the predicted variance vanishes.
pub const DEGENERATE_VARIANCE_MAX: f64 = 1e-3;
/// Largest tolerated fraction of replications with a non-singleton face.
pub const MAX_DEGENERATE_FRACTION: f64 = 1e-3;

/// How draws are keyed to the counter-based generator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DrawScheme {
    /// One stream per replication; checkpoint `N` sees the first `N` draws.
    #[default]
    Nested,
    /// One stream per (replication, sample size); checkpoints are independent.
    Independent,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub master_seed: u64,
    pub sample_sizes: Vec<usize>,
    pub replications: usize,
    #[serde(default)]
    pub draw_scheme: DrawScheme,
}

impl ExperimentConfig {
    pub fn new(master_seed: u64, sample_sizes: Vec<usize>, replications: usize) -> Self {
        ExperimentConfig {
            master_seed,
            sample_sizes,
            replications,
            draw_scheme: DrawScheme::Nested,
        }
    }

    pub fn with_draw_scheme(mut self, scheme: DrawScheme) -> Self {
        self.draw_scheme = scheme;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications == 0 {
            return Err(Error::Config("replications must be at least 1".into()));
        }
        if self.sample_sizes.is_empty() {
            return Err(Error::Config("sample_sizes must not be empty".into()));
        }
        if self.sample_sizes[0] == 0 {
            return Err(Error::Config("sample sizes must be positive".into()));
        }
        if self.sample_sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("sample_sizes must be strictly increasing".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Lln,
    CltHausdorff,
    CltExposed,
    CltTangent,
    CltFacet,
    FacetFreq,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Lln => "lln",
            ExperimentKind::CltHausdorff => "clt-hausdorff",
            ExperimentKind::CltExposed => "clt-exposed",
            ExperimentKind::CltTangent => "clt-tangent",
            ExperimentKind::CltFacet => "clt-facet",
            ExperimentKind::FacetFreq => "facet-freq",
        }
    }
}

/// One statistic vector for one replication at one sample size.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub replication: usize,
    pub n: usize,
    pub stat: Vec<f64>,
}

/// Empirical moments of the records at one sample size.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SizeSummary {
    pub n: usize,
    pub count: usize,
    pub mean: Vec<f64>,
    /// Unbiased covariance; absent with fewer than two records.
    pub covariance: Option<Vec<Vec<f64>>>,
    pub median: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    /// The check could not run (too few records); counts as passed.
    pub skipped: bool,
    pub observed: f64,
    pub detail: String,
}

impl Verdict {
    pub(crate) fn check(name: impl Into<String>, passed: bool, observed: f64, detail: String) -> Self {
        Verdict {
            name: name.into(),
            passed,
            skipped: false,
            observed,
            detail,
        }
    }

    pub(crate) fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            passed: true,
            skipped: true,
            observed: f64::NAN,
            detail: detail.into(),
        }
    }
}

/// Experiment inputs beyond the config, echoed into reports.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<f64>>,
    /// Analytic targets used by the verdicts (e.g. covariance, variance).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Replications dropped because a face expected to be a point was not.
    pub discarded: usize,
    /// Records whose nearest point left the facet of the expectation.
    pub facet_excursions: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub experiment: ExperimentKind,
    pub config: ExperimentConfig,
    pub parameters: Parameters,
    /// Names of the statistic components, in record order.
    pub stat_names: Vec<String>,
    /// Bulk data; written to CSV rather than the JSON report.
    #[serde(skip)]
    pub records: Vec<Record>,
    pub summaries: Vec<SizeSummary>,
    pub verdicts: Vec<Verdict>,
    pub diagnostics: Diagnostics,
    /// Wall-clock time; kept out of the serialized report so reports stay
    /// byte-stable across runs.
    #[serde(skip)]
    pub duration: Duration,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn failed_verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }

    /// Records at sample size `n`.
    pub fn records_at(&self, n: usize) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(move |r| r.n == n)
    }

    /// Component `k` of every record at sample size `n`.
    pub fn component_at(&self, n: usize, k: usize) -> Vec<f64> {
        self.records_at(n).map(|r| r.stat[k]).collect()
    }

    pub fn summary_at(&self, n: usize) -> Option<&SizeSummary> {
        self.summaries.iter().find(|s| s.n == n)
    }
}
