use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Atom indices carried by [`Error::NotExposed`] are zero-based; the
/// `Display` output numbers atoms from 1 to match scene files read by people.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite coordinate in {0}")]
    NonFinite(&'static str),

    #[error("zero direction: the support face of the zero functional is the whole body")]
    ZeroDirection,

    #[error("negative scale factor {0}")]
    NegativeScale(f64),

    #[error("dimension {0} is not supported by {1}")]
    UnsupportedDimension(usize, &'static str),

    #[error("nearest-point iteration did not converge within {iterations} iterations (gap {gap:e})")]
    NearestPointDiverged { iterations: usize, gap: f64 },

    #[error("point lies outside the body (distance {distance:e})")]
    PointOutside { distance: f64 },

    #[error("face of the expectation differs from the mean of atom faces by {residual:e}")]
    CommutationViolated { residual: f64 },

    #[error("direction does not expose a point: {}", describe_atoms(.atoms))]
    NotExposed { atoms: Vec<usize> },

    #[error("weights sum to {0}, outside 1 ± 1e-6")]
    WeightSum(f64),

    #[error("invalid weight {weight} for atom {}", .atom + 1)]
    InvalidWeight { atom: usize, weight: f64 },

    #[error(
        "nearest-point selection mean {selection_mean:?} differs from the nearest point {nearest:?} of the expectation"
    )]
    IncompatibleSelection {
        selection_mean: Vec<f64>,
        nearest: Vec<f64>,
    },

    #[error("nearest point of the expectation is not contained in a facet")]
    NoFacet,

    #[error("query point lies inside the expectation")]
    InsideBody,

    #[error("{degenerate} of {total} replications produced a non-singleton face")]
    DegenerateFaces { degenerate: usize, total: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid statistics input: {0}")]
    Stats(String),

    #[error("schema violation at `{path}`: {reason}")]
    Schema { path: String, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn describe_atoms(atoms: &[usize]) -> String {
    let names: Vec<String> = atoms.iter().map(|a| format!("atom {}", a + 1)).collect();
    format!("non-singleton face on {}", names.join(", "))
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
