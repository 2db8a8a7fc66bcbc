//! JSON scenes, body and set files, and experiment artifacts.
//!
//! A scene is `{"version": 1, "dim": d, "atoms": [{"weight": p, "vertices": [[...], ...]}, ...]}`.
//! Vertex lists need not be minimal; they are hulled on load.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::convex::ConvexBody;
use crate::error::{Error, Result};
use crate::limit::{ExperimentConfig, ExperimentKind, ExperimentReport};
use crate::random_set::DiscreteRandomSet;
use crate::vector::Vector;

pub const SCENE_VERSION: u32 = 1;

pub const REPORT_FILE: &str = "report.json";
pub const RECORDS_FILE: &str = "records.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub version: u32,
    pub dim: usize,
    pub atoms: Vec<SceneAtom>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneAtom {
    pub weight: f64,
    pub vertices: Vec<Vec<f64>>,
}

impl SceneFile {
    pub fn from_random_set(y: &DiscreteRandomSet) -> Self {
        SceneFile {
            version: SCENE_VERSION,
            dim: y.dim(),
            atoms: y
                .atoms()
                .iter()
                .map(|a| SceneAtom {
                    weight: a.weight,
                    vertices: a.body.vertices().iter().map(Vector::to_vec).collect(),
                })
                .collect(),
        }
    }

    pub fn to_random_set(&self) -> Result<DiscreteRandomSet> {
        check_version(self.version)?;
        if self.atoms.is_empty() {
            return Err(schema("atoms", "at least one atom is required"));
        }
        let atoms = self
            .atoms
            .iter()
            .enumerate()
            .map(|(i, atom)| {
                let body = body_from_rows(&atom.vertices, self.dim, &format!("atoms[{i}].vertices"))?;
                Ok((atom.weight, body))
            })
            .collect::<Result<Vec<_>>>()?;
        DiscreteRandomSet::new(atoms)
    }
}

/// A single body: `{"version": 1, "dim": d, "vertices": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyFile {
    pub version: u32,
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
}

/// Finite point sets: `{"version": 1, "dim": d, "sets": [[[...], ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetsFile {
    pub version: u32,
    pub dim: usize,
    pub sets: Vec<Vec<Vec<f64>>>,
}

fn schema(path: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        reason: reason.into(),
    }
}

fn check_version(version: u32) -> Result<()> {
    if version == SCENE_VERSION {
        Ok(())
    } else {
        Err(schema(
            "version",
            format!("unsupported version {version}, expected {SCENE_VERSION}"),
        ))
    }
}

fn decode<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        schema(path, e.into_inner().to_string())
    })
}

fn points_from_rows(rows: &[Vec<f64>], dim: usize, path: &str) -> Result<Vec<Vector>> {
    if dim == 0 {
        return Err(schema("dim", "dimension must be positive"));
    }
    if rows.is_empty() {
        return Err(schema(path, "at least one vertex is required"));
    }
    rows.iter()
        .enumerate()
        .map(|(j, row)| {
            if row.len() != dim {
                return Err(schema(
                    format!("{path}[{j}]"),
                    format!("expected {dim} coordinates, found {}", row.len()),
                ));
            }
            Vector::new(row.clone()).map_err(|e| schema(format!("{path}[{j}]"), e.to_string()))
        })
        .collect()
}

fn body_from_rows(rows: &[Vec<f64>], dim: usize, path: &str) -> Result<ConvexBody> {
    crate::convex::hull(&points_from_rows(rows, dim, path)?)
}

/// Parses and validates a scene; weights are renormalized, vertex lists hulled.
pub fn parse_scene(text: &str) -> Result<DiscreteRandomSet> {
    decode::<SceneFile>(text)?.to_random_set()
}

/// Serializes a random set as a scene.
pub fn scene_to_json(y: &DiscreteRandomSet) -> String {
    serde_json::to_string_pretty(&SceneFile::from_random_set(y)).expect("scene serializes")
}

/// Parses a body file; a scene file yields its expectation.
pub fn parse_body(text: &str) -> Result<ConvexBody> {
    let value: serde_json::Value = decode(text)?;
    if value.get("atoms").is_some() {
        return parse_scene(text)?.expectation();
    }
    let file: BodyFile = decode(text)?;
    check_version(file.version)?;
    body_from_rows(&file.vertices, file.dim, "vertices")
}

pub fn parse_sets(text: &str) -> Result<Vec<Vec<Vector>>> {
    let file: SetsFile = decode(text)?;
    check_version(file.version)?;
    if file.sets.is_empty() {
        return Err(schema("sets", "at least one set is required"));
    }
    file.sets
        .iter()
        .enumerate()
        .map(|(i, rows)| points_from_rows(rows, file.dim, &format!("sets[{i}]")))
        .collect()
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn read_scene(path: &Path) -> Result<DiscreteRandomSet> {
    parse_scene(&read_text(path)?)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Everything needed to reproduce a simulation run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub experiment: ExperimentKind,
    pub config: ExperimentConfig,
    pub master_seed: u64,
    /// `--dir` exactly as given, before normalization.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<f64>>,
    pub scene: SceneFile,
    pub artifacts: Vec<String>,
    pub version: String,
    pub duration_seconds: f64,
}

/// Inputs of a run that the report itself does not carry.
#[derive(Clone, Debug, Default)]
pub struct RunInputs {
    pub command: String,
    pub direction: Option<Vec<f64>>,
    pub point: Option<Vec<f64>>,
}

/// Records as CSV: `replication,N,stat` for scalar statistics, otherwise
/// `replication,N,stat_0,…`. Floats use the shortest round-trip form.
pub fn records_csv(report: &ExperimentReport) -> String {
    let width = report.stat_names.len();
    let mut out = String::from("replication,N");
    if width == 1 {
        out.push_str(",stat");
    } else {
        for k in 0..width {
            let _ = write!(out, ",stat_{k}");
        }
    }
    out.push('\n');
    for r in &report.records {
        let _ = write!(out, "{},{}", r.replication, r.n);
        for s in &r.stat {
            let _ = write!(out, ",{s}");
        }
        out.push('\n');
    }
    out
}

/// Writes `report.json`, `records.csv` and `manifest.json` into `dir`.
pub fn write_report(
    report: &ExperimentReport,
    y: &DiscreteRandomSet,
    inputs: &RunInputs,
    dir: &Path,
) -> Result<RunManifest> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let report_path = dir.join(REPORT_FILE);
    let records_path = dir.join(RECORDS_FILE);
    let manifest_path = dir.join(MANIFEST_FILE);
    write_text(&report_path, &(serde_json::to_string_pretty(report)? + "\n"))?;
    write_text(&records_path, &records_csv(report))?;
    let manifest = RunManifest {
        command: inputs.command.clone(),
        experiment: report.experiment,
        config: report.config.clone(),
        master_seed: report.config.master_seed,
        direction: inputs.direction.clone(),
        point: inputs.point.clone(),
        scene: SceneFile::from_random_set(y),
        artifacts: [&report_path, &records_path, &manifest_path]
            .iter()
            .map(|p| p.display().to_string())
            .collect(),
        version: crate::VERSION.to_string(),
        duration_seconds: report.duration.as_secs_f64(),
    };
    write_text(&manifest_path, &(serde_json::to_string_pretty(&manifest)? + "\n"))?;
    Ok(manifest)
}

pub fn read_manifest(path: &Path) -> Result<RunManifest> {
    decode(&read_text(path)?)
}

/// Directory paths of the three artifacts for `dir`.
pub fn artifact_paths(dir: &Path) -> [PathBuf; 3] {
    [dir.join(REPORT_FILE), dir.join(RECORDS_FILE), dir.join(MANIFEST_FILE)]
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_SEGMENTS: &str = r#"{"version": 1, "dim": 2, "atoms": [
        {"weight": 0.5, "vertices": [[0, 0], [1, 0]]},
        {"weight": 0.5, "vertices": [[0, 0], [0, 1]]}]}"#;

    #[test]
    fn parses_two_segments() {
        let y = parse_scene(TWO_SEGMENTS).unwrap();
        assert_eq!(y.len(), 2);
        assert_eq!(y.dim(), 2);
        assert_eq!(
            y.expectation().unwrap(),
            ConvexBody::cuboid(&[0.0, 0.0], &[0.5, 0.5]).unwrap()
        );
    }

    #[test]
    fn weight_sum_rejected() {
        let text = TWO_SEGMENTS.replacen("0.5", "0.4", 1);
        assert!(matches!(parse_scene(&text), Err(Error::WeightSum(_))));
    }

    #[test]
    fn interior_points_pruned() {
        let text = r#"{"version": 1, "dim": 2, "atoms": [
            {"weight": 1, "vertices": [[0, 0], [1, 0], [0, 1], [0.2, 0.2]]}]}"#;
        let y = parse_scene(text).unwrap();
        assert_eq!(y.atoms()[0].body.vertices().len(), 3);
    }

    #[test]
    fn schema_errors_carry_paths() {
        let text = r#"{"version": 1, "dim": 2, "atoms": [{"weight": "x", "vertices": []}]}"#;
        match parse_scene(text) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "atoms[0].weight"),
            other => panic!("unexpected {other:?}"),
        }
        let text = r#"{"version": 1, "dim": 2, "atoms": [{"weight": 1, "vertices": [[0, 0, 1]]}]}"#;
        match parse_scene(text) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "atoms[0].vertices[0]"),
            other => panic!("unexpected {other:?}"),
        }
        let text = r#"{"version": 2, "dim": 1, "atoms": [{"weight": 1, "vertices": [[0]]}]}"#;
        assert!(matches!(parse_scene(text), Err(Error::Schema { .. })));
        assert!(parse_scene(r#"{"version": 1, "dim": 1, "atoms": [{"weight": 1, "vertices": [[NaN]]}]}"#).is_err());
        assert!(parse_scene(r#"{"version": 1, "dim": 1, "atoms": [{"weight": 1, "vertices": [[1e999]]}]}"#).is_err());
    }

    #[test]
    fn scene_round_trip() {
        let y = parse_scene(TWO_SEGMENTS).unwrap();
        let back = parse_scene(&scene_to_json(&y)).unwrap();
        assert_eq!(y, back);
    }

    #[test]
    fn body_file_or_scene() {
        let body = parse_body(r#"{"version": 1, "dim": 2, "vertices": [[0, 0], [2, 0], [0, 2], [2, 2]]}"#).unwrap();
        assert_eq!(body, ConvexBody::cuboid(&[0.0, 0.0], &[2.0, 2.0]).unwrap());
        let ey = parse_body(TWO_SEGMENTS).unwrap();
        assert_eq!(ey, ConvexBody::cuboid(&[0.0, 0.0], &[0.5, 0.5]).unwrap());
    }

    #[test]
    fn sets_file() {
        let sets = parse_sets(r#"{"version": 1, "dim": 1, "sets": [[[0], [1]], [[2]]]}"#).unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[0].len(), 2);
        assert!(parse_sets(r#"{"version": 1, "dim": 1, "sets": []}"#).is_err());
    }
}
