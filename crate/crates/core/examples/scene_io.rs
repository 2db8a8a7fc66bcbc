//! Scene files in, report artifacts out.

use randset::io::{parse_scene, scene_to_json, write_report, RunInputs};
use randset::limit::{lln_experiment, ExperimentConfig};

const SCENE: &str = r#"{
  "version": 1,
  "dim": 2,
  "atoms": [
    { "weight": 0.25, "vertices": [[0, 0], [2, 0], [1, 1], [1, 0.2]] },
    { "weight": 0.75, "vertices": [[0, 0], [0, 1]] }
  ]
}"#;

fn main() -> randset::Result<()> {
    let y = parse_scene(SCENE)?;
    println!("normalized scene:\n{}", scene_to_json(&y));

    let report = lln_experiment(&y, &ExperimentConfig::new(1, vec![10, 100, 1000], 50))?;
    let out = std::env::temp_dir().join("randset-scene-io");
    let inputs = RunInputs {
        command: "example".into(),
        ..RunInputs::default()
    };
    let manifest = write_report(&report, &y, &inputs, &out)?;
    println!("wrote {:?}", manifest.artifacts);
    Ok(())
}
