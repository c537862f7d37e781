//! Drives a run from configuration text the same way the command-line tool
//! does, writing the CSV and manifest into a temporary directory.

use cellfree_ris::cli::{resolve, run, Overrides};
use cellfree_ris::experiments::ExperimentKind;

const CONFIG: &str = "\
# small deployment
M = 12
U = 3
N = 24
experiment = ris-gain
height_sweep = 50, 150
n_ris_sweep = 16, 32
trials = 200
";

fn main() -> cellfree_ris::Result<()> {
    let overrides = Overrides {
        seed: Some(42),
        ..Default::default()
    };
    let spec = resolve(Some(CONFIG), &overrides)?;
    assert_eq!(spec.kind, ExperimentKind::RisGain);

    let out = std::env::temp_dir().join("cellfree-ris-config-run");
    let report = run(&spec, &out, 0)?;
    println!("{}", std::fs::read_to_string(&report.results_path)?);
    println!("manifest: {}", report.manifest_path.display());
    Ok(())
}
