//! Rate distributions for the default deployment, an up-tilted deployment
//! with more UAV power, and an RIS-assisted deployment.

use cellfree_ris::experiments::{rate_cdf, CdfScenario, Executor};
use cellfree_ris::SimConfig;

fn quantile(cdf: &[(f64, f64)], p: f64) -> f64 {
    cdf.iter()
        .find(|(_, q)| *q >= p)
        .map_or(f64::NAN, |(r, _)| *r)
}

fn main() -> cellfree_ris::Result<()> {
    let cfg = SimConfig {
        trials: 1000,
        ..SimConfig::default()
    };
    let scenarios = CdfScenario::standard_set(&cfg, Some(cfg.n_ris));
    let tables = rate_cdf(&cfg, &scenarios, &Executor::new(0)?)?;
    println!(
        "{:<9} {:>5} {:>6} {:>4}  {:>22}  {:>22}",
        "scenario", "kappa", "tilt", "N", "UAV p10/p50/p90", "GUE p10/p50/p90"
    );
    for t in &tables {
        let q = |c: &[(f64, f64)]| {
            format!(
                "{:6.2}/{:6.2}/{:6.2}",
                quantile(c, 0.1) / 1e6,
                quantile(c, 0.5) / 1e6,
                quantile(c, 0.9) / 1e6
            )
        };
        println!(
            "{:<9} {:>5} {:>6} {:>4}  {:>22}  {:>22}",
            t.scenario.name,
            t.scenario.kappa,
            t.scenario.tilt_deg,
            t.scenario.n_ris,
            q(&t.uav),
            q(&t.gue)
        );
    }
    Ok(())
}
