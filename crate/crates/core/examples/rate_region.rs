//! 95%-likely UAV and GUE rates as the power split factor sweeps, with and
//! without an RIS, plus the no-UAV baseline.
//!
//! ```text
//! cargo run --release --example rate_region -- [trials]
//! ```

use cellfree_ris::experiments::{rate_region, Executor};
use cellfree_ris::SimConfig;

fn main() -> cellfree_ris::Result<()> {
    let cfg = SimConfig {
        trials: std::env::args()
            .nth(1)
            .and_then(|s| s.parse().ok())
            .unwrap_or(500),
        ..SimConfig::default()
    };
    let rows = rate_region(
        &cfg,
        &[0.02, 0.05, 0.1, 0.15],
        &[15, 30],
        &Executor::new(0)?,
    )?;
    println!(
        "{:<8} {:>6} {:>12} {:>12}",
        "system", "kappa", "GUE [Mbps]", "UAV [Mbps]"
    );
    for r in rows {
        println!(
            "{:<8} {:>6} {:>12.3} {:>12.3}",
            r.system.to_string(),
            r.kappa,
            r.gue_rate_bps / 1e6,
            r.uav_rate_bps / 1e6
        );
    }
    Ok(())
}
