//! One end-to-end realization: placement, channels, RIS alignment,
//! conjugate beamforming, power split and per-user rates.
//!
//! ```text
//! cargo run --release --example single_trial -- [trial_index]
//! ```

use cellfree_ris::experiments::run_trial;
use cellfree_ris::SimConfig;

fn main() -> cellfree_ris::Result<()> {
    let trial: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let cfg = SimConfig::default();
    let result = run_trial(&cfg, trial)?;

    println!(
        "trial {trial} (seed {}, {} redraws)",
        cfg.master_seed, result.redraws
    );
    for (k, (rate, sinr)) in result.rates_bps.iter().zip(&result.sinr).enumerate() {
        let who = if k == 0 {
            "uav".to_string()
        } else {
            format!("gue{k}")
        };
        println!(
            "  {who:<5} sinr {:>8.2} dB  rate {:>8.3} Mbps",
            10.0 * sinr.log10(),
            rate / 1e6
        );
    }
    if let Some(g) = result.ris_gain_db {
        println!("  RIS gain at the UAV: {g:.3} dB");
    }
    Ok(())
}
