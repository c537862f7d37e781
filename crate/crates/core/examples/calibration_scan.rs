//! Reports the rate-region, rate-distribution and RIS-gain quantities for one
//! antenna / RIS setting.
//!
//! ```text
//! cargo run --release --example calibration_scan -- [beamwidth_deg] [sidelobe_db] [ris_gain_db] [trials]
//! ```

use cellfree_ris::experiments::{rate_cdf, rate_region, ris_gain_sweep, CdfScenario, Executor};
use cellfree_ris::SimConfig;

fn main() -> cellfree_ris::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut cfg = SimConfig::default();
    if let Some(&v) = args.first() {
        cfg.antenna_beamwidth_deg = v;
    }
    if let Some(&v) = args.get(1) {
        cfg.antenna_sidelobe_db = v;
    }
    if let Some(&v) = args.get(2) {
        cfg.ris_element_gain_db = v;
    }
    cfg.trials = args.get(3).map_or(500, |&t| t as usize);
    let exec = Executor::new(0)?;

    println!(
        "beamwidth {} deg, sidelobe {} dB, ris element gain {} dB, {} trials",
        cfg.antenna_beamwidth_deg, cfg.antenna_sidelobe_db, cfg.ris_element_gain_db, cfg.trials
    );

    println!("\nris gain (dB)   N=20..60");
    let rows = ris_gain_sweep(&cfg, &[20, 30, 40, 50, 60], &[16.0, 100.0, 300.0], &exec)?;
    for chunk in rows.chunks(5) {
        let gains: Vec<String> = chunk
            .iter()
            .map(|r| format!("{:7.2}", r.mean_gain_db))
            .collect();
        println!("  H={:>5}  {}", chunk[0].uav_height, gains.join(" "));
    }

    println!("\nrate region (Mbps)");
    for r in rate_region(&cfg, &[0.02, 0.05, 0.1, 0.15], &[15, 30], &exec)? {
        println!(
            "  {:<8} kappa={:<5} gue={:7.3} uav={:7.3}",
            r.system.to_string(),
            r.kappa,
            r.gue_rate_bps / 1e6,
            r.uav_rate_bps / 1e6
        );
    }

    println!("\nmedians (Mbps)");
    for t in rate_cdf(&cfg, &CdfScenario::standard_set(&cfg, Some(20)), &exec)? {
        println!(
            "  {:<9} uav={:7.3} gue={:7.3}",
            t.scenario.name,
            t.uav_median().unwrap_or(f64::NAN) / 1e6,
            t.gue_median().unwrap_or(f64::NAN) / 1e6
        );
    }
    Ok(())
}
