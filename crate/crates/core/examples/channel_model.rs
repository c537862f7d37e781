//! Large-scale channel ingredients: antenna down-tilt pattern, ground and
//! aerial path loss, and the distance-dependent Rician factor.

use cellfree_ris::channel::{
    pathloss_gue_db, pathloss_simple_linear, rician_k_linear, AntennaPattern,
};
use cellfree_ris::SimConfig;

fn main() {
    let cfg = SimConfig::default();
    let pattern = AntennaPattern::from_config(&cfg);

    println!("antenna gain (tilt {} deg)", cfg.tilt_deg);
    for theta in [-80.0, -45.0, 0.0, 10.0, 15.0, 20.0, 45.0, 80.0] {
        println!(
            "  {theta:>6.1} deg  {:>7.2} dB",
            pattern.gain_db(theta, cfg.tilt_deg)
        );
    }

    println!(
        "\n{:>8} {:>12} {:>12} {:>10}",
        "d [m]", "ground [dB]", "air [dB]", "K [lin]"
    );
    for d in [1.0, 5.0, 10.0, 20.0, 50.0, 100.0, 300.0] {
        println!(
            "{d:>8.1} {:>12.2} {:>12.2} {:>10.3}",
            -pathloss_gue_db(d, &cfg),
            10.0 * pathloss_simple_linear(d, &cfg).log10(),
            rician_k_linear(d)
        );
    }
}
