//! Phase alignment of the RIS toward the UAV on one deployment, compared
//! with random phase settings.

use cellfree_ris::beamforming::{cb_precoders, ris_align_uav, RisConfig};
use cellfree_ris::channel::{aggregate_channel, draw_channels, large_scale, ChannelSet};
use cellfree_ris::geometry::place_nodes;
use cellfree_ris::SimConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> cellfree_ris::Result<()> {
    let cfg = SimConfig {
        n_ris: 40,
        ..SimConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.master_seed);
    let layout = place_nodes(&cfg, &mut rng);
    let ls = large_scale(&layout, &cfg);
    let cs = draw_channels(&ls, &mut rng);

    // coherent CB power at the UAV, |sum_m g_m0 w_m0|^2 = (sum_m |g_m0|^2)^2
    let uav_power = |cs: &ChannelSet, ris: &RisConfig| -> cellfree_ris::Result<f64> {
        let g = aggregate_channel(cs, ris)?;
        let w = cb_precoders(&g);
        let s: f64 = g
            .column(0)
            .iter()
            .zip(w.column(0))
            .map(|(a, b)| (a * b).re)
            .sum();
        Ok(s * s)
    };

    let direct = uav_power(&cs.without_ris(), &RisConfig::identity(0))?;
    let aligned = ris_align_uav(
        cs.h_ris.view(),
        cs.h_ris_user.column(0),
        cs.h_direct.column(0),
    );
    let best = uav_power(&cs, &aligned)?;

    let mut random = Vec::new();
    for _ in 0..1000 {
        let phases: Vec<f64> = (0..cfg.n_ris)
            .map(|_| rng.random::<f64>() * std::f64::consts::TAU)
            .collect();
        random.push(uav_power(&cs, &RisConfig::from_phases(&phases))?);
    }
    let mean_random = random.iter().sum::<f64>() / random.len() as f64;
    let max_random = random.iter().copied().fold(0.0, f64::max);

    println!(
        "UAV at ({:.1}, {:.1}, {:.0}) m, N = {}",
        layout.uav_pos.x, layout.uav_pos.y, layout.uav_pos.z, cfg.n_ris
    );
    println!("  direct only       {:.4e}", direct);
    println!(
        "  aligned RIS       {:.4e}  ({:+.3} dB)",
        best,
        10.0 * (best / direct).log10()
    );
    println!(
        "  random RIS mean   {:.4e}  ({:+.3} dB)",
        mean_random,
        10.0 * (mean_random / direct).log10()
    );
    println!(
        "  random RIS best   {:.4e}  ({:+.3} dB)",
        max_random,
        10.0 * (max_random / direct).log10()
    );
    println!("  first phases [rad]: {:.3?}", &aligned.phases()[..5]);
    Ok(())
}
