//! Mean UAV SINR gain from the RIS against element count and UAV height.

use cellfree_ris::experiments::{ris_gain_sweep, Executor};
use cellfree_ris::SimConfig;

fn main() -> cellfree_ris::Result<()> {
    let cfg = SimConfig {
        trials: 1000,
        ..SimConfig::default()
    };
    let sizes = [20, 30, 40, 50, 60];
    let rows = ris_gain_sweep(&cfg, &sizes, &[16.0, 100.0, 300.0], &Executor::new(0)?)?;
    print!("{:>8}", "H [m]");
    for n in sizes {
        print!("{:>9}", format!("N={n}"));
    }
    println!();
    for chunk in rows.chunks(sizes.len()) {
        print!("{:>8}", chunk[0].uav_height);
        for r in chunk {
            print!("{:>9.3}", r.mean_gain_db);
        }
        println!();
    }
    Ok(())
}
