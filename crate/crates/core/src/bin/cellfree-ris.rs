use std::path::PathBuf;
use std::process::ExitCode;

use cellfree_ris::cli::{load_config, run, Overrides};
use cellfree_ris::experiments::ExperimentKind;
use clap::Parser;

/// Run one of the cell-free / RIS / UAV downlink experiments and write CSV
/// results plus a JSON manifest.
#[derive(Parser, Debug)]
#[command(version)]
struct Args {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// rate-region, cdf or ris-gain.
    #[arg(long)]
    experiment: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Trials per sweep point.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Power split; a comma list sets the sweep.
    #[arg(long, value_delimiter = ',')]
    kappa: Option<Vec<f64>>,
    /// RIS elements; a comma list sets the sweep.
    #[arg(long, value_delimiter = ',')]
    n_ris: Option<Vec<usize>>,
    /// UAV height in meters; a comma list sets the sweep.
    #[arg(long, visible_alias = "heights", value_delimiter = ',')]
    uav_height: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true)]
    tilt_deg: Option<f64>,
    #[arg(long)]
    no_ris: bool,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = (|| {
        let experiment = args
            .experiment
            .as_deref()
            .map(str::parse::<ExperimentKind>)
            .transpose()?;
        let overrides = Overrides {
            experiment,
            seed: args.seed,
            trials: args.trials,
            kappa: args.kappa.clone(),
            n_ris: args.n_ris.clone(),
            uav_height: args.uav_height.clone(),
            tilt_deg: args.tilt_deg,
            no_ris: args.no_ris,
        };
        let spec = load_config(args.config.as_deref(), &overrides)?;
        run(&spec, &args.out, args.workers)
    })();
    match result {
        Ok(report) => {
            if report.rejected_draws > 0 {
                eprintln!(
                    "warning: {} degenerate draws were redrawn",
                    report.rejected_draws
                );
            }
            println!("{}", report.results_path.display());
            println!("{}", report.manifest_path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
