//! Monte-Carlo driver: single trials and the three studies built on them
//! (power-split rate region, rate CDFs, RIS gain sweep).
//!
//! Every trial owns a random stream derived from `(master_seed,
//! trial_index, attempt)`, so results do not depend on how trials are spread
//! over worker threads. Trial `i` of two different scenarios shares its
//! positions and direct-link fading, which pairs the comparisons.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beamforming::{cb_precoders, gamma_analytic, ppa_allocate, ris_align_uav, RisConfig};
use crate::channel::{aggregate_channel, draw_channels, large_scale, ChannelSet, LargeScaleParams};
use crate::config::SimConfig;
use crate::error::{Error, Result};
use crate::geometry::place_nodes;
use crate::link::{ris_gain_db, sinr_all, LinkMetrics};

/// Redraw budget for a trial whose geometry turns out degenerate.
pub const MAX_REDRAWS: u32 = 64;

/// Minimum sample count for a 5th percentile.
pub const MIN_PERCENTILE_SAMPLES: usize = 20;

/// Random stream of one trial attempt.
pub fn trial_rng(master_seed: u64, trial_index: u64, attempt: u32) -> ChaCha8Rng {
    let key = master_seed ^ (attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(trial_index);
    rng
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial_index: u64,
    /// Per-user rate, bits/s, UAV first.
    pub rates_bps: Vec<f64>,
    pub sinr: Vec<f64>,
    /// UAV SINR with the RIS over the same realization without it.
    pub ris_gain_db: Option<f64>,
    /// Degenerate draws discarded before this one.
    pub redraws: u32,
}

impl TrialResult {
    pub fn uav_rate_bps(&self) -> f64 {
        self.rates_bps[0]
    }

    /// Rate of GUE `k = 1`.
    pub fn gue_rate_bps(&self) -> f64 {
        self.rates_bps[1]
    }
}

/// CB + PPA link evaluation for one channel realization and RIS setting.
pub fn evaluate_links(
    cfg: &SimConfig,
    ls: &LargeScaleParams,
    cs: &ChannelSet,
    ris: &RisConfig,
) -> Result<LinkMetrics> {
    let g = aggregate_channel(cs, ris)?;
    let w = cb_precoders(&g);
    let gamma = gamma_analytic(ls, ris)?;
    let alloc = ppa_allocate(&gamma, cfg.kappa, cfg.p_d)?;
    let sinr = sinr_all(&g, &w, &alloc.eta, cfg.noise_power_w())?;
    Ok(LinkMetrics::new(sinr, cfg.bandwidth_hz))
}

fn evaluate_trial(
    cfg: &SimConfig,
    ls: &LargeScaleParams,
    cs: &ChannelSet,
) -> Result<(LinkMetrics, Option<f64>)> {
    if cfg.n_ris == 0 {
        return Ok((evaluate_links(cfg, ls, cs, &RisConfig::identity(0))?, None));
    }
    let bare = evaluate_links(
        cfg,
        &ls.without_ris(),
        &cs.without_ris(),
        &RisConfig::identity(0),
    )?;
    let v = ris_align_uav(
        cs.h_ris.view(),
        cs.h_ris_user.column(0),
        cs.h_direct.column(0),
    );
    let with = evaluate_links(cfg, ls, cs, &v)?;
    let gain = ris_gain_db(with.sinr[0], bare.sinr[0]);
    Ok((with, gain))
}

/// One end-to-end realization: placement, channels, RIS alignment, CB,
/// PPA and SINR. Degenerate geometries are redrawn on a fresh stream.
pub fn run_trial(cfg: &SimConfig, trial_index: u64) -> Result<TrialResult> {
    for attempt in 0..MAX_REDRAWS {
        let mut rng = trial_rng(cfg.master_seed, trial_index, attempt);
        let layout = place_nodes(cfg, &mut rng);
        let ls = large_scale(&layout, cfg);
        let cs = draw_channels(&ls, &mut rng);
        match evaluate_trial(cfg, &ls, &cs) {
            Ok((metrics, ris_gain_db)) => {
                return Ok(TrialResult {
                    trial_index,
                    rates_bps: metrics.rate_bps,
                    sinr: metrics.sinr,
                    ris_gain_db,
                    redraws: attempt,
                })
            }
            Err(Error::Degenerate(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Degenerate(format!(
        "trial {trial_index} stayed degenerate after {MAX_REDRAWS} draws"
    )))
}

/// All trials of one scenario, ordered by trial index.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub trials: Vec<TrialResult>,
    /// Total degenerate draws that were discarded.
    pub rejected: u64,
}

impl RunSummary {
    pub fn uav_rates(&self) -> Vec<f64> {
        self.trials.iter().map(TrialResult::uav_rate_bps).collect()
    }

    pub fn gue_rates(&self) -> Vec<f64> {
        self.trials.iter().map(TrialResult::gue_rate_bps).collect()
    }

    pub fn ris_gains_db(&self) -> Vec<f64> {
        self.trials.iter().filter_map(|t| t.ris_gain_db).collect()
    }
}

/// Worker pool for trial batches. `workers == 0` uses the rayon default.
pub struct Executor {
    pool: rayon::ThreadPool,
}

impl Executor {
    pub fn new(workers: usize) -> Result<Self> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()?;
        Ok(Executor { pool })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }

    pub fn run(&self, cfg: &SimConfig) -> Result<RunSummary> {
        cfg.validate()?;
        let trials = self.pool.install(|| {
            (0..cfg.trials as u64)
                .into_par_iter()
                .map(|i| run_trial(cfg, i))
                .collect::<Result<Vec<_>>>()
        })?;
        let rejected = trials.iter().map(|t| t.redraws as u64).sum();
        Ok(RunSummary { trials, rejected })
    }
}

/// Nearest-rank 5th percentile: the `ceil(0.05 n)`-th smallest sample.
pub fn likely_rate_95(samples: &[f64]) -> Result<f64> {
    if samples.len() < MIN_PERCENTILE_SAMPLES {
        return Err(Error::TooFewSamples {
            needed: MIN_PERCENTILE_SAMPLES,
            got: samples.len(),
        });
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = (sorted.len() * 5).div_ceil(100);
    Ok(sorted[rank - 1])
}

/// Sample median (mean of the two middle values for even counts).
pub fn median(samples: &[f64]) -> Option<f64> {
    if samples.is_empty() {
        return None;
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    Some(if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    })
}

/// Empirical CDF as sorted `(value, i / n)` pairs.
pub fn empirical_cdf(samples: &[f64]) -> Vec<(f64, f64)> {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, (i + 1) as f64 / n))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    RateRegion,
    Cdf,
    RisGain,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentKind::RateRegion => "rate-region",
            ExperimentKind::Cdf => "cdf",
            ExperimentKind::RisGain => "ris-gain",
        })
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rate-region" => Ok(ExperimentKind::RateRegion),
            "cdf" => Ok(ExperimentKind::Cdf),
            "ris-gain" => Ok(ExperimentKind::RisGain),
            other => Err(Error::validation(
                "experiment",
                format!("expected rate-region, cdf or ris-gain, got `{other}`"),
            )),
        }
    }
}

/// Which network a rate-region point describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum System {
    NoRis,
    Ris(usize),
    /// GUEs only, full budget, no RIS.
    NoUav,
}

impl System {
    /// Scenario configuration for this system at power split `kappa`.
    pub fn configure(&self, base: &SimConfig, kappa: f64) -> SimConfig {
        let mut cfg = base.clone();
        match *self {
            System::NoRis => {
                cfg.n_ris = 0;
                cfg.kappa = kappa;
            }
            System::Ris(n) => {
                cfg.n_ris = n;
                cfg.kappa = kappa;
            }
            System::NoUav => {
                // A zero-power UAV stream neither receives nor interferes.
                cfg.n_ris = 0;
                cfg.kappa = 0.0;
            }
        }
        cfg
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            System::NoRis => f.write_str("no-ris"),
            System::Ris(n) => write!(f, "ris-n{n}"),
            System::NoUav => f.write_str("no-uav"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateRegionRow {
    pub system: System,
    pub kappa: f64,
    /// 95%-likely rate of GUE `k = 1`, bits/s.
    pub gue_rate_bps: f64,
    /// 95%-likely rate of the UAV, bits/s.
    pub uav_rate_bps: f64,
    pub rejected: u64,
}

/// 95%-likely GUE and UAV rates over the power split, for the network
/// without RIS, with each RIS size in `n_list`, and the GUE-only baseline
/// (one row, `kappa = 0`).
pub fn rate_region(
    base: &SimConfig,
    kappas: &[f64],
    n_list: &[usize],
    exec: &Executor,
) -> Result<Vec<RateRegionRow>> {
    if kappas.is_empty() {
        return Err(Error::validation("kappa", "sweep list is empty"));
    }
    let systems: Vec<System> = std::iter::once(System::NoRis)
        .chain(n_list.iter().map(|&n| System::Ris(n)))
        .collect();
    let mut rows = Vec::new();
    for system in systems {
        for &kappa in kappas {
            rows.push(region_point(base, system, kappa, exec)?);
        }
    }
    rows.push(region_point(base, System::NoUav, 0.0, exec)?);
    Ok(rows)
}

fn region_point(
    base: &SimConfig,
    system: System,
    kappa: f64,
    exec: &Executor,
) -> Result<RateRegionRow> {
    let cfg = system.configure(base, kappa);
    let run = exec.run(&cfg)?;
    Ok(RateRegionRow {
        system,
        kappa: cfg.kappa,
        gue_rate_bps: likely_rate_95(&run.gue_rates())?,
        uav_rate_bps: likely_rate_95(&run.uav_rates())?,
        rejected: run.rejected,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CdfScenario {
    pub name: String,
    pub kappa: f64,
    pub tilt_deg: f64,
    pub n_ris: usize,
}

impl CdfScenario {
    /// The operator setting (`base` split and tilt, no RIS), the same with
    /// the RIS added, and an up-tilted network that favors the UAV
    /// (`kappa = 0.33`, tilt -5 degrees).
    pub fn standard_set(base: &SimConfig, n_ris: Option<usize>) -> Vec<CdfScenario> {
        let mut set = vec![
            CdfScenario {
                name: "baseline".into(),
                kappa: base.kappa,
                tilt_deg: base.tilt_deg,
                n_ris: 0,
            },
            CdfScenario {
                name: "uptilt".into(),
                kappa: 0.33,
                tilt_deg: -5.0,
                n_ris: 0,
            },
        ];
        if let Some(n) = n_ris {
            set.push(CdfScenario {
                name: "ris".into(),
                kappa: base.kappa,
                tilt_deg: base.tilt_deg,
                n_ris: n,
            });
        }
        set
    }

    fn configure(&self, base: &SimConfig) -> SimConfig {
        SimConfig {
            kappa: self.kappa,
            tilt_deg: self.tilt_deg,
            n_ris: self.n_ris,
            ..base.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CdfTable {
    pub scenario: CdfScenario,
    /// `(rate_bps, probability)` for the UAV.
    pub uav: Vec<(f64, f64)>,
    /// `(rate_bps, probability)` for GUE `k = 1`.
    pub gue: Vec<(f64, f64)>,
    pub rejected: u64,
}

impl CdfTable {
    pub fn uav_median(&self) -> Option<f64> {
        median(&self.uav.iter().map(|p| p.0).collect::<Vec<_>>())
    }

    pub fn gue_median(&self) -> Option<f64> {
        median(&self.gue.iter().map(|p| p.0).collect::<Vec<_>>())
    }
}

pub fn rate_cdf(
    base: &SimConfig,
    scenarios: &[CdfScenario],
    exec: &Executor,
) -> Result<Vec<CdfTable>> {
    scenarios
        .iter()
        .map(|s| {
            let run = exec.run(&s.configure(base))?;
            Ok(CdfTable {
                scenario: s.clone(),
                uav: empirical_cdf(&run.uav_rates()),
                gue: empirical_cdf(&run.gue_rates()),
                rejected: run.rejected,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RisGainRow {
    pub n_ris: usize,
    pub uav_height: f64,
    /// Mean over trials of the paired UAV SINR ratio, dB.
    pub mean_gain_db: f64,
    pub samples: usize,
    pub rejected: u64,
}

/// Mean paired RIS gain at the UAV for every `(N, H_0)` combination,
/// heights outermost.
pub fn ris_gain_sweep(
    base: &SimConfig,
    n_list: &[usize],
    heights: &[f64],
    exec: &Executor,
) -> Result<Vec<RisGainRow>> {
    if n_list.is_empty() || n_list.contains(&0) {
        return Err(Error::validation(
            "n_ris",
            "need at least one non-zero RIS size",
        ));
    }
    if heights.is_empty() {
        return Err(Error::validation("h_uav", "sweep list is empty"));
    }
    if base.kappa == 0.0 {
        return Err(Error::validation(
            "kappa",
            "the UAV needs power for a gain to exist",
        ));
    }
    let mut rows = Vec::new();
    for &h in heights {
        for &n in n_list {
            let cfg = SimConfig {
                n_ris: n,
                h_uav: h,
                ..base.clone()
            };
            let run = exec.run(&cfg)?;
            let gains = run.ris_gains_db();
            if gains.is_empty() {
                return Err(Error::Degenerate(format!(
                    "no finite RIS gain at N={n}, H={h}"
                )));
            }
            rows.push(RisGainRow {
                n_ris: n,
                uav_height: h,
                mean_gain_db: gains.iter().sum::<f64>() / gains.len() as f64,
                samples: gains.len(),
                rejected: run.rejected,
            });
        }
    }
    Ok(rows)
}
