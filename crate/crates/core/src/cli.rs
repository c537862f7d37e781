//! Configuration loading, experiment dispatch and result files.
//!
//! Configuration text is flat UTF-8 `key = value` lines; `#` starts a
//! comment. Values resolve as built-in defaults, then the file, then
//! command-line overrides.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::config::SimConfig;
use crate::error::{Error, Result};
use crate::experiments::{
    rate_cdf, rate_region, ris_gain_sweep, CdfScenario, CdfTable, Executor, ExperimentKind,
    RateRegionRow, RisGainRow,
};

pub const DEFAULT_KAPPAS: [f64; 4] = [0.02, 0.05, 0.1, 0.15];
pub const DEFAULT_REGION_RIS: [usize; 2] = [15, 30];
pub const DEFAULT_GAIN_RIS: [usize; 5] = [20, 30, 40, 50, 60];
pub const DEFAULT_HEIGHTS: [f64; 3] = [16.0, 100.0, 300.0];

/// Command-line values layered over the configuration file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub experiment: Option<ExperimentKind>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub kappa: Option<Vec<f64>>,
    pub n_ris: Option<Vec<usize>>,
    pub uav_height: Option<Vec<f64>>,
    pub tilt_deg: Option<f64>,
    pub no_ris: bool,
}

/// A fully resolved experiment.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    pub base: SimConfig,
    pub kappas: Vec<f64>,
    pub n_list: Vec<usize>,
    pub heights: Vec<f64>,
}

impl ExperimentSpec {
    /// Defaults for `kind` on the reference scenario.
    pub fn new(kind: ExperimentKind, base: SimConfig) -> Self {
        let (kappas, n_list, heights) = match kind {
            ExperimentKind::RateRegion => (
                DEFAULT_KAPPAS.to_vec(),
                DEFAULT_REGION_RIS.to_vec(),
                vec![base.h_uav],
            ),
            ExperimentKind::Cdf => (vec![base.kappa], vec![base.n_ris], vec![base.h_uav]),
            ExperimentKind::RisGain => (
                vec![base.kappa],
                DEFAULT_GAIN_RIS.to_vec(),
                DEFAULT_HEIGHTS.to_vec(),
            ),
        };
        ExperimentSpec {
            kind,
            base,
            kappas,
            n_list,
            heights,
        }
    }

    pub fn cdf_scenarios(&self) -> Vec<CdfScenario> {
        CdfScenario::standard_set(&self.base, self.n_list.iter().copied().find(|&n| n > 0))
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        for &k in &self.kappas {
            if !(0.0..=1.0).contains(&k) {
                return Err(Error::validation(
                    "kappa",
                    format!("must lie in [0, 1], got {k}"),
                ));
            }
        }
        for &h in &self.heights {
            if !(h.is_finite() && h >= 0.0) {
                return Err(Error::validation(
                    "h_uav",
                    format!("height must be >= 0, got {h}"),
                ));
            }
        }
        match self.kind {
            ExperimentKind::RateRegion if self.kappas.is_empty() => {
                Err(Error::validation("kappa", "sweep list is empty"))
            }
            ExperimentKind::RisGain if self.n_list.iter().all(|&n| n == 0) => Err(
                Error::validation("n_ris", "ris-gain needs at least one non-zero RIS size"),
            ),
            ExperimentKind::RisGain if self.heights.is_empty() => {
                Err(Error::validation("h_uav", "sweep list is empty"))
            }
            _ => Ok(()),
        }
    }
}

/// Raw `key -> (line, value)` pairs of a configuration document.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, (usize, String)>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected `key = value`, got `{content}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(Error::Parse {
                line,
                msg: "empty key or value".into(),
            });
        }
        if out
            .insert(key.to_string(), (line, value.to_string()))
            .is_some()
        {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate key `{key}`"),
            });
        }
    }
    Ok(out)
}

fn parse_value<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("cannot parse `{value}` for `{key}`"),
    })
}

fn parse_list<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(|v| parse_value(line, key, v.trim()))
        .collect()
}

#[derive(Default)]
struct FileSweeps {
    experiment: Option<ExperimentKind>,
    kappas: Option<Vec<f64>>,
    n_list: Option<Vec<usize>>,
    heights: Option<Vec<f64>>,
}

fn apply_file(
    cfg: &mut SimConfig,
    entries: &BTreeMap<String, (usize, String)>,
) -> Result<FileSweeps> {
    let mut sweeps = FileSweeps::default();
    for (key, (line, value)) in entries {
        let (line, v) = (*line, value.as_str());
        match key.as_str() {
            "num_aps" | "M" => cfg.num_aps = parse_value(line, key, v)?,
            "num_gues" | "U" => cfg.num_gues = parse_value(line, key, v)?,
            "n_ris" | "N" => cfg.n_ris = parse_value(line, key, v)?,
            "area_side" | "D" => cfg.area_side = parse_value(line, key, v)?,
            "h_ap" => cfg.h_ap = parse_value(line, key, v)?,
            "h_ris" => cfg.h_ris = parse_value(line, key, v)?,
            "h_gue" => cfg.h_gue = parse_value(line, key, v)?,
            "h_uav" => cfg.h_uav = parse_value(line, key, v)?,
            "ris_x" => cfg.ris_x = parse_value(line, key, v)?,
            "carrier_freq_hz" => cfg.carrier_freq_hz = parse_value(line, key, v)?,
            "bandwidth_hz" => cfg.bandwidth_hz = parse_value(line, key, v)?,
            "noise_power_dbm" => cfg.noise_power_dbm = parse_value(line, key, v)?,
            "p_d" => cfg.p_d = parse_value(line, key, v)?,
            "kappa" => cfg.kappa = parse_value(line, key, v)?,
            "tilt_deg" => cfg.tilt_deg = parse_value(line, key, v)?,
            "rho_db" => cfg.rho_db = parse_value(line, key, v)?,
            "alpha" => cfg.alpha = parse_value(line, key, v)?,
            "antenna_beamwidth_deg" => cfg.antenna_beamwidth_deg = parse_value(line, key, v)?,
            "antenna_sidelobe_db" => cfg.antenna_sidelobe_db = parse_value(line, key, v)?,
            "ris_element_gain_db" => cfg.ris_element_gain_db = parse_value(line, key, v)?,
            "master_seed" | "seed" => cfg.master_seed = parse_value(line, key, v)?,
            "trials" => cfg.trials = parse_value(line, key, v)?,
            "experiment" => sweeps.experiment = Some(parse_value(line, key, v)?),
            "kappa_sweep" => sweeps.kappas = Some(parse_list(line, key, v)?),
            "n_ris_sweep" => sweeps.n_list = Some(parse_list(line, key, v)?),
            "height_sweep" => sweeps.heights = Some(parse_list(line, key, v)?),
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown key `{other}`"),
                })
            }
        }
    }
    Ok(sweeps)
}

/// Resolves an experiment from optional configuration text and overrides.
pub fn resolve(text: Option<&str>, overrides: &Overrides) -> Result<ExperimentSpec> {
    let mut cfg = SimConfig::default();
    let explicit_ris_x = text
        .map(parse_config_text)
        .transpose()?
        .map(|entries| -> Result<_> {
            let sweeps = apply_file(&mut cfg, &entries)?;
            Ok((sweeps, entries.contains_key("ris_x")))
        })
        .transpose()?;
    let (file, has_ris_x) = explicit_ris_x.unwrap_or_default();
    if !has_ris_x {
        cfg.ris_x = cfg.area_side / 2.0;
    }

    if let Some(seed) = overrides.seed {
        cfg.master_seed = seed;
    }
    if let Some(trials) = overrides.trials {
        cfg.trials = trials;
    }
    if let Some(tilt) = overrides.tilt_deg {
        cfg.tilt_deg = tilt;
    }
    let kappas = overrides.kappa.clone().or(file.kappas);
    if let Some(&k) = overrides.kappa.as_ref().and_then(|l| l.first()) {
        cfg.kappa = k;
    }
    let n_list = overrides.n_ris.clone().or(file.n_list);
    if let Some(&n) = overrides.n_ris.as_ref().and_then(|l| l.first()) {
        cfg.n_ris = n;
    }
    let heights = overrides.uav_height.clone().or(file.heights);
    if let Some(&h) = overrides.uav_height.as_ref().and_then(|l| l.first()) {
        cfg.h_uav = h;
    }

    let kind = overrides
        .experiment
        .or(file.experiment)
        .unwrap_or(ExperimentKind::RateRegion);
    let mut spec = ExperimentSpec::new(kind, cfg);
    if let Some(k) = kappas {
        spec.kappas = k;
    }
    if let Some(n) = n_list {
        spec.n_list = n;
    }
    if let Some(h) = heights {
        spec.heights = h;
    }
    if overrides.no_ris {
        spec.base.n_ris = 0;
        spec.n_list.clear();
    }
    if kind == ExperimentKind::Cdf {
        spec.n_list.retain(|&n| n > 0);
    }
    spec.validate()?;
    Ok(spec)
}

/// Reads `path` (if any) and resolves the experiment.
pub fn load_config(path: Option<&Path>, overrides: &Overrides) -> Result<ExperimentSpec> {
    let text = path.map(fs::read_to_string).transpose()?;
    resolve(text.as_deref(), overrides)
}

/// Everything needed to reproduce a run.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub experiment: ExperimentKind,
    pub config: SimConfig,
    pub kappas: Vec<f64>,
    pub n_list: Vec<usize>,
    pub heights: Vec<f64>,
    pub master_seed: u64,
    pub trials: usize,
    pub workers: usize,
    pub rejected_draws: u64,
    pub results_file: String,
    pub duration_s: f64,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub results_path: PathBuf,
    pub manifest_path: PathBuf,
    pub rejected_draws: u64,
}

fn mbps(bps: f64) -> f64 {
    bps / 1e6
}

pub fn rate_region_csv(rows: &[RateRegionRow]) -> String {
    let mut s = String::from("system,kappa,gue_rate_mbps,uav_rate_mbps\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            r.system,
            r.kappa,
            mbps(r.gue_rate_bps),
            mbps(r.uav_rate_bps)
        );
    }
    s
}

pub fn cdf_csv(tables: &[CdfTable]) -> String {
    let mut s = String::from("scenario,kappa,tilt_deg,n_ris,user,rate_mbps,probability\n");
    for t in tables {
        let sc = &t.scenario;
        for (user, points) in [("uav", &t.uav), ("gue1", &t.gue)] {
            for (rate, p) in points {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    sc.name,
                    sc.kappa,
                    sc.tilt_deg,
                    sc.n_ris,
                    user,
                    mbps(*rate),
                    p
                );
            }
        }
    }
    s
}

pub fn ris_gain_csv(rows: &[RisGainRow]) -> String {
    let mut s = String::from("n_ris,uav_height_m,mean_gain_db,samples\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            r.n_ris, r.uav_height, r.mean_gain_db, r.samples
        );
    }
    s
}

/// Runs the experiment and returns its CSV text and discarded-draw count.
pub fn execute(spec: &ExperimentSpec, exec: &Executor) -> Result<(String, u64)> {
    spec.validate()?;
    Ok(match spec.kind {
        ExperimentKind::RateRegion => {
            let rows = rate_region(&spec.base, &spec.kappas, &spec.n_list, exec)?;
            (
                rate_region_csv(&rows),
                rows.iter().map(|r| r.rejected).sum(),
            )
        }
        ExperimentKind::Cdf => {
            let tables = rate_cdf(&spec.base, &spec.cdf_scenarios(), exec)?;
            (cdf_csv(&tables), tables.iter().map(|t| t.rejected).sum())
        }
        ExperimentKind::RisGain => {
            let rows = ris_gain_sweep(&spec.base, &spec.n_list, &spec.heights, exec)?;
            (ris_gain_csv(&rows), rows.iter().map(|r| r.rejected).sum())
        }
    })
}

/// Runs `spec` and writes `<experiment>.csv` plus `manifest.json` into
/// `out_dir`.
pub fn run(spec: &ExperimentSpec, out_dir: &Path, workers: usize) -> Result<RunReport> {
    spec.validate()?;
    fs::create_dir_all(out_dir)?;
    let exec = Executor::new(workers)?;
    let start = Instant::now();
    let (csv, rejected) = execute(spec, &exec)?;
    let results_file = format!("{}.csv", spec.kind);
    let results_path = out_dir.join(&results_file);
    fs::write(&results_path, csv)?;

    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        experiment: spec.kind,
        config: spec.base.clone(),
        kappas: spec.kappas.clone(),
        n_list: spec.n_list.clone(),
        heights: spec.heights.clone(),
        master_seed: spec.base.master_seed,
        trials: spec.base.trials,
        workers: exec.workers(),
        rejected_draws: rejected,
        results_file,
        duration_s: start.elapsed().as_secs_f64(),
    };
    let manifest_path = out_dir.join("manifest.json");
    fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)?;
    Ok(RunReport {
        results_path,
        manifest_path,
        rejected_draws: rejected,
    })
}
