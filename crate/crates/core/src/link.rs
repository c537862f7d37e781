//! Per-realization SINR, achievable rate and the RIS gain metric.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkMetrics {
    /// Linear SINR per user, UAV first.
    pub sinr: Vec<f64>,
    /// Achievable rate per user, bits/s.
    pub rate_bps: Vec<f64>,
}

impl LinkMetrics {
    pub fn new(sinr: Vec<f64>, bandwidth_hz: f64) -> Self {
        let rate_bps = sinr.iter().map(|&s| rate_bps(s, bandwidth_hz)).collect();
        LinkMetrics { sinr, rate_bps }
    }
}

/// Downlink SINR of every user for precoders `w` and power coefficients `eta`.
///
/// User `k` sees `|sum_m sqrt(eta[m,k]) g[m,k] w[m,k]|^2` as signal and the
/// same coherent sums for every other stream as interference, plus noise.
pub fn sinr_all(
    g: &Array2<Complex64>,
    w: &Array2<Complex64>,
    eta: &Array2<f64>,
    noise_power: f64,
) -> Result<Vec<f64>> {
    if g.dim() != w.dim() || g.dim() != eta.dim() {
        return Err(Error::Dimension(format!(
            "G {:?}, W {:?}, eta {:?}",
            g.dim(),
            w.dim(),
            eta.dim()
        )));
    }
    let scaled_w = {
        let mut s = w.clone();
        s.zip_mut_with(eta, |x, &e| *x *= e.sqrt());
        s
    };
    // cross[k, k'] = sum_m g[m,k] sqrt(eta[m,k']) w[m,k']
    let cross = g.t().dot(&scaled_w);
    let k_users = g.ncols();
    Ok((0..k_users)
        .map(|k| {
            let row = cross.row(k);
            let signal = row[k].norm_sqr();
            let total: f64 = row.iter().map(|c| c.norm_sqr()).sum();
            signal / ((total - signal).max(0.0) + noise_power)
        })
        .collect())
}

/// `B log2(1 + sinr)`.
pub fn rate_bps(sinr: f64, bandwidth_hz: f64) -> f64 {
    bandwidth_hz * sinr.ln_1p() / std::f64::consts::LN_2
}

/// `10 log10(with / without)`; `None` when the comparator SINR is zero.
pub fn ris_gain_db(sinr_with: f64, sinr_without: f64) -> Option<f64> {
    if sinr_without > 0.0 && sinr_with >= 0.0 {
        Some(10.0 * (sinr_with / sinr_without).log10())
    } else {
        None
    }
}
