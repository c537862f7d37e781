//! Large-scale and small-scale channel models and the aggregate
//! AP-to-user channel `g = h + H_ris diag(v) h_ris_user`.
//!
//! Direct links follow a Rician law around a unit-modulus LoS phasor
//! `exp(-j 2 pi d / lambda)`. The AP->RIS links are pure LoS with a uniform
//! linear array response. RIS->GUE links are Rician with the array response
//! as LoS part; the RIS->UAV link is taken in its LoS limit.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

use crate::beamforming::RisConfig;
use crate::config::SimConfig;
use crate::error::{Error, Result};
use crate::geometry::{distance, elevation_angle_deg, NetworkLayout};

/// Shortest distance any path-loss law is evaluated at.
pub const MIN_DISTANCE_M: f64 = 1.0;

/// Single-lobe vertical antenna pattern
/// `A(theta) = -min(12 ((theta - tilt) / theta_3dB)^2, A_m)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AntennaPattern {
    pub beamwidth_deg: f64,
    pub max_attenuation_db: f64,
}

impl Default for AntennaPattern {
    fn default() -> Self {
        AntennaPattern {
            beamwidth_deg: 10.0,
            max_attenuation_db: 20.0,
        }
    }
}

impl AntennaPattern {
    pub fn from_config(cfg: &SimConfig) -> Self {
        AntennaPattern {
            beamwidth_deg: cfg.antenna_beamwidth_deg,
            max_attenuation_db: cfg.antenna_sidelobe_db,
        }
    }

    /// Gain in dB (always in `[-A_m, 0]`).
    pub fn gain_db(&self, theta_deg: f64, tilt_deg: f64) -> f64 {
        let off = (theta_deg - tilt_deg) / self.beamwidth_deg;
        -(12.0 * off * off).min(self.max_attenuation_db)
    }
}

/// [`AntennaPattern::gain_db`] with a 10 degree beamwidth and 20 dB floor.
pub fn antenna_gain_db(theta_deg: f64, tilt_deg: f64) -> f64 {
    AntennaPattern::default().gain_db(theta_deg, tilt_deg)
}

/// Three-slope COST-231 Hata loss for AP->GUE links, in dB (positive).
///
/// Slopes of 35, 20 and 0 dB/decade with breakpoints at 50 m and 10 m. The
/// constant uses the carrier in MHz and heights in meters; distances enter in
/// kilometers.
pub fn pathloss_gue_db(d: f64, cfg: &SimConfig) -> f64 {
    const D0_KM: f64 = 0.01;
    const D1_KM: f64 = 0.05;
    let f_mhz = cfg.carrier_freq_hz / 1e6;
    let lf = f_mhz.log10();
    let l = 46.3 + 33.9 * lf - 13.82 * cfg.h_ap.log10() - (1.1 * lf - 0.7) * cfg.h_gue
        + (1.56 * lf - 0.8);
    let d_km = d.max(MIN_DISTANCE_M) / 1000.0;
    if d_km > D1_KM {
        l + 35.0 * d_km.log10()
    } else if d_km > D0_KM {
        l + 15.0 * D1_KM.log10() + 20.0 * d_km.log10()
    } else {
        l + 15.0 * D1_KM.log10() + 20.0 * D0_KM.log10()
    }
}

/// `rho * d^-alpha` as a linear power gain.
pub fn pathloss_simple_linear(d: f64, cfg: &SimConfig) -> f64 {
    10f64.powf(cfg.rho_db / 10.0) * d.max(MIN_DISTANCE_M).powf(-cfg.alpha)
}

/// Distance-dependent Rician factor, `13 - 0.03 d` dB converted to linear.
pub fn rician_k_linear(d: f64) -> f64 {
    10f64.powf((13.0 - 0.03 * d) / 10.0)
}

/// LoS and scattered amplitude weights `(sqrt(K/(K+1)), sqrt(1/(K+1)))`.
/// An infinite factor is the pure LoS limit.
pub fn rician_weights(k: f64) -> (f64, f64) {
    if k.is_infinite() {
        (1.0, 0.0)
    } else {
        ((k / (k + 1.0)).sqrt(), (1.0 / (k + 1.0)).sqrt())
    }
}

/// Response of a half-wavelength ULA laid along the x axis.
///
/// Element `n`: `exp(-j 2 pi d_ref / lambda) * exp(-j pi n cos(phi))`, where
/// `cos(phi)` is the x component of the unit `direction` towards the far
/// node.
pub fn array_response(
    n_elems: usize,
    direction: [f64; 3],
    d_ref: f64,
    wavelength: f64,
) -> Array1<Complex64> {
    let reference = Complex64::from_polar(1.0, -2.0 * PI * d_ref / wavelength);
    let cos_phi = direction[0];
    Array1::from_shape_fn(n_elems, |n| {
        reference * Complex64::from_polar(1.0, -PI * n as f64 * cos_phi)
    })
}

/// Unit-modulus LoS phasor over distance `d`.
pub fn los_phase(d: f64, wavelength: f64) -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * PI * d / wavelength)
}

/// Everything about the channels that does not change with small-scale
/// fading. Column `k = 0` is the UAV throughout.
#[derive(Clone, Debug)]
pub struct LargeScaleParams {
    /// `beta_{m,k}`, linear amplitude (M x K).
    pub beta_direct: Array2<f64>,
    /// `K_{m,k}`, linear (M x K).
    pub rician_direct: Array2<f64>,
    /// LoS phasors of the direct links (M x K).
    pub los_direct: Array2<Complex64>,
    /// Deterministic AP->RIS channels, one row per AP (M x N).
    pub h_ris: Array2<Complex64>,
    /// `beta_{ris,k}` (K).
    pub beta_ris_user: Array1<f64>,
    /// `K_{ris,k}`; infinite for the UAV (K).
    pub rician_ris_user: Array1<f64>,
    /// Array responses towards each user (N x K).
    pub los_ris_user: Array2<Complex64>,
}

impl LargeScaleParams {
    pub fn num_aps(&self) -> usize {
        self.beta_direct.nrows()
    }

    pub fn num_users(&self) -> usize {
        self.beta_direct.ncols()
    }

    pub fn n_ris(&self) -> usize {
        self.h_ris.ncols()
    }

    /// Same parameters with the RIS removed.
    pub fn without_ris(&self) -> LargeScaleParams {
        let m = self.num_aps();
        let k = self.num_users();
        LargeScaleParams {
            h_ris: Array2::zeros((m, 0)),
            los_ris_user: Array2::zeros((0, k)),
            ..self.clone()
        }
    }
}

pub fn large_scale(layout: &NetworkLayout, cfg: &SimConfig) -> LargeScaleParams {
    let pattern = AntennaPattern::from_config(cfg);
    let lambda = cfg.wavelength();
    let m_aps = layout.num_aps();
    let k_users = layout.num_users();
    let n = cfg.n_ris;

    let mut beta_direct = Array2::zeros((m_aps, k_users));
    let mut rician_direct = Array2::zeros((m_aps, k_users));
    let mut los_direct = Array2::zeros((m_aps, k_users));
    for (m, ap) in layout.ap_pos.iter().enumerate() {
        for (k, user) in layout.users().enumerate() {
            let d = distance(ap, &user).max(MIN_DISTANCE_M);
            let gain =
                10f64.powf(pattern.gain_db(elevation_angle_deg(ap, &user), cfg.tilt_deg) / 10.0);
            let xi = if k == 0 {
                pathloss_simple_linear(d, cfg)
            } else {
                10f64.powf(-pathloss_gue_db(d, cfg) / 10.0)
            };
            beta_direct[[m, k]] = (gain * xi).sqrt();
            rician_direct[[m, k]] = rician_k_linear(d);
            los_direct[[m, k]] = los_phase(d, lambda);
        }
    }

    let element_gain = 10f64.powf(cfg.ris_element_gain_db / 10.0);
    let ris = layout.ris_pos;
    let mut h_ris = Array2::zeros((m_aps, n));
    for (m, ap) in layout.ap_pos.iter().enumerate() {
        let d = distance(ap, &ris).max(MIN_DISTANCE_M);
        let gain = 10f64.powf(pattern.gain_db(elevation_angle_deg(ap, &ris), cfg.tilt_deg) / 10.0);
        let amp = (gain * pathloss_simple_linear(d, cfg) * element_gain).sqrt();
        let resp = array_response(n, ris.direction_to(ap), d, lambda);
        h_ris.row_mut(m).assign(&resp.mapv(|c| c * amp));
    }

    let mut beta_ris_user = Array1::zeros(k_users);
    let mut rician_ris_user = Array1::zeros(k_users);
    let mut los_ris_user = Array2::zeros((n, k_users));
    for (k, user) in layout.users().enumerate() {
        let d = distance(&ris, &user).max(MIN_DISTANCE_M);
        beta_ris_user[k] = pathloss_simple_linear(d, cfg).sqrt();
        rician_ris_user[k] = if k == 0 {
            f64::INFINITY
        } else {
            rician_k_linear(d)
        };
        los_ris_user
            .column_mut(k)
            .assign(&array_response(n, ris.direction_to(&user), d, lambda));
    }

    LargeScaleParams {
        beta_direct,
        rician_direct,
        los_direct,
        h_ris,
        beta_ris_user,
        rician_ris_user,
        los_ris_user,
    }
}

/// One realization of every channel in the network.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelSet {
    /// `h_{m,k}` (M x K).
    pub h_direct: Array2<Complex64>,
    /// AP->RIS channels (M x N).
    pub h_ris: Array2<Complex64>,
    /// RIS->user channels, one column per user (N x K).
    pub h_ris_user: Array2<Complex64>,
}

impl ChannelSet {
    pub fn without_ris(&self) -> ChannelSet {
        ChannelSet {
            h_direct: self.h_direct.clone(),
            h_ris: Array2::zeros((self.h_direct.nrows(), 0)),
            h_ris_user: Array2::zeros((0, self.h_direct.ncols())),
        }
    }
}

/// `CN(0, 1)` sample.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Draws small-scale fading around `ls`.
///
/// The direct links are drawn first (row-major), so for a given stream they
/// do not depend on the RIS size.
pub fn draw_channels<R: Rng + ?Sized>(ls: &LargeScaleParams, rng: &mut R) -> ChannelSet {
    let (m_aps, k_users) = ls.beta_direct.dim();
    let n = ls.n_ris();
    let mut h_direct = Array2::zeros((m_aps, k_users));
    for m in 0..m_aps {
        for k in 0..k_users {
            let (w_los, w_nlos) = rician_weights(ls.rician_direct[[m, k]]);
            let scattered = complex_normal(rng);
            h_direct[[m, k]] =
                (ls.los_direct[[m, k]] * w_los + scattered * w_nlos) * ls.beta_direct[[m, k]];
        }
    }
    let mut h_ris_user = Array2::zeros((n, k_users));
    for k in 0..k_users {
        let (w_los, w_nlos) = rician_weights(ls.rician_ris_user[k]);
        let beta = ls.beta_ris_user[k];
        for i in 0..n {
            let los = ls.los_ris_user[[i, k]] * w_los;
            h_ris_user[[i, k]] = if w_nlos == 0.0 {
                los * beta
            } else {
                (los + complex_normal(rng) * w_nlos) * beta
            };
        }
    }
    ChannelSet {
        h_direct,
        h_ris: ls.h_ris.clone(),
        h_ris_user,
    }
}

/// `G[m,k] = h[m,k] + sum_n H_ris[m,n] v_n h_ris_user[n,k]`.
pub fn aggregate_channel(cs: &ChannelSet, ris: &RisConfig) -> Result<Array2<Complex64>> {
    let (m_aps, k_users) = cs.h_direct.dim();
    let n = ris.len();
    if cs.h_ris.dim() != (m_aps, n) || cs.h_ris_user.dim() != (n, k_users) {
        return Err(Error::Dimension(format!(
            "h_direct {:?}, h_ris {:?}, h_ris_user {:?}, v {}",
            cs.h_direct.dim(),
            cs.h_ris.dim(),
            cs.h_ris_user.dim(),
            n
        )));
    }
    if n == 0 {
        return Ok(cs.h_direct.clone());
    }
    let mut reflected = cs.h_ris_user.clone();
    for (mut row, v) in reflected.rows_mut().into_iter().zip(ris.v().iter()) {
        row.mapv_inplace(|c| c * v);
    }
    Ok(&cs.h_direct + &cs.h_ris.dot(&reflected))
}
