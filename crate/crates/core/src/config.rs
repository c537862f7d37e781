//! Scenario parameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light used for the carrier wavelength, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Every knob of one simulated scenario.
///
/// Defaults reproduce the reference deployment: 20 APs and 4 GUEs in a
/// 40 m x 40 m square, a UAV at 100 m, 1.9 GHz / 20 MHz, -62 dBm noise,
/// 1 W per AP and a 15 degree electrical down-tilt.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Number of single-antenna APs (M).
    pub num_aps: usize,
    /// Number of ground users (U).
    pub num_gues: usize,
    /// RIS elements (N); zero disables the surface.
    pub n_ris: usize,
    /// Side of the square deployment area, meters (D).
    pub area_side: f64,
    pub h_ap: f64,
    pub h_ris: f64,
    pub h_gue: f64,
    pub h_uav: f64,
    /// RIS position along the `y = 0` edge, meters.
    pub ris_x: f64,
    pub carrier_freq_hz: f64,
    pub bandwidth_hz: f64,
    pub noise_power_dbm: f64,
    /// Per-AP average transmit power budget, watts.
    pub p_d: f64,
    /// Fraction of each AP's budget spent on the UAV.
    pub kappa: f64,
    /// AP antenna down-tilt, degrees; negative values tilt upwards.
    pub tilt_deg: f64,
    /// Path gain at 1 m for the power-law links, dB.
    pub rho_db: f64,
    /// Path-loss exponent of the power-law links.
    pub alpha: f64,
    /// Vertical half-power beamwidth of the AP antenna, degrees.
    pub antenna_beamwidth_deg: f64,
    /// Side-lobe floor of the AP antenna pattern, dB of attenuation.
    pub antenna_sidelobe_db: f64,
    /// Per-element aperture gain of the RIS, applied to every AP->RIS leg, dB.
    pub ris_element_gain_db: f64,
    pub master_seed: u64,
    pub trials: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            num_aps: 20,
            num_gues: 4,
            n_ris: 20,
            area_side: 40.0,
            h_ap: 15.0,
            h_ris: 12.0,
            h_gue: 1.65,
            h_uav: 100.0,
            ris_x: 20.0,
            carrier_freq_hz: 1.9e9,
            bandwidth_hz: 20e6,
            noise_power_dbm: -62.0,
            p_d: 1.0,
            kappa: 0.1,
            tilt_deg: 15.0,
            rho_db: -30.0,
            alpha: 2.4,
            antenna_beamwidth_deg: 10.0,
            antenna_sidelobe_db: 20.0,
            ris_element_gain_db: 0.0,
            master_seed: 1,
            trials: 2000,
        }
    }
}

impl SimConfig {
    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_freq_hz
    }

    /// Noise power in watts.
    pub fn noise_power_w(&self) -> f64 {
        10f64.powf((self.noise_power_dbm - 30.0) / 10.0)
    }

    /// `U + 1`.
    pub fn num_users(&self) -> usize {
        self.num_gues + 1
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(key: &str, v: f64) -> Result<()> {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::validation(
                    key,
                    format!("must be positive and finite, got {v}"),
                ))
            }
        }
        fn finite(key: &str, v: f64) -> Result<()> {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::validation(key, "must be finite"))
            }
        }
        if self.num_aps == 0 {
            return Err(Error::validation("num_aps", "need at least one AP"));
        }
        if self.num_gues == 0 {
            return Err(Error::validation("num_gues", "need at least one GUE"));
        }
        positive("area_side", self.area_side)?;
        for (key, h) in [
            ("h_ap", self.h_ap),
            ("h_ris", self.h_ris),
            ("h_gue", self.h_gue),
            ("h_uav", self.h_uav),
        ] {
            finite(key, h)?;
            if h < 0.0 {
                return Err(Error::validation(
                    key,
                    format!("height must be >= 0, got {h}"),
                ));
            }
        }
        finite("ris_x", self.ris_x)?;
        if !(0.0..=self.area_side).contains(&self.ris_x) {
            return Err(Error::validation(
                "ris_x",
                format!("must lie in [0, {}], got {}", self.area_side, self.ris_x),
            ));
        }
        positive("carrier_freq_hz", self.carrier_freq_hz)?;
        positive("bandwidth_hz", self.bandwidth_hz)?;
        finite("noise_power_dbm", self.noise_power_dbm)?;
        positive("p_d", self.p_d)?;
        if !(0.0..=1.0).contains(&self.kappa) {
            return Err(Error::validation(
                "kappa",
                format!("must lie in [0, 1], got {}", self.kappa),
            ));
        }
        finite("tilt_deg", self.tilt_deg)?;
        finite("rho_db", self.rho_db)?;
        positive("alpha", self.alpha)?;
        positive("antenna_beamwidth_deg", self.antenna_beamwidth_deg)?;
        finite("antenna_sidelobe_db", self.antenna_sidelobe_db)?;
        if self.antenna_sidelobe_db < 0.0 {
            return Err(Error::validation("antenna_sidelobe_db", "must be >= 0"));
        }
        finite("ris_element_gain_db", self.ris_element_gain_db)?;
        if self.trials == 0 {
            return Err(Error::validation("trials", "need at least one trial"));
        }
        Ok(())
    }
}
