//! Conjugate beamforming at the APs, RIS phase alignment toward the UAV,
//! the analytic precoder second moments and proportional power allocation.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};
use num_complex::Complex64;

use crate::channel::{rician_weights, LargeScaleParams};
use crate::error::{Error, Result};

/// RIS reflection vector `v`, one unit-modulus coefficient per element.
#[derive(Clone, Debug, PartialEq)]
pub struct RisConfig {
    v: Array1<Complex64>,
}

impl RisConfig {
    /// All phases zero.
    pub fn identity(n: usize) -> Self {
        RisConfig {
            v: Array1::from_elem(n, Complex64::new(1.0, 0.0)),
        }
    }

    pub fn from_phases(phases: &[f64]) -> Self {
        RisConfig {
            v: phases
                .iter()
                .map(|&p| Complex64::from_polar(1.0, p))
                .collect(),
        }
    }

    /// Projects each coefficient onto the unit circle.
    pub fn from_coefficients(v: Array1<Complex64>) -> Self {
        RisConfig {
            v: v.mapv(|c| Complex64::from_polar(1.0, c.arg())),
        }
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn v(&self) -> &Array1<Complex64> {
        &self.v
    }

    pub fn phases(&self) -> Vec<f64> {
        self.v.iter().map(|c| c.arg()).collect()
    }
}

/// `R = H_ris diag(h_ris_uav)`, so that `g_0 = h_0 + R v`.
pub fn cascade_matrix(
    h_ris: ArrayView2<Complex64>,
    h_ris_uav: ArrayView1<Complex64>,
) -> Array2<Complex64> {
    let mut r = h_ris.to_owned();
    for mut row in r.rows_mut() {
        row.zip_mut_with(&h_ris_uav, |a, b| *a *= b);
    }
    r
}

/// Co-phases the reflected paths with the direct AP->UAV channels:
/// `v_n = exp(-j arg([R^T conj(h_0)]_n))`. A zero coefficient gets phase 0.
pub fn ris_align_uav(
    h_ris: ArrayView2<Complex64>,
    h_ris_uav: ArrayView1<Complex64>,
    h_uav: ArrayView1<Complex64>,
) -> RisConfig {
    let r = cascade_matrix(h_ris, h_ris_uav);
    let h_conj = h_uav.mapv(|c| c.conj());
    let c = r.t().dot(&h_conj);
    RisConfig {
        v: c.mapv(|c| {
            if c == Complex64::new(0.0, 0.0) {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::from_polar(1.0, -c.arg())
            }
        }),
    }
}

/// Conjugate (maximum-ratio) precoders, `W = conj(G)`.
pub fn cb_precoders(g: &Array2<Complex64>) -> Array2<Complex64> {
    g.mapv(|c| c.conj())
}

/// `gamma_{m,k} = E|g_{m,k}|^2 = |mu_{m,k}|^2 + sigma^2_{m,k}` for a fixed RIS
/// configuration, averaging over the scattered components only.
///
/// With unit-modulus `v`, the scattered RIS variance reduces to
/// `beta_ris^2 / (K_ris + 1) * sum_n |H_ris[m,n]|^2`; the UAV column has no
/// such term since its RIS link is LoS.
pub fn gamma_analytic(ls: &LargeScaleParams, ris: &RisConfig) -> Result<Array2<f64>> {
    let (m_aps, k_users) = ls.beta_direct.dim();
    let n = ris.len();
    if ls.n_ris() != n {
        return Err(Error::Dimension(format!(
            "large-scale params carry {} RIS elements, configuration has {}",
            ls.n_ris(),
            n
        )));
    }
    // LoS reflection through the configured surface, M x K.
    let reflected_los = if n > 0 {
        let mut steered = ls.los_ris_user.clone();
        for (mut row, v) in steered.rows_mut().into_iter().zip(ris.v().iter()) {
            row.mapv_inplace(|c| c * v);
        }
        ls.h_ris.dot(&steered)
    } else {
        Array2::zeros((m_aps, k_users))
    };
    let ris_power: Array1<f64> = ls
        .h_ris
        .rows()
        .into_iter()
        .map(|r| r.iter().map(|c| c.norm_sqr()).sum())
        .collect();

    let mut gamma = Array2::zeros((m_aps, k_users));
    for m in 0..m_aps {
        for k in 0..k_users {
            let beta = ls.beta_direct[[m, k]];
            let (d_los, d_nlos) = rician_weights(ls.rician_direct[[m, k]]);
            let mut mu = ls.los_direct[[m, k]] * (d_los * beta);
            let mut var = (beta * d_nlos).powi(2);
            if n > 0 {
                let beta_r = ls.beta_ris_user[k];
                let (r_los, r_nlos) = rician_weights(ls.rician_ris_user[k]);
                mu += reflected_los[[m, k]] * (beta_r * r_los);
                var += (beta_r * r_nlos).powi(2) * ris_power[m];
            }
            gamma[[m, k]] = mu.norm_sqr() + var;
        }
    }
    Ok(gamma)
}

/// Per-AP transmit powers and the matching power-control coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerAllocation {
    /// `P^DL_{m,k}`, watts (M x K).
    pub p_dl: Array2<f64>,
    /// `eta_{m,k} = P^DL_{m,k} / gamma_{m,k}` (M x K).
    pub eta: Array2<f64>,
}

impl PowerAllocation {
    /// Total power spent by each AP.
    pub fn per_ap_power(&self) -> Array1<f64> {
        self.p_dl.sum_axis(ndarray::Axis(1))
    }
}

/// Proportional power allocation: each AP spends `kappa * p_d` on the UAV
/// and shares the rest among the GUEs in proportion to `gamma`.
pub fn ppa_allocate(gamma: &Array2<f64>, kappa: f64, p_d: f64) -> Result<PowerAllocation> {
    if !(0.0..=1.0).contains(&kappa) {
        return Err(Error::validation(
            "kappa",
            format!("must lie in [0, 1], got {kappa}"),
        ));
    }
    let (m_aps, k_users) = gamma.dim();
    if k_users < 2 {
        return Err(Error::Dimension(
            "need the UAV column and at least one GUE".into(),
        ));
    }
    let mut p_dl = Array2::zeros((m_aps, k_users));
    let mut eta = Array2::zeros((m_aps, k_users));
    for m in 0..m_aps {
        let row = gamma.row(m);
        let gue_sum: f64 = row.iter().skip(1).sum();
        if !(gue_sum > 0.0 && gue_sum.is_finite()) {
            return Err(Error::Degenerate(format!("AP {m} has no usable GUE gain")));
        }
        p_dl[[m, 0]] = kappa * p_d;
        for k in 1..k_users {
            p_dl[[m, k]] = (1.0 - kappa) * p_d * row[k] / gue_sum;
        }
        for k in 0..k_users {
            let p = p_dl[[m, k]];
            eta[[m, k]] = if p == 0.0 {
                0.0
            } else if row[k] > 0.0 {
                p / row[k]
            } else {
                return Err(Error::Degenerate(format!("AP {m} user {k} has zero gain")));
            };
        }
    }
    Ok(PowerAllocation { p_dl, eta })
}

/// `|(R v + h_0)^T w_0|^2`.
pub fn uav_received_power(
    r: ArrayView2<Complex64>,
    v: &RisConfig,
    h_uav: ArrayView1<Complex64>,
    w_uav: ArrayView1<Complex64>,
) -> f64 {
    let g0 = &r.dot(v.v()) + &h_uav;
    g0.iter()
        .zip(w_uav.iter())
        .map(|(g, w)| g * w)
        .sum::<Complex64>()
        .norm_sqr()
}
