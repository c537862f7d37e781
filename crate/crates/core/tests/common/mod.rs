#![allow(dead_code)]

use cellfree_ris::beamforming::{gamma_analytic, ppa_allocate, ris_align_uav, RisConfig};
use cellfree_ris::channel::{aggregate_channel, draw_channels, large_scale, LargeScaleParams};
use cellfree_ris::geometry::place_nodes;
use cellfree_ris::SimConfig;
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Circularly-symmetric CN(0, 1), drawn independently of the library helper.
pub fn cn<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_phases<R: Rng>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n)
        .map(|_| rng.random::<f64>() * std::f64::consts::TAU)
        .collect()
}

/// Large-scale parameters for a small random deployment.
pub fn scenario(
    num_aps: usize,
    num_gues: usize,
    n_ris: usize,
    seed: u64,
) -> (SimConfig, LargeScaleParams) {
    let cfg = SimConfig {
        num_aps,
        num_gues,
        n_ris,
        ..SimConfig::default()
    };
    let layout = place_nodes(&cfg, &mut rng(seed));
    let ls = large_scale(&layout, &cfg);
    (cfg, ls)
}

/// Largest relative gap between analytic `gamma` and the sample mean of
/// `|g|^2` over `draws` fading realizations, for a fixed random `v`.
pub fn gamma_mc_max_rel_error(draws: usize) -> f64 {
    let (_, ls) = scenario(3, 2, 8, 11);
    let ris = RisConfig::from_phases(&random_phases(8, &mut rng(12)));
    let gamma = gamma_analytic(&ls, &ris).unwrap();
    let mut acc = Array2::<f64>::zeros(gamma.dim());
    let mut r = rng(13);
    for _ in 0..draws {
        let cs = draw_channels(&ls, &mut r);
        let g = aggregate_channel(&cs, &ris).unwrap();
        acc.zip_mut_with(&g, |a, c| *a += c.norm_sqr());
    }
    acc.iter()
        .zip(gamma.iter())
        .map(|(s, g)| (s / draws as f64 - g).abs() / g)
        .fold(0.0, f64::max)
}

/// Fixed two-AP, two-user instance: `(G, W, eta, noise)`.
pub fn two_user_instance() -> (Array2<Complex64>, Array2<Complex64>, Array2<f64>, f64) {
    let g = ndarray::array![
        [Complex64::new(0.8, -0.3), Complex64::new(0.2, 0.5)],
        [Complex64::new(-0.1, 0.4), Complex64::new(0.9, 0.1)]
    ];
    let w = g.mapv(|c| c.conj());
    let eta = ndarray::array![[0.6, 0.9], [1.2, 0.4]];
    (g, w, eta, 0.05)
}

/// Empirical SINR per user from `symbols` transmitted symbols through the
/// two-user instance.
pub fn symbol_level_sinr(symbols: usize, seed: u64) -> Vec<f64> {
    let (g, w, eta, noise) = two_user_instance();
    let (m_aps, k_users) = g.dim();
    // a[k][j]: effective gain from stream j to user k
    let mut a = vec![vec![Complex64::new(0.0, 0.0); k_users]; k_users];
    for k in 0..k_users {
        for j in 0..k_users {
            for m in 0..m_aps {
                a[k][j] += g[[m, k]] * eta[[m, j]].sqrt() * w[[m, j]];
            }
        }
    }
    let mut r = rng(seed);
    let mut desired = vec![0.0; k_users];
    let mut other = vec![0.0; k_users];
    let sigma = noise.sqrt();
    for _ in 0..symbols {
        let s: Vec<Complex64> = (0..k_users).map(|_| cn(&mut r)).collect();
        for k in 0..k_users {
            let d = a[k][k] * s[k];
            let y: Complex64 =
                (0..k_users).map(|j| a[k][j] * s[j]).sum::<Complex64>() + cn(&mut r) * sigma;
            desired[k] += d.norm_sqr();
            other[k] += (y - d).norm_sqr();
        }
    }
    desired.iter().zip(&other).map(|(d, o)| d / o).collect()
}

/// Random single-AP alignment instance `(h_ris 1xN, h_ris_uav, h_uav)`.
pub fn single_ap_instance<R: Rng>(
    n: usize,
    rng: &mut R,
) -> (Array2<Complex64>, Array1<Complex64>, Array1<Complex64>) {
    let h_ris = Array2::from_shape_fn((1, n), |_| cn(rng) * 1e-3);
    let h_ris_uav = Array1::from_shape_fn(n, |_| cn(rng) * 1e-2);
    let h_uav = Array1::from_shape_fn(1, |_| cn(rng) * 1e-5);
    (h_ris, h_ris_uav, h_uav)
}

pub fn effective_uav_channel(
    h_ris: &Array2<Complex64>,
    h_ris_uav: &Array1<Complex64>,
    h_uav: &Array1<Complex64>,
    v: &Array1<Complex64>,
) -> Array1<Complex64> {
    let mut g = h_uav.clone();
    for m in 0..h_ris.nrows() {
        for n in 0..v.len() {
            g[m] += h_ris[[m, n]] * v[n] * h_ris_uav[n];
        }
    }
    g
}

/// Worst relative gap between the aligned `|g_0|` and `|h_0| + sum |R_n|`.
pub fn alignment_max_rel_error(instances: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..instances {
        let n = r.random_range(1..=64);
        let (h_ris, h_ris_uav, h_uav) = single_ap_instance(n, &mut r);
        let v = ris_align_uav(h_ris.view(), h_ris_uav.view(), h_uav.view());
        let g0 = effective_uav_channel(&h_ris, &h_ris_uav, &h_uav, v.v())[0].norm();
        let bound = h_uav[0].norm()
            + (0..n)
                .map(|i| (h_ris[[0, i]] * h_ris_uav[i]).norm())
                .sum::<f64>();
        worst = worst.max((g0 - bound).abs() / bound);
    }
    worst
}

/// Number of random unit-modulus vectors whose CB received power beats the
/// aligned one on a fixed single-AP instance.
pub fn random_phase_violations(vectors: usize, n: usize, seed: u64) -> usize {
    let mut r = rng(seed);
    let (h_ris, h_ris_uav, h_uav) = single_ap_instance(n, &mut r);
    let aligned = ris_align_uav(h_ris.view(), h_ris_uav.view(), h_uav.view());
    let power = |v: &Array1<Complex64>| {
        let g = effective_uav_channel(&h_ris, &h_ris_uav, &h_uav, v);
        // W = conj(G) gives |sum g w|^2 = |g|^4
        g.iter().map(|c| c.norm_sqr()).sum::<f64>().powi(2)
    };
    let best = power(aligned.v());
    (0..vectors)
        .filter(|_| {
            let v = RisConfig::from_phases(&random_phases(n, &mut r));
            power(v.v()) > best * (1.0 + 1e-12)
        })
        .count()
}

/// Worst relative deviation of per-AP allocated power from `p_d` over
/// `configs` random gain matrices and split factors.
pub fn ppa_conservation_max_rel_error(configs: usize, seed: u64) -> f64 {
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..configs {
        let m = r.random_range(1..=32);
        let k = r.random_range(2..=9);
        let p_d = 10f64.powf(r.random_range(-3.0..1.0));
        let kappa = r.random::<f64>();
        let gamma = Array2::from_shape_fn((m, k), |_| 10f64.powf(r.random_range(-14.0..-4.0)));
        let alloc = ppa_allocate(&gamma, kappa, p_d).unwrap();
        for row in 0..m {
            let spent: f64 = (0..k).map(|c| alloc.eta[[row, c]] * gamma[[row, c]]).sum();
            worst = worst.max((spent - p_d).abs() / p_d);
        }
    }
    worst
}
