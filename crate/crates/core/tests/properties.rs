mod common;

use cellfree_ris::beamforming::{cb_precoders, ppa_allocate, ris_align_uav, RisConfig};
use cellfree_ris::channel::{aggregate_channel, ChannelSet};
use cellfree_ris::geometry::{distance, elevation_angle_deg, place_nodes, Point3};
use cellfree_ris::link::sinr_all;
use cellfree_ris::SimConfig;
use ndarray::{s, Array1, Array2};
use num_complex::Complex64;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Array2<Complex64>> {
    prop::collection::vec(complex(), rows * cols)
        .prop_map(move |v| Array2::from_shape_vec((rows, cols), v).unwrap())
}

fn channel_set(m: usize, k: usize, n: usize) -> impl Strategy<Value = ChannelSet> {
    (matrix(m, k), matrix(m, n), matrix(n, k)).prop_map(|(h_direct, h_ris, h_ris_user)| {
        ChannelSet {
            h_direct,
            h_ris,
            h_ris_user,
        }
    })
}

fn phases(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..std::f64::consts::TAU, n)
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-12 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #[test]
    fn ris_coefficients_are_unit_modulus(
        raw in prop::collection::vec(complex(), 1..40),
        cs in (1usize..6, 1usize..12).prop_flat_map(|(m, n)| (matrix(m, n), matrix(n, 1), matrix(m, 1))),
    ) {
        let v = RisConfig::from_coefficients(Array1::from(raw));
        prop_assert!(v.v().iter().all(|c| (c.norm() - 1.0).abs() < 1e-12));
        let (h_ris, h_ris_uav, h_uav) = cs;
        let aligned = ris_align_uav(h_ris.view(), h_ris_uav.column(0), h_uav.column(0));
        prop_assert!(aligned.v().iter().all(|c| (c.norm() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn allocation_conserves_power(
        gamma in (1usize..10, 2usize..7).prop_flat_map(|(m, k)| {
            prop::collection::vec(1e-12..1e-3f64, m * k)
                .prop_map(move |v| Array2::from_shape_vec((m, k), v).unwrap())
        }),
        kappa in 0.0..=1.0f64,
        p_d in 1e-3..10.0f64,
    ) {
        let alloc = ppa_allocate(&gamma, kappa, p_d).unwrap();
        for (row_eta, row_gamma) in alloc.eta.rows().into_iter().zip(gamma.rows()) {
            let spent: f64 = row_eta.iter().zip(row_gamma.iter()).map(|(e, g)| e * g).sum();
            prop_assert!((spent - p_d).abs() <= 1e-12 * p_d);
        }
        prop_assert!(alloc.eta.iter().all(|&e| e >= 0.0));
    }

    #[test]
    fn sinr_ignores_per_user_phase(
        g in matrix(4, 3),
        eta in prop::collection::vec(0.01..2.0f64, 12),
        rot in phases(3),
    ) {
        let eta = Array2::from_shape_vec((4, 3), eta).unwrap();
        let base = sinr_all(&g, &cb_precoders(&g), &eta, 0.1).unwrap();
        let mut turned = g.clone();
        for (k, phi) in rot.iter().enumerate() {
            turned.column_mut(k).mapv_inplace(|c| c * Complex64::from_polar(1.0, *phi));
        }
        let after = sinr_all(&turned, &cb_precoders(&turned), &eta, 0.1).unwrap();
        for (a, b) in base.iter().zip(&after) {
            prop_assert!((a - b).abs() <= 1e-9 * a.max(1e-12));
        }
    }

    #[test]
    fn more_power_never_hurts_single_user(
        g in matrix(5, 1),
        eta in prop::collection::vec(0.0..2.0f64, 5),
        m in 0usize..5,
        bump in 0.0..3.0f64,
    ) {
        let eta = Array2::from_shape_vec((5, 1), eta).unwrap();
        let w = cb_precoders(&g);
        let before = sinr_all(&g, &w, &eta, 1.0).unwrap()[0];
        let mut more = eta.clone();
        more[[m, 0]] += bump;
        let after = sinr_all(&g, &w, &more, 1.0).unwrap()[0];
        prop_assert!(after >= before * (1.0 - 1e-12));
    }

    #[test]
    fn reflection_is_linear(
        cs in channel_set(3, 2, 6),
        p in phases(6),
        phi in 0.0..std::f64::consts::TAU,
        split in 1usize..6,
    ) {
        let v = RisConfig::from_phases(&p);
        let g = aggregate_channel(&cs, &v).unwrap();
        let reflected = &g - &cs.h_direct;

        // common phase on v rotates the reflected part
        let rotated: Vec<f64> = p.iter().map(|x| x + phi).collect();
        let g_rot = aggregate_channel(&cs, &RisConfig::from_phases(&rotated)).unwrap();
        let turn = Complex64::from_polar(1.0, phi);
        for (a, b) in (&g_rot - &cs.h_direct).iter().zip(reflected.iter()) {
            prop_assert!(close(*a, b * turn));
        }

        // element subsets add up
        let part = |lo: usize, hi: usize| {
            let sub = ChannelSet {
                h_direct: Array2::zeros(cs.h_direct.dim()),
                h_ris: cs.h_ris.slice(s![.., lo..hi]).to_owned(),
                h_ris_user: cs.h_ris_user.slice(s![lo..hi, ..]).to_owned(),
            };
            aggregate_channel(&sub, &RisConfig::from_phases(&p[lo..hi])).unwrap()
        };
        let sum = part(0, split) + part(split, 6);
        for (a, b) in sum.iter().zip(reflected.iter()) {
            prop_assert!(close(*a, *b));
        }
    }

    #[test]
    fn ap_uav_distance_at_least_height_gap(seed in any::<u64>(), h_uav in 0.0..400.0f64) {
        let cfg = SimConfig { h_uav, ..SimConfig::default() };
        let layout = place_nodes(&cfg, &mut common::rng(seed));
        for ap in &layout.ap_pos {
            prop_assert!(distance(ap, &layout.uav_pos) >= (cfg.h_uav - cfg.h_ap).abs() - 1e-12);
        }
    }

    #[test]
    fn elevation_flips_with_heights(
        dx in -50.0..50.0f64,
        dy in -50.0..50.0f64,
        h1 in 0.0..300.0f64,
        h2 in 0.0..300.0f64,
    ) {
        let a = elevation_angle_deg(&Point3::new(0.0, 0.0, h1), &Point3::new(dx, dy, h2));
        let b = elevation_angle_deg(&Point3::new(0.0, 0.0, h2), &Point3::new(dx, dy, h1));
        prop_assert!((a + b).abs() < 1e-9);
    }

    #[test]
    fn sinr_respects_coherent_bound(g in matrix(4, 3), seed in any::<u64>()) {
        // SINR_k <= M^2 p_d max_m(|g_mk|^4 / gamma_mk) / noise with gamma = |g|^2
        let p_d = 1.0;
        let noise = 1e-2;
        let gamma = g.mapv(|c| c.norm_sqr().max(1e-12));
        let kappa = (seed % 1000) as f64 / 1000.0;
        let alloc = ppa_allocate(&gamma, kappa, p_d).unwrap();
        let sinr = sinr_all(&g, &cb_precoders(&g), &alloc.eta, noise).unwrap();
        let m_aps = g.nrows() as f64;
        for (k, s) in sinr.iter().enumerate() {
            let peak = g.column(k).iter().zip(gamma.column(k)).map(|(c, gm)| c.norm_sqr().powi(2) / gm).fold(0.0, f64::max);
            prop_assert!(*s <= m_aps * m_aps * p_d * peak / noise * (1.0 + 1e-9));
        }
    }
}
