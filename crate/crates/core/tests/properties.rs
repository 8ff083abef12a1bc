use mdcoint_core::coint::{dols, fmols, wald_test};
use mdcoint_core::kernel::{bartlett_lrv, ols};
use mdcoint_core::model::{
    kappa_from_structural, money_demand_exact, omega_from_structural, structural_from_kappa, StructuralParams,
};
use mdcoint_core::nalgebra::DMatrix;
use mdcoint_core::timeseries::{
    align, exp_series, log_series, opportunity_cost, spline_to_monthly, HoldingCost, Period, TimeSeries,
};
use mdcoint_core::unitroot::{adf_values, pp_values};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn normals(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
}

fn walk(seed: u64, n: usize) -> Vec<f64> {
    let mut level = 0.0;
    normals(seed, n)
        .into_iter()
        .map(|e| {
            level += e;
            level
        })
        .collect()
}

/// `y = 1 + x b + u` with random-walk regressors and AR(0.5) errors.
fn cointegrated(seed: u64, n: usize, b: &[f64]) -> (Vec<f64>, DMatrix<f64>) {
    let walks: Vec<Vec<f64>> = (0..b.len()).map(|j| walk(seed * 31 + j as u64, n)).collect();
    let x = DMatrix::from_fn(n, b.len(), |t, j| walks[j][t]);
    let mut u = 0.0;
    let e = normals(seed * 31 + 99, n);
    let y = (0..n)
        .map(|t| {
            u = 0.5 * u + e[t];
            1.0 + (0..b.len()).map(|j| x[(t, j)] * b[j]).sum::<f64>() + u
        })
        .collect();
    (y, x)
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #[test]
    fn spline_hits_every_knot(values in prop::collection::vec(1.0f64..1e4, 4..40)) {
        let q = TimeSeries::new("q", Period::quarterly(1999, 2), values.clone()).unwrap();
        let m = spline_to_monthly(&q).unwrap();
        for (k, v) in values.iter().enumerate() {
            prop_assert!((m.values()[3 * k] - v).abs() <= 1e-10 * v.abs());
        }
    }

    #[test]
    fn opportunity_cost_increases_with_the_rate(a in -0.5f64..0.5, gap in 1e-6f64..0.5, phi in 0.0f64..0.9) {
        let rates = TimeSeries::new("i", Period::monthly(2000, 1), vec![a, a + gap]).unwrap();
        let phi = HoldingCost::from_monthly(phi).unwrap();
        if let Ok(oc) = opportunity_cost(&rates, phi) {
            prop_assert!(oc.values()[1] > oc.values()[0]);
        }
    }

    #[test]
    fn log_inverts_exp(values in prop::collection::vec(-20.0f64..20.0, 1..50)) {
        let s = TimeSeries::new("s", Period::monthly(2000, 1), values.clone()).unwrap();
        let back = log_series(&exp_series(&s).unwrap()).unwrap();
        for (a, b) in back.values().iter().zip(&values) {
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }

    #[test]
    fn align_is_idempotent(starts in prop::collection::vec(0i64..24, 2..5), lens in prop::collection::vec(30usize..60, 5)) {
        let series: Vec<TimeSeries> = starts
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let values = (0..lens[i]).map(|t| (i * 100 + t) as f64).collect();
                TimeSeries::new(format!("s{i}"), Period::monthly(2000, 1).offset(*s), values).unwrap()
            })
            .collect();
        let once = align(&series).unwrap();
        let twice = align(&once.to_series()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn kappa_round_trip(sigma in 1e-3f64..=5.0, delta in 0.01f64..0.99) {
        let (s, d) = structural_from_kappa(kappa_from_structural(sigma, delta).unwrap()).unwrap();
        prop_assert!((s - sigma).abs() <= 1e-12 && (d - delta).abs() <= 1e-12);
    }

    #[test]
    fn demand_is_homogeneous_in_scale(
        theta in 0.05f64..0.95, delta in 0.05f64..0.95, sigma in 0.05f64..4.0, zeta in 0.05f64..4.0,
        oc in 1e-3f64..0.02, oc_star in 1e-3f64..0.02, lambda in 0.01f64..100.0,
    ) {
        let p = StructuralParams::new(theta, delta, sigma, zeta, 0.00082953, 0.0).unwrap();
        let a = money_demand_exact(oc, oc_star, 1.3, &p).unwrap();
        let b = money_demand_exact(oc, oc_star, 1.3 * lambda, &p).unwrap();
        prop_assert!(rel_close(b, lambda * a, 1e-12));
    }

    #[test]
    fn omega2_sign_follows_zeta_minus_sigma(
        theta in 0.05f64..0.95, delta in 0.05f64..0.95, sigma in 0.05f64..4.0, zeta in 0.05f64..4.0, s in -2.0f64..2.0,
    ) {
        prop_assume!((zeta - sigma).abs() > 1e-6);
        let p = StructuralParams::new(theta, delta, sigma, zeta, 0.00082953, s).unwrap();
        let w = omega_from_structural(&p).unwrap();
        prop_assert_eq!(w.omega2 > 0.0, zeta > sigma);
        prop_assert!((w.omega1 - zeta).abs() < 1e-15 && w.omega3 == 1.0);
    }

    #[test]
    fn lrv_is_symmetric_psd(seed in 0u64..10_000, k in 1usize..4, bw in 0.0f64..20.0) {
        let n = 150;
        let e = normals(seed, n * k);
        let u = DMatrix::from_fn(n, k, |t, j| e[t * k + j] + if j > 0 { 0.5 * e[t * k] } else { 0.0 });
        let est = bartlett_lrv(&u, bw).unwrap();
        let o = &est.omega;
        prop_assert!((o - o.transpose()).abs().max() <= 1e-12 * o.abs().max());
        let floor = -1e-10 * o.trace();
        for ev in o.clone().symmetric_eigen().eigenvalues.iter() {
            prop_assert!(*ev >= floor);
        }
    }

    #[test]
    fn ols_matches_normal_equations(seed in 0u64..10_000, k in 1usize..5) {
        let n = 80;
        let e = normals(seed, n * (k + 1));
        let x = DMatrix::from_fn(n, k, |t, j| e[t * (k + 1) + j]);
        let y: Vec<f64> = (0..n).map(|t| 0.3 + e[t * (k + 1) + k]).collect();
        let fit = ols(&y, &x, true).unwrap();
        let z = DMatrix::from_fn(n, k + 1, |t, j| if j == 0 { 1.0 } else { x[(t, j - 1)] });
        let zy = z.transpose() * mdcoint_core::nalgebra::DVector::from_vec(y);
        let beta = (z.transpose() * &z).lu().solve(&zy).unwrap();
        for (a, b) in fit.coefficients.iter().zip(beta.iter()) {
            prop_assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn wald_against_itself_is_zero(coef in -1e6f64..1e6, se in 1e-6f64..1e3) {
        let w = wald_test(coef, se, coef, 0);
        prop_assert_eq!(w.t_statistic, 0.0);
        prop_assert_eq!(w.p_value, 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn unit_root_tests_ignore_level_shifts(seed in 0u64..10_000, c in -1e3f64..1e3) {
        let y = walk(seed, 200);
        let shifted: Vec<f64> = y.iter().map(|v| v + c).collect();
        let (a, b) = (adf_values(&y, None).unwrap(), adf_values(&shifted, None).unwrap());
        prop_assert_eq!(a.tuning, b.tuning);
        prop_assert!(rel_close(a.statistic, b.statistic, 1e-8));
        let (a, b) = (pp_values(&y, None).unwrap(), pp_values(&shifted, None).unwrap());
        prop_assert!(rel_close(a.statistic, b.statistic, 1e-8));
    }

    #[test]
    fn slopes_ignore_regressor_shifts(seed in 0u64..10_000, c in -100.0f64..100.0, col in 0usize..2) {
        let (y, x) = cointegrated(seed, 300, &[0.7, -1.2]);
        let mut shifted = x.clone();
        shifted.column_mut(col).add_scalar_mut(c);
        let d0 = dols(&y, &x, Some(2)).unwrap();
        let d1 = dols(&y, &shifted, Some(2)).unwrap();
        let f0 = fmols(&y, &x).unwrap();
        let f1 = fmols(&y, &shifted).unwrap();
        for (a, b) in d0.slopes().iter().zip(d1.slopes()).chain(f0.slopes().iter().zip(f1.slopes())) {
            prop_assert!((a - b).abs() <= 1e-8, "{} vs {}", a, b);
        }
    }
}
