use num_complex::Complex64;
use proptest::prelude::*;

use lrm_core::fft::{direct_sum_complex, radix2_fft_in_place};
use lrm_core::oracle::naive_dft;
use lrm_core::{
    carr_madan_grid, direct_simpson_sum, radix2_fft, DampedTransformRequest, FftConfig, LevyModel, MertonParams,
    Weighting,
};

fn complex_vec(log2_max: u32) -> impl Strategy<Value = Vec<Complex64>> {
    (1..=log2_max).prop_flat_map(|bits| {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im)), 1 << bits)
    })
}

proptest! {
    #[test]
    fn radix2_matches_naive_dft(x in complex_vec(10)) {
        let fast = radix2_fft(&x).unwrap();
        let slow = naive_dft(&x);
        for (a, b) in fast.iter().zip(&slow) {
            prop_assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn parseval(x in complex_vec(10)) {
        let y = radix2_fft(&x).unwrap();
        let input: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        let output: f64 = y.iter().map(|z| z.norm_sqr()).sum();
        let n = x.len() as f64;
        prop_assert!((output - n * input).abs() <= 1e-9 * n * input);
    }

    #[test]
    fn dft_is_linear(x in complex_vec(6), a in -3.0..3.0f64, b in -3.0..3.0f64) {
        let y: Vec<Complex64> = x.iter().rev().cloned().collect();
        let combo: Vec<Complex64> = x.iter().zip(&y).map(|(p, q)| p * a + q * b).collect();
        let lhs = naive_dft(&combo);
        let (dx, dy) = (naive_dft(&x), naive_dft(&y));
        for (l, v) in lhs.iter().enumerate() {
            prop_assert!((v - (dx[l] * a + dy[l] * b)).norm() < 1e-12);
        }
    }

    #[test]
    fn in_place_matches_copying(x in complex_vec(8)) {
        let mut y = x.clone();
        radix2_fft_in_place(&mut y).unwrap();
        prop_assert_eq!(y, radix2_fft(&x).unwrap());
    }

    #[test]
    fn grid_matches_direct_sum_at_grid_points(
        x in complex_vec(9),
        alpha in 1.1..2.0f64,
        eta in 0.05..0.5f64,
        weighting in prop_oneof![Just(Weighting::Simpson), Just(Weighting::Trapezoid)],
    ) {
        let config = FftConfig::new(x.len().max(2), eta, alpha, 1e-2).unwrap().with_weighting(weighting);
        let request = DampedTransformRequest::new(x.clone(), &config).unwrap();
        let grid = carr_madan_grid(&request).unwrap();
        // Stay away from the grid ends, where e^{-alpha k} is huge.
        let n = x.len();
        for l in (n / 4..3 * n / 4).step_by((n / 16).max(1)) {
            let k = grid.log_strike(l);
            let direct = direct_sum_complex(&x, alpha, eta, k, weighting).re;
            let scale = (-alpha * k).exp() * x.iter().map(|z| z.norm()).sum::<f64>() * eta;
            prop_assert!((grid.values[l] - direct).abs() <= 1e-10 * scale.max(1.0), "l={} {} vs {}", l, grid.values[l], direct);
        }
    }
}

fn merton_psi2(config: &FftConfig) -> Vec<Complex64> {
    let model = LevyModel::new(MertonParams::reference()).unwrap();
    config
        .frequencies()
        .map(|v| {
            let z = Complex64::new(v, -config.alpha);
            let iz = Complex64::i() * z;
            model.char_fn(z, 0.5).unwrap() / ((iz - 1.0) * iz)
        })
        .collect()
}

#[test]
fn merton_call_transform_center_value() {
    let config = FftConfig::reference();
    let psi = merton_psi2(&config);
    let grid = carr_madan_grid(&DampedTransformRequest::new(psi.clone(), &config).unwrap()).unwrap();
    let center = config.n / 2;
    assert!(grid.log_strike(center).abs() < 1e-12);
    let direct = direct_simpson_sum(&psi, config.alpha, config.eta, 0.0);
    assert!((grid.values[center] - direct).abs() < 1e-9);
    // At-the-money call under the minimal martingale measure.
    assert!((direct - 0.309_622_400_6).abs() < 1e-8);
}

#[test]
fn off_grid_interpolation_error_is_second_order() {
    // Halving the grid spacing should cut the interpolation error by ~4.
    let errors: Vec<f64> = [(1 << 12, 0.05), (1 << 13, 0.05)]
        .iter()
        .map(|&(n, eta)| {
            let config = FftConfig::new(n, eta, 1.75, 1e-2).unwrap();
            let psi = merton_psi2(&config);
            let grid = carr_madan_grid(&DampedTransformRequest::new(psi.clone(), &config).unwrap()).unwrap();
            let k = 0.5 * grid.spacing + grid.log_strike(n / 2 + 3);
            let interpolated = 0.5 * (grid.values[n / 2 + 3] + grid.values[n / 2 + 4]);
            (interpolated - direct_simpson_sum(&psi, config.alpha, config.eta, k)).abs()
        })
        .collect();
    let ratio = errors[0] / errors[1];
    assert!((3.0..5.0).contains(&ratio), "errors {errors:?}");
}

#[test]
fn zero_samples_give_zero_grid() {
    let config = FftConfig::new(64, 0.25, 1.5, 1e-2).unwrap();
    let request = DampedTransformRequest::new(vec![Complex64::new(0.0, 0.0); 64], &config).unwrap();
    assert!(carr_madan_grid(&request).unwrap().values.iter().all(|&v| v == 0.0));
}

#[test]
fn cubic_interpolation_beats_linear() {
    let config = FftConfig::reference();
    let psi = merton_psi2(&config);
    let grid = carr_madan_grid(&DampedTransformRequest::new(psi.clone(), &config).unwrap()).unwrap();
    let (mut linear, mut cubic) = (0.0f64, 0.0f64);
    for i in 0..40 {
        let k = -0.6 + 0.031 * i as f64;
        let exact = direct_simpson_sum(&psi, config.alpha, config.eta, k);
        linear = linear.max((grid.interpolate_linear(k).unwrap() - exact).abs());
        cubic = cubic.max((grid.interpolate(k).unwrap() - exact).abs());
    }
    assert!(cubic < 1e-8, "cubic {cubic:e}");
    assert!(cubic < linear / 100.0, "cubic {cubic:e} linear {linear:e}");
}

proptest! {
    #[test]
    fn interpolation_preserves_monotone_data(steps in prop::collection::vec(0.0..1.0f64, 16..64), u in 0.0..1.0f64) {
        // Cumulative sums of non-negative steps, including flat stretches.
        let values: Vec<f64> = steps
            .iter()
            .map(|&s| if s < 0.3 { 0.0 } else { s })
            .scan(0.0, |acc, s| { *acc += s; Some(*acc) })
            .collect();
        let grid = lrm_core::CarrMadanGrid { first_log_strike: 0.0, spacing: 0.1, values: values.clone() };
        let span = 0.1 * (values.len() - 1) as f64;
        let (a, b) = (u * span * 0.999, (u * span * 0.999 + 0.013).min(span));
        let (fa, fb) = (grid.interpolate(a).unwrap(), grid.interpolate(b).unwrap());
        prop_assert!(fb >= fa - 1e-12, "{} -> {}, {} -> {}", a, fa, b, fb);
        let lo = (a / 0.1).floor() as usize;
        prop_assert!(fa >= values[lo] - 1e-12 && fa <= values[(lo + 1).min(values.len() - 1)] + 1e-12);
    }
}
