use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;

use lrm_core::oracle::{self, QuadratureSpec, TransformedMeasure};
use lrm_core::{vg, LevyModel, MarketQuery, MertonParams, ModelParams, VgParams, NIKKEI_SPOT};

fn spec() -> QuadratureSpec {
    QuadratureSpec::new(1e-11, 1e-14, 4000).unwrap()
}

/// Merton parameters whose drift `mu^S` sits at `position` in the admissible
/// window `(-sigma^2 - int (e^x-1)^2 nu, 0]`.
fn merton_strategy() -> impl Strategy<Value = MertonParams> {
    (0.1..0.5f64, 0.0..2.0f64, -0.5..0.5f64, 0.1..0.8f64, 0.02..0.98f64).prop_map(
        |(sigma, gamma, m, delta, position)| {
            let d2 = delta * delta;
            let q = gamma * ((2.0 * m + 2.0 * d2).exp() - 2.0 * (m + 0.5 * d2).exp() + 1.0);
            let mu_s = -position * (sigma * sigma + q);
            let mu = mu_s - 0.5 * sigma * sigma - gamma * ((m + 0.5 * d2).exp() - 1.0 - m);
            MertonParams::new(mu, sigma, gamma, m, delta).unwrap()
        },
    )
}

fn vg_strategy() -> impl Strategy<Value = VgParams> {
    (1.0..8.0f64, 4.5..30.0f64, -2.9..-1.0f64)
        .prop_map(|(c, m, spread)| VgParams::from_cgm(c, m + spread, m).unwrap())
}

fn model_strategy() -> impl Strategy<Value = ModelParams> {
    prop_oneof![merton_strategy().prop_map(ModelParams::from), vg_strategy().prop_map(ModelParams::from)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_form_moments_match_quadrature(params in model_strategy()) {
        let model = LevyModel::new(params).unwrap();
        let numeric = oracle::mmm_quantities(&params, &spec()).unwrap();
        let closed = model.mmm();
        prop_assert!((closed.mu_s - numeric.mu_s).abs() < 1e-9, "{closed:?} vs {numeric:?}");
        prop_assert!((closed.quad_exp_moment - numeric.quad_exp_moment).abs() < 1e-9 * (1.0 + closed.quad_exp_moment));
        prop_assert!((closed.h - numeric.h).abs() < 1e-9);
        prop_assert!((closed.mu_star - numeric.mu_star).abs() < 1e-9);
    }

    #[test]
    fn char_fn_matches_levy_khintchine(
        params in model_strategy(),
        v in -20.0..20.0f64,
        alpha in prop::sample::select(vec![0.0, 1.0, 1.75]),
        tau in 0.05..1.0f64,
    ) {
        let model = LevyModel::new(params).unwrap();
        let mmm = model.mmm();
        let zeta = Complex64::new(v, -alpha);
        let measure = TransformedMeasure { params, h: mmm.h };
        let numeric = oracle::lk_char_fn(zeta, tau, &measure, mmm.mu_star, model.sigma(), &spec()).unwrap();
        let closed = model.char_fn(zeta, tau).unwrap();
        prop_assert!((numeric - closed).norm() < 1e-6, "{numeric} vs {closed}");
    }

    #[test]
    fn vg_kernel_matches_quadrature(params in vg_strategy(), v in -30.0..30.0f64, alpha in 0.0..2.0f64) {
        let zeta = Complex64::new(v, -alpha);
        let closed = vg::kernel(zeta, params.c(), params.g(), params.m()).unwrap();
        let numeric = oracle::kernel(zeta, &params.into(), &spec()).unwrap();
        prop_assert!((closed - numeric).norm() < 1e-8 * (1.0 + closed.norm()), "{closed} vs {numeric}");
    }
}

#[test]
fn fourier_call_matches_poisson_series() {
    let params = MertonParams::reference();
    let model = LevyModel::new(params).unwrap();
    for (tau, spot, strike) in [(0.5, 1.0, 1.0), (1.0, 1.0, 0.6), (0.05, 1.0, 1.1), (0.3, 2.0, 5.0)] {
        let series = oracle::merton_series(&params, model.mmm(), tau, spot, strike);
        let fourier = oracle::call_price(&model, tau, spot, strike, &spec()).unwrap();
        assert_relative_eq!(series.call, fourier, max_relative = 1e-9);
    }
}

#[test]
fn quad_i1_matches_poisson_series() {
    let params = MertonParams::reference();
    let model = LevyModel::new(params).unwrap();
    for (t, strike) in [(0.5, 1.0), (0.0, 0.5), (0.9, 3.0)] {
        let query = MarketQuery::new(t, 1.0, 1.0, strike).unwrap();
        let series = oracle::merton_series(&params, model.mmm(), query.tau(), 1.0, strike);
        let quad = oracle::quad_i1(&query, &model, &spec()).unwrap();
        assert_relative_eq!(series.i1, quad, max_relative = 1e-8);
    }
}

#[test]
fn quad_i1_decays_out_of_the_money() {
    // Unit-variance jumps keep the upper tail heavy, so the decay is slow.
    let params = MertonParams::reference();
    let model = LevyModel::new(params).unwrap();
    let mut previous = f64::INFINITY;
    for strike in [10.0, 100.0, 1e3, 1e4] {
        let query = MarketQuery::new(0.5, 1.0, 1.0, strike).unwrap();
        let quad = oracle::quad_i1(&query, &model, &spec()).unwrap();
        let series = oracle::merton_series(&params, model.mmm(), 0.5, 1.0, strike).i1;
        assert_relative_eq!(quad, series, max_relative = 1e-6);
        assert!(quad < previous);
        previous = quad;
    }
    assert!(previous < 2e-4);
}

#[test]
fn quad_i1_rejects_variance_gamma() {
    let model = LevyModel::new(VgParams::reference()).unwrap();
    let query = MarketQuery::new(0.5, 1.0, 1.0, 1.0).unwrap();
    assert!(oracle::quad_i1(&query, &model, &spec()).is_err());
}

#[test]
fn definition_i2_vanishes_without_jumps() {
    let model = LevyModel::new(MertonParams::new(-0.05, 0.2, 0.0, 0.0, 1.0).unwrap()).unwrap();
    let query = MarketQuery::new(0.5, 1.0, 1.0, 1.0).unwrap();
    assert_eq!(oracle::quad_i2_definition(&query, &model, &spec()).unwrap(), 0.0);
}

#[test]
fn nikkei_reference_i2() {
    let model = LevyModel::new(VgParams::nikkei()).unwrap();
    let query = MarketQuery::new(0.5, 1.0, NIKKEI_SPOT, 14_000.0).unwrap();
    let spec = QuadratureSpec::new(1e-8, 1e-10, 4000).unwrap();
    let i2 = oracle::quad_i2_definition(&query, &model, &spec).unwrap();
    // Frozen from this oracle; agrees with the spectral path to ~4e-9.
    assert_relative_eq!(i2, 98.675_797_636_5, max_relative = 1e-7);
}
