//! Hedge-ratio ingredients by direct quadrature.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::measure::{self, integrate_against};
use super::quadrature::{geometric_breakpoints, integrate, integrate_with_breakpoints, Domain, QuadratureSpec};
use crate::error::{Error, Result};
use crate::levy::{LevyModel, MarketQuery, ModelParams};
use crate::merton;

/// Damping used by the oracle's Fourier integrals. Deliberately different
/// from the production default so that agreement also exercises the
/// independence of the result from the damping.
pub const ORACLE_ALPHA: f64 = 1.5;

/// Inner integrals are held to a tighter tolerance than the outer ones.
fn inner_spec(spec: &QuadratureSpec) -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: spec.rel_tol * 1e-2,
        abs_tol: spec.abs_tol * 1e-2,
        max_subdivisions: spec.max_subdivisions,
    }
}

/// `E_P~[(S_T - K)^+]` from
/// `(K/pi) Re int_0^inf e^{i zeta log(S/K)} phi(zeta) / ((i zeta - 1) i zeta) dv`,
/// `zeta = v - i alpha`, integrated adaptively over the whole half-line.
pub fn call_price(model: &LevyModel, tau: f64, spot: f64, strike: f64, spec: &QuadratureSpec) -> Result<f64> {
    let log_moneyness = (spot / strike).ln();
    let mut failure = None;
    let estimate = integrate(
        |v: f64| {
            let zeta = Complex64::new(v, -ORACLE_ALPHA);
            let iz = Complex64::i() * zeta;
            match model.char_fn(zeta, tau) {
                Ok(phi) => ((iz * log_moneyness).exp() * phi / ((iz - 1.0) * iz)).re,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        Domain::UpperHalfLine(0.0),
        spec,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(strike * estimate.value / PI)
}

/// `I_1` from `(1/pi) int_0^A K^{1-i zeta} psi_1(zeta) dv`, with `A` the
/// point beyond which the closed-form tail bound is below `abs_tol`.
pub fn quad_i1(query: &MarketQuery, model: &LevyModel, spec: &QuadratureSpec) -> Result<f64> {
    let ModelParams::Merton(params) = model.params() else {
        return Err(Error::ModelMismatch {
            operation: "quad_i1",
            model: model.name(),
        });
    };
    let tau = query.tau();
    let c1 = merton::c1(params, model.mmm(), tau, ORACLE_ALPHA);
    let upper = merton::trunc_i1(spec.abs_tol, tau, query.strike, query.spot, ORACLE_ALPHA, c1, params);
    let log_moneyness = query.moneyness().ln();
    let mut failure = None;
    let estimate = integrate_with_breakpoints(
        |v: f64| {
            let zeta = Complex64::new(v, -ORACLE_ALPHA);
            let iz = Complex64::i() * zeta;
            match model.char_fn(zeta, tau) {
                Ok(phi) => ((-iz * log_moneyness).exp() * phi / (iz - 1.0)).re,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        &geometric_breakpoints(upper),
        spec,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(query.strike * estimate.value / PI)
}

/// Range of jump sizes outside which `(e^{2x} + 1) nu(x)` is below `e^{-60}`
/// of its scale.
fn jump_range(params: &ModelParams) -> (f64, f64) {
    match params {
        ModelParams::Merton(p) => {
            let d2 = p.delta * p.delta;
            (p.m - 12.0 * p.delta, p.m + 2.0 * d2 + 12.0 * p.delta)
        }
        ModelParams::VarianceGamma(p) => (-60.0 / p.g(), 60.0 / (p.m() - 2.0)),
    }
}

/// `I_2 = int (e^x f(K e^{-x}) - f(K)) (e^x - 1) nu(dx)` with `f` the call
/// price under the minimal martingale measure, every `f` computed by its own
/// Fourier quadrature.
pub fn quad_i2_definition(query: &MarketQuery, model: &LevyModel, spec: &QuadratureSpec) -> Result<f64> {
    let tau = query.tau();
    let inner = inner_spec(spec);
    let at_strike = call_price(model, tau, query.spot, query.strike, &inner)?;
    let (lo, hi) = jump_range(model.params());
    let params = *model.params();
    let mut failure = None;
    let mut integrand = |x: f64| {
        if !(lo..=hi).contains(&x) {
            return 0.0;
        }
        match call_price(model, tau, query.spot, query.strike * (-x).exp(), &inner) {
            Ok(shifted) => (x.exp() * shifted - at_strike) * x.exp_m1(),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    // The measure integral runs over both half-lines; the integrand is cut to
    // the relevant jump range.
    let value = integrate_against(&params, 0.0, &mut integrand, spec);
    if let Some(e) = failure {
        return Err(e);
    }
    value
}

/// Oracle hedge ratio and its ingredients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleLrm {
    pub i1: Option<f64>,
    pub i2: f64,
    pub quad_exp_moment: f64,
    pub lrm: f64,
}

pub fn quad_lrm(query: &MarketQuery, model: &LevyModel, spec: &QuadratureSpec) -> Result<OracleLrm> {
    let sigma = model.sigma();
    let i1 = match model.params() {
        ModelParams::Merton(_) => Some(quad_i1(query, model, spec)?),
        ModelParams::VarianceGamma(_) => None,
    };
    let i2 = quad_i2_definition(query, model, spec)?;
    let quad_exp_moment = measure::quadratic_exp_moment(model.params(), spec)?;
    let lrm = (sigma * sigma * i1.unwrap_or(0.0) + i2) / (query.spot * (sigma * sigma + quad_exp_moment));
    Ok(OracleLrm {
        i1,
        i2,
        quad_exp_moment,
        lrm,
    })
}
