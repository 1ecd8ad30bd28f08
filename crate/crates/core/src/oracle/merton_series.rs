//! Merton prices as Poisson mixtures of lognormal expectations.
//!
//! Under the minimal martingale measure the jumps arrive from two
//! independent Gaussian sources, so conditionally on the jump counts
//! `(n_1, n_2)` the log-price is normal. No Fourier inversion is involved,
//! which makes this a check on the whole transform pipeline.

use crate::levy::{MertonParams, MmmQuantities};

fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Poisson weights `P(N = n)` until the remaining mass is negligible.
fn poisson_weights(mean: f64) -> Vec<f64> {
    let mut weights = vec![(-mean).exp()];
    let mut n = 0;
    loop {
        n += 1;
        let next = weights[n - 1] * mean / n as f64;
        weights.push(next);
        if n as f64 > mean && next < 1e-20 {
            return weights;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MertonSeries {
    /// `E_P~[(S_T - K)^+]`.
    pub call: f64,
    /// `E_P~[S_T 1{S_T > K}]`.
    pub i1: f64,
}

/// Call price and `I_1` for the Merton model.
pub fn merton_series(params: &MertonParams, mmm: &MmmQuantities, tau: f64, spot: f64, strike: f64) -> MertonSeries {
    let MertonParams {
        sigma,
        gamma,
        m,
        delta,
        ..
    } = *params;
    let d2 = delta * delta;
    let h = mmm.h;
    // nu^P~ = (1 + h) nu - h e^x nu; the tilted Gaussian has mean m + delta^2.
    let (lambda1, mean1) = ((1.0 + h) * gamma, m);
    let (lambda2, mean2) = (-h * gamma * (m + 0.5 * d2).exp(), m + d2);
    let compensator = lambda1 * mean1 + lambda2 * mean2;
    let base = spot.ln() + (mmm.mu_star - compensator) * tau;
    let log_strike = strike.ln();

    let w1 = poisson_weights(lambda1 * tau);
    let w2 = poisson_weights(lambda2 * tau);
    let (mut call, mut i1) = (0.0, 0.0);
    for (n1, p1) in w1.iter().enumerate() {
        for (n2, p2) in w2.iter().enumerate() {
            let mean = base + n1 as f64 * mean1 + n2 as f64 * mean2;
            let var = sigma * sigma * tau + (n1 + n2) as f64 * d2;
            let sd = var.sqrt();
            let d1 = (mean + var - log_strike) / sd;
            let asset = (mean + 0.5 * var).exp() * normal_cdf(d1);
            let weight = p1 * p2;
            i1 += weight * asset;
            call += weight * (asset - strike * normal_cdf(d1 - sd));
        }
    }
    MertonSeries { call, i1 }
}
