//! Merton jump-diffusion under the minimal martingale measure.
//!
//! Tilting a Gaussian jump density by `e^x` gives another Gaussian density
//! with the mean shifted by `delta^2`, so the transformed Lévy measure stays a
//! two-component Gaussian mixture and every quantity needed for hedging has a
//! closed form.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::levy::{I2Term, MertonParams, MmmQuantities, SpectralKernel};

/// Largest real part of a characteristic exponent accepted before `exp`.
pub const EXPONENT_LIMIT: f64 = 700.0;

/// One component `intensity * N(mean, variance)` of a jump measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpComponent {
    pub intensity: f64,
    pub mean: f64,
    pub variance: f64,
}

impl JumpComponent {
    pub fn density(&self, x: f64) -> f64 {
        let z = x - self.mean;
        self.intensity * (-0.5 * z * z / self.variance).exp() / (2.0 * PI * self.variance).sqrt()
    }

    /// `int e^{beta x} nu_i(dx)`, for real `beta`.
    pub fn mgf(&self, beta: f64) -> f64 {
        self.intensity * (beta * self.mean + 0.5 * beta * beta * self.variance).exp()
    }

    /// `int (e^{i zeta x} - 1 - i zeta x) nu_i(dx)`.
    pub fn compensated_exponent(&self, zeta: Complex64) -> Complex64 {
        let iz = Complex64::i() * zeta;
        self.intensity
            * ((iz * self.mean - 0.5 * zeta * zeta * self.variance).exp() - 1.0 - iz * self.mean)
    }
}

/// Gaussian mixture representation of a jump measure.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianJumpMixture {
    pub components: Vec<JumpComponent>,
}

impl GaussianJumpMixture {
    pub fn total_intensity(&self) -> f64 {
        self.components.iter().map(|c| c.intensity).sum()
    }

    pub fn density(&self, x: f64) -> f64 {
        self.components.iter().map(|c| c.density(x)).sum()
    }

    /// The original measure `nu` of the model (one component).
    pub fn levy_measure(params: &MertonParams) -> Self {
        Self {
            components: vec![JumpComponent {
                intensity: params.gamma,
                mean: params.m,
                variance: params.delta * params.delta,
            }],
        }
    }
}

/// `nu^P~ = (1 + h) nu - h e^x nu`, written as two Gaussian components.
pub fn mmm_measure(params: &MertonParams, h: f64) -> GaussianJumpMixture {
    let d2 = params.delta * params.delta;
    GaussianJumpMixture {
        components: vec![
            JumpComponent {
                intensity: (1.0 + h) * params.gamma,
                mean: params.m,
                variance: d2,
            },
            JumpComponent {
                intensity: -h * params.gamma * (params.m + 0.5 * d2).exp(),
                mean: params.m + d2,
                variance: d2,
            },
        ],
    }
}

/// `mu* = -sigma^2/2 + int (x - e^x + 1) nu^P~(dx)`.
pub fn mu_star(params: &MertonParams, measure: &GaussianJumpMixture) -> f64 {
    let jumps: f64 = measure
        .components
        .iter()
        .map(|c| c.intensity * (c.mean + 1.0) - c.mgf(1.0))
        .sum();
    -0.5 * params.sigma * params.sigma + jumps
}

pub(crate) fn checked_exp(exponent: Complex64) -> Result<Complex64> {
    // NaN shows up when an intermediate exp already overflowed.
    if exponent.re.is_nan() || exponent.re > EXPONENT_LIMIT {
        return Err(Error::ExponentOverflow {
            real_part: exponent.re,
            limit: EXPONENT_LIMIT,
        });
    }
    Ok(exponent.exp())
}

/// Characteristic function of `L_tau` under the minimal martingale measure,
/// `E_P~[e^{i zeta L_tau}]`, for complex `zeta`.
pub fn char_fn(zeta: Complex64, tau: f64, params: &MertonParams, mmm: &MmmQuantities) -> Result<Complex64> {
    let measure = mmm_measure(params, mmm.h);
    let iz = Complex64::i() * zeta;
    let jumps: Complex64 = measure
        .components
        .iter()
        .map(|c| c.compensated_exponent(zeta))
        .sum();
    let exponent = iz * mmm.mu_star - 0.5 * params.sigma * params.sigma * zeta * zeta + jumps;
    checked_exp(tau * exponent)
}

/// Constant `C_1` with `|phi_tau(v - i alpha)| <= C_1 exp(-sigma^2 v^2 tau / 2)`.
pub fn c1(params: &MertonParams, mmm: &MmmQuantities, tau: f64, alpha: f64) -> f64 {
    let measure = mmm_measure(params, mmm.h);
    let jumps: f64 = measure
        .components
        .iter()
        .map(|c| c.mgf(alpha) - c.intensity * (1.0 + alpha * c.mean))
        .sum();
    let s2 = params.sigma * params.sigma;
    (tau * (alpha * mmm.mu_star + 0.5 * s2 * alpha * alpha + jumps)).exp()
}

/// Smallest `a` with `|(1/pi) int_a^inf (I_1 integrand) dv| <= eps`.
pub fn trunc_i1(eps: f64, tau: f64, strike: f64, spot: f64, alpha: f64, c1: f64, params: &MertonParams) -> f64 {
    let scale = strike / PI * (strike / spot).powf(-alpha) * c1;
    scale.powf(0.25) / (params.sigma * tau.sqrt() * eps.powf(0.25))
}

/// Smallest `a` such that the tail of the `I_2` integral beyond `a` is below
/// `eps`; fifth-root law in `eps`.
pub fn trunc_i2(eps: f64, tau: f64, strike: f64, spot: f64, alpha: f64, c1: f64, params: &MertonParams) -> f64 {
    let MertonParams {
        sigma,
        gamma,
        m,
        delta,
        ..
    } = *params;
    let d2 = delta * delta;
    let bracket = ((alpha + 1.0) * m + (0.5 * alpha * alpha + alpha + 0.5) * d2).exp()
        + (m * alpha + 0.5 * d2 * alpha * alpha).exp()
        + (1.0 - (m + 0.5 * d2).exp()).abs();
    let rhs = 4.0 * c1 * gamma * strike / (5.0 * PI * sigma.powi(4) * tau * tau * eps)
        * (strike / spot).powf(-alpha)
        * bracket;
    rhs.powf(0.2)
}

/// `I_2 = gamma e^{2m + 3 delta^2/2} f~(K e^{-m-delta^2}) - gamma e^m f~(K e^{-m})
/// + gamma (1 - e^{m + delta^2/2}) f(K)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MertonI2Decomposition {
    pub terms: [I2Term; 3],
}

pub fn i2_terms(params: &MertonParams, strike: f64) -> MertonI2Decomposition {
    let MertonParams { gamma, m, delta, .. } = *params;
    let d2 = delta * delta;
    let damped = SpectralKernel::GaussianDamped { variance: d2 };
    MertonI2Decomposition {
        terms: [
            I2Term {
                coefficient: gamma * (2.0 * m + 1.5 * d2).exp(),
                strike: strike * (-m - d2).exp(),
                kernel: damped,
            },
            I2Term {
                coefficient: -gamma * m.exp(),
                strike: strike * (-m).exp(),
                kernel: damped,
            },
            I2Term {
                coefficient: -gamma * (m + 0.5 * d2).exp_m1(),
                strike,
                kernel: SpectralKernel::Plain,
            },
        ],
    }
}
