//! Carr–Madan discretization of damped Fourier integrals.
//!
//! Every quantity priced here has the form
//! `C(k) = (1/pi) Re int_0^inf e^{-i (v - i alpha) k} psi(v - i alpha) dv`
//! for some sampled `psi`. The integral is cut at `N eta`, weighted with
//! Simpson's rule and evaluated either on the whole log-strike grid
//! `k_l = -pi/eta + l 2 pi/(N eta)` with one FFT, or at a single `k` by direct
//! summation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{require_positive, Error, Result};

/// Quadrature weights applied to the sampled integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Weighting {
    /// `(eta/3)(3 + (-1)^{j+1} - delta_j)`.
    #[default]
    Simpson,
    /// Uniform weight `eta`, the unweighted Carr–Madan sum. Kept for audits.
    Trapezoid,
}

/// Grid size, frequency spacing, damping and allowable tail error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FftConfig {
    pub n: usize,
    pub eta: f64,
    pub alpha: f64,
    pub eps: f64,
    pub weighting: Weighting,
}

impl FftConfig {
    pub fn new(n: usize, eta: f64, alpha: f64, eps: f64) -> Result<Self> {
        if !is_power_of_two(n) || n < 2 {
            return Err(Error::NotPowerOfTwo(n));
        }
        require_positive("eta", eta)?;
        if !(alpha > 1.0 && alpha <= 2.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "must lie in (1, 2]",
            });
        }
        require_positive("eps", eps)?;
        Ok(Self {
            n,
            eta,
            alpha,
            eps,
            weighting: Weighting::Simpson,
        })
    }

    pub fn with_weighting(mut self, weighting: Weighting) -> Self {
        self.weighting = weighting;
        self
    }

    pub fn with_alpha(self, alpha: f64) -> Result<Self> {
        Self::new(self.n, self.eta, alpha, self.eps).map(|c| c.with_weighting(self.weighting))
    }

    /// `N = 2^14`, `eta = 0.025`, `alpha = 1.75`, `eps = 1e-2`.
    pub fn reference() -> Self {
        Self::new(1 << 14, 0.025, 1.75, 1e-2).expect("reference config is valid")
    }

    /// Right end `N eta` of the discretized frequency interval.
    pub fn upper_limit(&self) -> f64 {
        self.n as f64 * self.eta
    }

    /// Log-strikes must satisfy `|k| < pi / eta`.
    pub fn log_strike_limit(&self) -> f64 {
        PI / self.eta
    }

    /// Log-strike spacing `2 pi / (N eta)` of the FFT output.
    pub fn grid_spacing(&self) -> f64 {
        2.0 * PI / self.upper_limit()
    }

    /// Frequencies `v_j = eta j` at which `psi` has to be sampled.
    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.eta * j as f64)
    }

    pub fn weights(&self) -> Vec<f64> {
        match self.weighting {
            Weighting::Simpson => simpson_weights(self.n, self.eta),
            Weighting::Trapezoid => vec![self.eta; self.n],
        }
    }

    pub fn check_log_strike(&self, k: f64) -> Result<()> {
        let limit = self.log_strike_limit();
        if k.abs() < limit {
            Ok(())
        } else {
            Err(Error::StrikeOutOfRange { log_strike: k, limit })
        }
    }
}

fn is_power_of_two(n: usize) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// In-place radix-2 decimation-in-time FFT,
/// `F(l) = sum_j e^{-i 2 pi j l / N} x_j`, no normalization.
pub fn radix2_fft_in_place(data: &mut [Complex64]) -> Result<()> {
    let n = data.len();
    if !is_power_of_two(n) {
        return Err(Error::NotPowerOfTwo(n));
    }
    if n == 1 {
        return Ok(());
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if i < j {
            data.swap(i, j);
        }
    }
    // Twiddles evaluated directly, not by recurrence, so they carry no
    // accumulated rounding.
    let twiddles: Vec<Complex64> = (0..n / 2)
        .map(|k| Complex64::from_polar(1.0, -2.0 * PI * k as f64 / n as f64))
        .collect();
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let t = twiddles[k * stride] * data[start + k + half];
                let u = data[start + k];
                data[start + k] = u + t;
                data[start + k + half] = u - t;
            }
        }
        len <<= 1;
    }
    Ok(())
}

pub fn radix2_fft(input: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut out = input.to_vec();
    radix2_fft_in_place(&mut out)?;
    Ok(out)
}

/// `w_j = (eta/3)(3 + (-1)^{j+1} - delta_j)`.
pub fn simpson_weights(n: usize, eta: f64) -> Vec<f64> {
    (0..n)
        .map(|j| {
            let alternating = if j % 2 == 0 { -1.0 } else { 1.0 };
            let kronecker = if j == 0 { 1.0 } else { 0.0 };
            eta / 3.0 * (3.0 + alternating - kronecker)
        })
        .collect()
}

/// Samples `psi(eta j - i alpha)`, `j = 0..N`, of one damped transform.
#[derive(Debug, Clone, PartialEq)]
pub struct DampedTransformRequest {
    psi_samples: Vec<Complex64>,
    alpha: f64,
    eta: f64,
    weighting: Weighting,
}

impl DampedTransformRequest {
    pub fn new(psi_samples: Vec<Complex64>, config: &FftConfig) -> Result<Self> {
        if psi_samples.len() != config.n {
            return Err(Error::LengthMismatch {
                expected: config.n,
                actual: psi_samples.len(),
            });
        }
        if let Some(index) = psi_samples.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFiniteSample(index));
        }
        Ok(Self {
            psi_samples,
            alpha: config.alpha,
            eta: config.eta,
            weighting: config.weighting,
        })
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.psi_samples
    }

    fn weights(&self) -> Vec<f64> {
        match self.weighting {
            Weighting::Simpson => simpson_weights(self.psi_samples.len(), self.eta),
            Weighting::Trapezoid => vec![self.eta; self.psi_samples.len()],
        }
    }
}

/// Transform values `C(k_l)` on the log-strike grid `k_l = k_0 + l dk`.
#[derive(Debug, Clone, PartialEq)]
pub struct CarrMadanGrid {
    pub first_log_strike: f64,
    pub spacing: f64,
    pub values: Vec<f64>,
}

impl CarrMadanGrid {
    pub fn log_strike(&self, l: usize) -> f64 {
        self.first_log_strike + l as f64 * self.spacing
    }

    /// Fractional grid index `(k + pi/eta) N eta / (2 pi)` of a log-strike.
    pub fn index_of(&self, k: f64) -> f64 {
        (k - self.first_log_strike) / self.spacing
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().enumerate().map(|(l, &v)| (self.log_strike(l), v))
    }

    /// Linear interpolation between the two neighbouring grid values.
    pub fn interpolate_linear(&self, k: f64) -> Result<f64> {
        let (lo, frac) = self.locate(k)?;
        Ok(self.values[lo] + frac * (self.values[lo + 1] - self.values[lo]))
    }

    /// Monotone cubic Hermite interpolation: slopes from fourth-order central
    /// differences, clipped with the Fritsch–Carlson condition wherever the
    /// neighbouring data are monotone, so monotone data stay monotone.
    /// Falls back to linear interpolation next to the grid ends.
    pub fn interpolate(&self, k: f64) -> Result<f64> {
        let (lo, frac) = self.locate(k)?;
        let n = self.values.len();
        if lo < 2 || lo + 3 >= n {
            return self.interpolate_linear(k);
        }
        let f = &self.values;
        let h = self.spacing;
        let slope = |i: usize| (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
        let secant = (f[lo + 1] - f[lo]) / h;
        let (mut m0, mut m1) = (slope(lo), slope(lo + 1));
        if secant == 0.0 {
            m0 = 0.0;
            m1 = 0.0;
        } else {
            // Slopes against the secant direction would create an extremum.
            if m0 * secant < 0.0 {
                m0 = 0.0;
            }
            if m1 * secant < 0.0 {
                m1 = 0.0;
            }
            let (a, b) = (m0 / secant, m1 / secant);
            let r2 = a * a + b * b;
            if r2 > 9.0 {
                let t = 3.0 / r2.sqrt();
                m0 = t * a * secant;
                m1 = t * b * secant;
            }
        }
        let t = frac;
        let t2 = t * t;
        let t3 = t2 * t;
        Ok((2.0 * t3 - 3.0 * t2 + 1.0) * f[lo]
            + (t3 - 2.0 * t2 + t) * h * m0
            + (-2.0 * t3 + 3.0 * t2) * f[lo + 1]
            + (t3 - t2) * h * m1)
    }

    fn locate(&self, k: f64) -> Result<(usize, f64)> {
        let last = (self.values.len() - 1) as f64;
        // Absorb rounding in `index_of` at the two ends.
        let x = match self.index_of(k) {
            x if x < 0.0 && x > -1e-9 => 0.0,
            x if x > last && x < last + 1e-9 => last,
            x => x,
        };
        if !(x >= 0.0 && x <= last) {
            return Err(Error::StrikeOutOfRange {
                log_strike: k,
                limit: -self.first_log_strike,
            });
        }
        let lo = (x.floor() as usize).min(self.values.len() - 2);
        Ok((lo, x - lo as f64))
    }
}

/// All `N` grid values with one FFT:
/// `F(l) = (e^{-alpha k_l}/pi) sum_j e^{-i 2 pi j l/N} e^{i pi j} psi_j w_j`.
pub fn carr_madan_grid(request: &DampedTransformRequest) -> Result<CarrMadanGrid> {
    let n = request.psi_samples.len();
    let weights = request.weights();
    let mut x: Vec<Complex64> = request
        .psi_samples
        .iter()
        .zip(&weights)
        .enumerate()
        .map(|(j, (&psi, &w))| {
            // e^{i pi j} = (-1)^j
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            psi * (sign * w)
        })
        .collect();
    radix2_fft_in_place(&mut x)?;
    let first_log_strike = -PI / request.eta;
    let spacing = 2.0 * PI / (n as f64 * request.eta);
    let values = x
        .iter()
        .enumerate()
        .map(|(l, f)| {
            let k = first_log_strike + l as f64 * spacing;
            (-request.alpha * k).exp() / PI * f.re
        })
        .collect();
    Ok(CarrMadanGrid {
        first_log_strike,
        spacing,
        values,
    })
}

/// The complex damped sum `(1/pi) sum_j e^{-i (eta j - i alpha) k} psi_j w_j`
/// at exactly `k`.
pub fn direct_sum_complex(psi_samples: &[Complex64], alpha: f64, eta: f64, k: f64, weighting: Weighting) -> Complex64 {
    let n = psi_samples.len();
    let weights = match weighting {
        Weighting::Simpson => simpson_weights(n, eta),
        Weighting::Trapezoid => vec![eta; n],
    };
    let sum: Complex64 = psi_samples
        .iter()
        .zip(&weights)
        .enumerate()
        .map(|(j, (&psi, &w))| Complex64::from_polar(w, -eta * j as f64 * k) * psi)
        .sum();
    sum * (-alpha * k).exp() / PI
}

/// Real part of the Simpson-weighted damped sum at a single log-strike.
pub fn direct_simpson_sum(psi_samples: &[Complex64], alpha: f64, eta: f64, k: f64) -> f64 {
    direct_sum_complex(psi_samples, alpha, eta, k, Weighting::Simpson).re
}

/// Whether `[0, N eta]` reaches the truncation point `trunc_a`.
pub fn tail_condition_check(config: &FftConfig, trunc_a: f64) -> bool {
    config.upper_limit() >= trunc_a
}
