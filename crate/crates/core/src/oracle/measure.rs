//! Lévy-measure integrals by quadrature.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::{integrate, Domain, QuadValue, QuadratureSpec};
use crate::error::Result;
use crate::levy::{MmmQuantities, ModelParams};

/// Density of the model's Lévy measure under `P`.
fn levy_density(params: &ModelParams, x: f64) -> f64 {
    match params {
        ModelParams::Merton(p) => {
            let z = (x - p.m) / p.delta;
            p.gamma * (-0.5 * z * z).exp() / (p.delta * (2.0 * PI).sqrt())
        }
        ModelParams::VarianceGamma(p) => {
            if x < 0.0 {
                p.c() * (p.g() * x).exp() / -x
            } else {
                p.c() * (-p.m() * x).exp() / x
            }
        }
    }
}

/// `nu^P~(dx) = (1 - h (e^x - 1)) nu(dx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformedMeasure {
    pub params: ModelParams,
    pub h: f64,
}

impl TransformedMeasure {
    pub fn density(&self, x: f64) -> f64 {
        let base = levy_density(&self.params, x);
        if base == 0.0 {
            // Far out in the tails the tilt factor may overflow.
            return 0.0;
        }
        (1.0 - self.h * x.exp_m1()) * base
    }
}

/// `int g(x) nu^P~(dx)`, split at the origin where the variance gamma density
/// is singular. `h = 0` integrates against `nu` itself.
pub fn integrate_against<T, G>(params: &ModelParams, h: f64, mut g: G, spec: &QuadratureSpec) -> Result<T>
where
    T: QuadValue,
    G: FnMut(f64) -> T,
{
    let measure = TransformedMeasure { params: *params, h };
    let mut integrand = |x: f64| {
        let d = measure.density(x);
        if d == 0.0 {
            T::zero()
        } else {
            g(x) * d
        }
    };
    let lower = integrate(&mut integrand, Domain::LowerHalfLine(0.0), spec)?;
    let upper = integrate(&mut integrand, Domain::UpperHalfLine(0.0), spec)?;
    Ok(lower.value + upper.value)
}

/// `e^w - 1 - w` without cancellation for small `|w|`.
fn exp_remainder(w: Complex64) -> Complex64 {
    if w.norm() < 0.5 {
        let mut term = w;
        let mut sum = Complex64::new(0.0, 0.0);
        for n in 2..24 {
            term = term * w / n as f64;
            sum += term;
        }
        sum
    } else {
        w.exp() - 1.0 - w
    }
}

fn exp_remainder_real(x: f64) -> f64 {
    exp_remainder(Complex64::new(x, 0.0)).re
}

/// `mu^S = mu_L + sigma^2/2 + int (e^x - 1 - x) nu(dx)` with `mu_L` the
/// log-price drift (`int x nu(dx)` for variance gamma).
pub fn mu_s(params: &ModelParams, spec: &QuadratureSpec) -> Result<f64> {
    let remainder = integrate_against(params, 0.0, exp_remainder_real, spec)?;
    Ok(match params {
        ModelParams::Merton(p) => p.mu + 0.5 * p.sigma * p.sigma + remainder,
        ModelParams::VarianceGamma(_) => integrate_against(params, 0.0, |x| x, spec)? + remainder,
    })
}

pub fn quadratic_exp_moment(params: &ModelParams, spec: &QuadratureSpec) -> Result<f64> {
    integrate_against(
        params,
        0.0,
        |x: f64| {
            let e = x.exp_m1();
            e * e
        },
        spec,
    )
}

/// `-sigma^2/2 + int (x - e^x + 1) nu^P~(dx)`.
pub fn mu_star(params: &ModelParams, h: f64, spec: &QuadratureSpec) -> Result<f64> {
    let sigma = params.sigma();
    let jumps = integrate_against(params, h, |x| -exp_remainder_real(x), spec)?;
    Ok(-0.5 * sigma * sigma + jumps)
}

/// Every minimal-martingale-measure quantity by quadrature.
pub fn mmm_quantities(params: &ModelParams, spec: &QuadratureSpec) -> Result<MmmQuantities> {
    let mu_s = mu_s(params, spec)?;
    let quad_exp_moment = quadratic_exp_moment(params, spec)?;
    let sigma = params.sigma();
    let h = mu_s / (sigma * sigma + quad_exp_moment);
    Ok(MmmQuantities {
        mu_s,
        quad_exp_moment,
        h,
        mu_star: mu_star(params, h, spec)?,
    })
}

/// `int e^{i zeta x} (e^x - 1) nu(dx)`.
pub fn kernel(zeta: Complex64, params: &ModelParams, spec: &QuadratureSpec) -> Result<Complex64> {
    integrate_against(
        params,
        0.0,
        |x: f64| (Complex64::i() * zeta * x).exp() * x.exp_m1(),
        spec,
    )
}

/// `exp{tau [i zeta mu* - sigma^2 zeta^2 / 2 + int (e^{i zeta x} - 1 - i zeta x) nu^P~(dx)]}`
/// with the jump integral done numerically.
pub fn lk_char_fn(
    zeta: Complex64,
    tau: f64,
    measure: &TransformedMeasure,
    mu_star: f64,
    sigma: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let iz = Complex64::i() * zeta;
    let jumps = integrate_against(&measure.params, measure.h, |x| exp_remainder(iz * x), spec)?;
    Ok((tau * (iz * mu_star - 0.5 * sigma * sigma * zeta * zeta + jumps)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::{MertonParams, VgParams};

    #[test]
    fn exp_remainder_branches_agree() {
        for x in [0.49, 0.51, -0.3, 1e-9] {
            let w = Complex64::new(x, 0.2 * x);
            let direct = w.exp() - 1.0 - w;
            assert!((exp_remainder(w) - direct).norm() < 1e-15 + 1e-12 * direct.norm());
        }
    }

    #[test]
    fn zeta_zero_is_one() {
        let spec = QuadratureSpec::default();
        for params in [ModelParams::from(MertonParams::reference()), VgParams::reference().into()] {
            let m = TransformedMeasure { params, h: -0.01 };
            let phi = lk_char_fn(Complex64::new(0.0, 0.0), 0.5, &m, 0.1, params.sigma(), &spec).unwrap();
            assert!((phi - 1.0).norm() < 1e-15);
        }
    }
}
