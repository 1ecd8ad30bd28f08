//! Variance gamma under the minimal martingale measure.
//!
//! Tilting a CGM density by `e^x` shifts `(G, M)` to `(G + 1, M - 1)`, so the
//! transformed measure is a pair of CGM-type densities. The second one need
//! not belong to a variance gamma process and is kept as a raw density.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::levy::{I2Term, MmmQuantities, SpectralKernel, VgParams};
use crate::merton::checked_exp;

/// `C e^{G x}/|x|` for `x < 0` and `C e^{-M x}/x` for `x > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgmComponent {
    pub c: f64,
    pub g: f64,
    pub m: f64,
}

impl CgmComponent {
    pub fn density(&self, x: f64) -> f64 {
        if x < 0.0 {
            self.c * (self.g * x).exp() / -x
        } else if x > 0.0 {
            self.c * (-self.m * x).exp() / x
        } else {
            f64::INFINITY
        }
    }

    /// `int x nu(dx)`.
    pub fn mean(&self) -> f64 {
        self.c * (1.0 / self.m - 1.0 / self.g)
    }

    /// `int (e^{beta x} - 1) nu(dx)` for real `beta` in `(-G, M)`.
    pub fn exp_moment(&self, beta: f64) -> f64 {
        exp_moment(self.c, self.g, self.m, beta)
    }
}

/// `int (e^{beta x} - 1) nu_{C,G,M}(dx) = -C [log(1 + beta/G) + log(1 - beta/M)]`.
pub(crate) fn exp_moment(c: f64, g: f64, m: f64, beta: f64) -> f64 {
    -c * ((beta / g).ln_1p() + (-beta / m).ln_1p())
}

/// `nu^P~ = nu_{(1+h)C, G, M} + nu_{-hC, G+1, M-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CgmComponentPair {
    pub components: [CgmComponent; 2],
}

impl CgmComponentPair {
    pub fn density(&self, x: f64) -> f64 {
        self.components.iter().map(|c| c.density(x)).sum()
    }
}

pub fn mmm_measure(params: &VgParams, h: f64) -> CgmComponentPair {
    CgmComponentPair {
        components: [
            CgmComponent {
                c: (1.0 + h) * params.c(),
                g: params.g(),
                m: params.m(),
            },
            CgmComponent {
                c: -h * params.c(),
                g: params.g() + 1.0,
                m: params.m() - 1.0,
            },
        ],
    }
}

/// `mu* = int (x - e^x + 1) nu^P~(dx)`, from the per-component first and
/// exponential moments.
pub fn mu_star(measure: &CgmComponentPair) -> f64 {
    measure
        .components
        .iter()
        .map(|c| c.mean() - c.exp_moment(1.0))
        .sum()
}

fn principal_log(z: Complex64, factor: &'static str) -> Result<Complex64> {
    // Right half-plane only: keeps Log continuous along the contour.
    if !(z.re > 0.0) {
        return Err(Error::BranchCut {
            factor,
            re: z.re,
            im: z.im,
        });
    }
    Ok(z.ln())
}

/// Drift multiplying `i zeta tau` in the characteristic function.
fn linear_drift(params: &VgParams, mmm: &MmmQuantities) -> f64 {
    let (c, g, m, h) = (params.c(), params.g(), params.m(), mmm.h);
    mmm.mu_star + (1.0 + h) * c * (m - g) / (g * m) - h * c * (m - g - 2.0) / ((g + 1.0) * (m - 1.0))
}

/// Characteristic function of `L_tau` under the minimal martingale measure:
/// `[(1 + i zeta/G)(1 - i zeta/M)]^{-(1+h) tau C}
///  [(1 + i zeta/(G+1))(1 - i zeta/(M-1))]^{h tau C} exp(i zeta tau drift)`.
pub fn char_fn(zeta: Complex64, tau: f64, params: &VgParams, mmm: &MmmQuantities) -> Result<Complex64> {
    let (c, g, m, h) = (params.c(), params.g(), params.m(), mmm.h);
    let iz = Complex64::i() * zeta;
    let first = principal_log(1.0 + iz / g, "1 + i zeta / G")? + principal_log(1.0 - iz / m, "1 - i zeta / M")?;
    let second = principal_log(1.0 + iz / (g + 1.0), "1 + i zeta / (G + 1)")?
        + principal_log(1.0 - iz / (m - 1.0), "1 - i zeta / (M - 1)")?;
    let exponent = tau * (-(1.0 + h) * c * first + h * c * second + iz * linear_drift(params, mmm));
    checked_exp(exponent)
}

/// `int e^{i zeta x} (e^x - 1) nu_{C,G,M}(dx)
///  = C log((M - i zeta)/(M - 1 - i zeta) * (G + i zeta)/(G + 1 + i zeta))`.
pub fn kernel(zeta: Complex64, c: f64, g: f64, m: f64) -> Result<Complex64> {
    let iz = Complex64::i() * zeta;
    let factors = [
        (m - iz, "M - i zeta"),
        (m - 1.0 - iz, "M - 1 - i zeta"),
        (g + iz, "G + i zeta"),
        (g + 1.0 + iz, "G + 1 + i zeta"),
    ];
    for (z, name) in factors {
        if !(z.re > 0.0) {
            return Err(Error::BranchCut {
                factor: name,
                re: z.re,
                im: z.im,
            });
        }
    }
    let ratio = factors[0].0 / factors[1].0 * (factors[2].0 / factors[3].0);
    principal_log(ratio, "kernel argument").map(|l| c * l)
}

/// The two transforms making up `I_2`: the kernel-weighted one, minus
/// `constant * f(K)` with `constant = C log(M G / ((M - 1)(G + 1)))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VgI2Weights {
    pub constant: f64,
    pub kernel: SpectralKernel,
}

impl VgI2Weights {
    pub fn terms(&self, strike: f64) -> [I2Term; 2] {
        [
            I2Term {
                coefficient: 1.0,
                strike,
                kernel: self.kernel,
            },
            I2Term {
                coefficient: -self.constant,
                strike,
                kernel: SpectralKernel::Plain,
            },
        ]
    }
}

pub fn i2_weights(params: &VgParams) -> VgI2Weights {
    VgI2Weights {
        constant: exp_moment(params.c(), params.g(), params.m(), 1.0),
        kernel: SpectralKernel::VgLog {
            c: params.c(),
            g: params.g(),
            m: params.m(),
        },
    }
}

/// Constant `C_2` with `|phi_tau(v - i alpha)| <= C_2 |v|^{-2 C tau}`.
pub fn c2(params: &VgParams, mmm: &MmmQuantities, tau: f64, alpha: f64) -> f64 {
    let (c, g, m, h) = (params.c(), params.g(), params.m(), mmm.h);
    let log_c2 = (1.0 + h) * tau * c * (g * m).ln() - h * tau * c * ((g + 1.0) * (m - 1.0)).ln()
        + tau * alpha * linear_drift(params, mmm);
    log_c2.exp()
}

/// Smallest `a` such that the tail of the `I_2` integral beyond `a` is below
/// `eps`; `a^{2 C tau + 1}` law.
pub fn trunc(eps: f64, tau: f64, strike: f64, spot: f64, alpha: f64, c2: f64, params: &VgParams) -> f64 {
    let (c, g, m) = (params.c(), params.g(), params.m());
    let power = 2.0 * c * tau + 1.0;
    let bracket = 1.0 / (g + alpha) + 1.0 / (m - alpha - 1.0) + exp_moment(1.0, g, m, 1.0).abs();
    let rhs = c * c2 * strike.powf(1.0 - alpha) * spot.powf(alpha) / (std::f64::consts::PI * eps * power) * bracket;
    rhs.powf(1.0 / power)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levy::{mmm_quantities, quadratic_exp_moment, ModelParams};
    use approx::assert_relative_eq;

    fn model(p: VgParams) -> (VgParams, MmmQuantities) {
        (p, mmm_quantities(&p.into()).unwrap())
    }

    #[test]
    fn identity_change_drops_second_component() {
        let pair = mmm_measure(&VgParams::reference(), 0.0);
        assert_eq!(pair.components[1].c, 0.0);
        assert_eq!(pair.components[0].c, VgParams::reference().c());
    }

    #[test]
    fn nikkei_pair_weights_nonnegative() {
        let (p, mmm) = model(VgParams::nikkei());
        assert!(mmm.h < 0.0 && mmm.h > -1.0);
        let pair = mmm_measure(&p, mmm.h);
        assert!(pair.components.iter().all(|c| c.c >= 0.0));
        assert!(pair.components[1].m > 3.0);
    }

    #[test]
    fn char_fn_identities() {
        for p in [VgParams::reference(), VgParams::nikkei()] {
            let (p, mmm) = model(p);
            for tau in [0.05, 0.25, 0.5, 1.0] {
                let one = char_fn(Complex64::new(0.0, 0.0), tau, &p, &mmm).unwrap();
                assert!((one - 1.0).norm() < 1e-15);
                let mart = char_fn(Complex64::new(0.0, -1.0), tau, &p, &mmm).unwrap();
                assert!((mart - 1.0).norm() < 1e-12, "{mart}");
            }
        }
    }

    #[test]
    fn kernel_at_zero_is_first_exponential_moment() {
        let p = VgParams::nikkei();
        let k0 = kernel(Complex64::new(0.0, 0.0), p.c(), p.g(), p.m()).unwrap();
        assert!(k0.im.abs() < 1e-18);
        let expected = p.c() * (p.m() * p.g() / ((p.m() - 1.0) * (p.g() + 1.0))).ln();
        assert_relative_eq!(k0.re, expected, max_relative = 1e-10);
        assert_relative_eq!(k0.re, i2_weights(&p).constant, max_relative = 1e-10);
    }

    #[test]
    fn kernel_bound_on_contour() {
        let p = VgParams::nikkei();
        let alpha = 1.75;
        let bound = p.c() * (1.0 / (p.g() + alpha) + 1.0 / (p.m() - alpha - 1.0));
        for i in 0..1000 {
            let v = -500.0 + i as f64;
            let k = kernel(Complex64::new(v, -alpha), p.c(), p.g(), p.m()).unwrap();
            assert!(k.norm() <= bound, "v={v}");
        }
    }

    #[test]
    fn kernel_rejects_branch_cut() {
        let err = kernel(Complex64::new(1.0, -3.5), 1.0, 5.0, 4.2).unwrap_err();
        assert!(matches!(err, Error::BranchCut { .. }));
    }

    #[test]
    fn constant_sign_tracks_drift_condition() {
        let nikkei = i2_weights(&VgParams::nikkei());
        assert!(nikkei.constant < 0.0);
        // Symmetric case: log(M^2 / (M^2 - 1)) > 0.
        let sym = VgParams::from_cgm(3.0, 6.0, 6.0).unwrap();
        assert_relative_eq!(i2_weights(&sym).constant, 3.0 * (36.0f64 / 35.0).ln(), max_relative = 1e-13);
    }

    #[test]
    fn c2_tends_to_one() {
        let (p, mmm) = model(VgParams::nikkei());
        assert_relative_eq!(c2(&p, &mmm, 1e-13, 1.75), 1.0, max_relative = 1e-9);
    }

    #[test]
    fn trunc_power_law() {
        let (p, mmm) = model(VgParams::reference());
        let tau = 0.5;
        let c = c2(&p, &mmm, tau, 1.75);
        let a = trunc(1e-2, tau, 1.0, 1.0, 1.75, c, &p);
        let lambda: f64 = 7.0;
        let b = trunc(1e-2 / lambda, tau, 1.0, 1.0, 1.75, c, &p);
        assert_relative_eq!(b / a, lambda.powf(1.0 / (2.0 * p.c() * tau + 1.0)), max_relative = 1e-12);
    }

    #[test]
    fn quadratic_moment_from_kernel_pieces() {
        // (e^x - 1)^2 = (e^{2x} - 1) - 2 (e^x - 1), via the ζ = -i kernel.
        let p = VgParams::reference();
        let k_minus_i = kernel(Complex64::new(0.0, -1.0), p.c(), p.g(), p.m()).unwrap();
        let k_zero = kernel(Complex64::new(0.0, 0.0), p.c(), p.g(), p.m()).unwrap();
        let from_kernel = k_minus_i.re - k_zero.re;
        let q = quadratic_exp_moment(&ModelParams::VarianceGamma(p));
        assert_relative_eq!(from_kernel, q, max_relative = 1e-12);
    }
}
