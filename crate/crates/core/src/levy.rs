//! Model parameters, minimal-martingale-measure quantities and the
//! integrability/drift conditions every model has to satisfy before it can be
//! hedged.
//!
//! The log-price is `L_t = mu t + sigma W_t + int x Ñ(dt, dx)` and the asset
//! `S = S_0 exp(L)`. Everything downstream works with the Girsanov slope
//! `h = mu^S / (sigma^2 + int (e^x - 1)^2 nu(dx))`: the minimal martingale
//! measure changes the Brownian drift by `xi = h sigma` and the jump
//! intensity by the factor `1 - theta_x = 1 - h (e^x - 1)`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{require_finite, require_positive, Error, Result};
use crate::{merton, vg};

/// Queries closer to maturity than this are rejected; every truncation bound
/// blows up as the time to maturity goes to zero.
pub const TAU_MIN: f64 = 1e-6;

/// Nikkei 225 close the [`VgParams::nikkei`] set was estimated against.
pub const NIKKEI_SPOT: f64 = 14841.07;

/// Merton jump-diffusion: Brownian part plus compound Poisson jumps with
/// normally distributed sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MertonParams {
    /// Drift of the log-price per unit time.
    pub mu: f64,
    /// Diffusion volatility.
    pub sigma: f64,
    /// Jump intensity per unit time.
    pub gamma: f64,
    /// Mean jump size.
    pub m: f64,
    /// Standard deviation of the jump size.
    pub delta: f64,
}

impl MertonParams {
    /// `gamma = 0` is accepted and degenerates to a pure diffusion.
    pub fn new(mu: f64, sigma: f64, gamma: f64, m: f64, delta: f64) -> Result<Self> {
        require_finite("mu", mu)?;
        require_positive("sigma", sigma)?;
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma,
                reason: "must be finite and non-negative",
            });
        }
        require_finite("m", m)?;
        require_positive("delta", delta)?;
        Ok(Self {
            mu,
            sigma,
            gamma,
            m,
            delta,
        })
    }

    /// Parameter set used for the reference Merton experiments.
    pub fn reference() -> Self {
        Self {
            mu: -0.7,
            sigma: 0.2,
            gamma: 1.0,
            m: 0.0,
            delta: 1.0,
        }
    }

    /// `E[e^{beta Y}]` for a single jump `Y ~ N(m, delta^2)`.
    pub(crate) fn jump_mgf(&self, beta: f64) -> f64 {
        (beta * self.m + 0.5 * beta * beta * self.delta * self.delta).exp()
    }
}

/// Variance gamma process in the CGM parametrization. The Lévy density is
/// `C e^{-G|x|}/|x|` on the negative half-line and `C e^{-M x}/x` on the
/// positive one.
///
/// Note that `m()` is the positive-jump decay rate `M`; the drift of the
/// time-changed Brownian motion is [`VgParams::drift`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VgParams {
    c: f64,
    g: f64,
    m: f64,
}

impl VgParams {
    pub fn from_cgm(c: f64, g: f64, m: f64) -> Result<Self> {
        Ok(Self {
            c: require_positive("C", c)?,
            g: require_positive("G", g)?,
            m: require_positive("M", m)?,
        })
    }

    /// From subordinator variance rate `kappa`, Brownian drift `m` and
    /// Brownian volatility `delta`.
    pub fn from_kmd(kappa: f64, m: f64, delta: f64) -> Result<Self> {
        let (c, g, big_m) = cgm_from_kmd(kappa, m, delta)?;
        Self::from_cgm(c, g, big_m)
    }

    /// `kappa = 0.15, m = -0.2, delta = 0.45`.
    pub fn reference() -> Self {
        Self::from_kmd(0.15, -0.2, 0.45).expect("reference parameters are valid")
    }

    /// Estimated Nikkei 225 parameters (March 2014).
    pub fn nikkei() -> Self {
        Self {
            c: 2.46939502681512,
            g: 23.743109051760964,
            m: 24.903251787154687,
        }
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn kappa(&self) -> f64 {
        1.0 / self.c
    }

    /// Brownian volatility `delta`, from `G M = 2 / (kappa delta^2)`.
    pub fn volatility(&self) -> f64 {
        (2.0 * self.c / (self.g * self.m)).sqrt()
    }

    /// Brownian drift `m`, from `G - M = 2 m / delta^2`.
    pub fn drift(&self) -> f64 {
        let delta = self.volatility();
        0.5 * (self.g - self.m) * delta * delta
    }
}

/// `(C, G, M)` from `(kappa, m, delta)`.
pub fn cgm_from_kmd(kappa: f64, m: f64, delta: f64) -> Result<(f64, f64, f64)> {
    require_positive("kappa", kappa)?;
    require_finite("m", m)?;
    require_positive("delta", delta)?;
    let d2 = delta * delta;
    let radical = (m * m + 2.0 * d2 / kappa).sqrt() / d2;
    let skew = m / d2;
    Ok((1.0 / kappa, radical + skew, radical - skew))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    Merton(MertonParams),
    VarianceGamma(VgParams),
}

impl ModelParams {
    pub fn name(&self) -> &'static str {
        match self {
            ModelParams::Merton(_) => "merton",
            ModelParams::VarianceGamma(_) => "vg",
        }
    }

    /// Diffusion volatility; zero for variance gamma.
    pub fn sigma(&self) -> f64 {
        match self {
            ModelParams::Merton(p) => p.sigma,
            ModelParams::VarianceGamma(_) => 0.0,
        }
    }
}

impl From<MertonParams> for ModelParams {
    fn from(p: MertonParams) -> Self {
        ModelParams::Merton(p)
    }
}

impl From<VgParams> for ModelParams {
    fn from(p: VgParams) -> Self {
        ModelParams::VarianceGamma(p)
    }
}

/// Drift `mu^S` of the asset's semimartingale decomposition.
///
/// For variance gamma the log-price drift is `int x nu(dx)`, so `mu^S`
/// collapses to `int (e^x - 1) nu(dx) = C log(G M / ((G + 1)(M - 1)))`.
pub fn martingale_drift(model: &ModelParams) -> f64 {
    match model {
        ModelParams::Merton(p) => {
            p.mu + 0.5 * p.sigma * p.sigma + p.gamma * (p.jump_mgf(1.0) - 1.0 - p.m)
        }
        ModelParams::VarianceGamma(p) => vg::exp_moment(p.c, p.g, p.m, 1.0),
    }
}

/// `int (e^x - 1)^2 nu(dx)`. Infinite for variance gamma with `M <= 2`.
pub fn quadratic_exp_moment(model: &ModelParams) -> f64 {
    match model {
        ModelParams::Merton(p) => {
            p.gamma * (p.jump_mgf(2.0) - 2.0 * p.jump_mgf(1.0) + 1.0)
        }
        ModelParams::VarianceGamma(p) => {
            if p.m <= 2.0 {
                return f64::INFINITY;
            }
            // (e^x - 1)^2 = (e^{2x} - 1) - 2 (e^x - 1)
            vg::exp_moment(p.c, p.g, p.m, 2.0) - 2.0 * vg::exp_moment(p.c, p.g, p.m, 1.0)
        }
    }
}

/// Quantities of the minimal martingale measure shared by every pricing
/// kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MmmQuantities {
    /// `mu^S`.
    pub mu_s: f64,
    /// `int (e^x - 1)^2 nu(dx)`.
    pub quad_exp_moment: f64,
    /// Girsanov slope; `xi = h sigma` and `theta_x = h (e^x - 1)`.
    pub h: f64,
    /// Drift of the log-price under the minimal martingale measure.
    pub mu_star: f64,
}

impl MmmQuantities {
    /// Denominator `sigma^2 + int (e^x - 1)^2 nu(dx)` of the hedge ratio.
    pub fn hedge_denominator(&self, sigma: f64) -> f64 {
        sigma * sigma + self.quad_exp_moment
    }
}

/// Fails with [`Error::AssumptionViolated`] when the model does not pass
/// [`validate_assumptions`].
pub fn mmm_quantities(model: &ModelParams) -> Result<MmmQuantities> {
    let report = validate_assumptions(model);
    if !report.all_passed() {
        return Err(Error::AssumptionViolated(report.failure_summary()));
    }
    let mu_s = martingale_drift(model);
    let quad_exp_moment = quadratic_exp_moment(model);
    let sigma = model.sigma();
    let h = mu_s / (sigma * sigma + quad_exp_moment);
    let mu_star = match model {
        ModelParams::Merton(p) => merton::mu_star(p, &merton::mmm_measure(p, h)),
        ModelParams::VarianceGamma(p) => vg::mu_star(&vg::mmm_measure(p, h)),
    };
    Ok(MmmQuantities {
        mu_s,
        quad_exp_moment,
        h,
        mu_star,
    })
}

/// One line of a [`ValidationReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub description: String,
    pub passed: bool,
    /// Distance to the boundary; positive inside the admissible region.
    /// Infinite when the condition holds for every parameter value.
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub model: &'static str,
    pub checks: Vec<ConditionCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn failure_summary(&self) -> String {
        self.failures()
            .map(|c| format!("{} violated ({})", c.name, c.description))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "[{}] {:<16} slack={:<24} {}",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.slack,
                c.description
            )?;
        }
        Ok(())
    }
}

/// Integrability of the jump measure and the drift window
/// `0 >= mu^S > -sigma^2 - int (e^x - 1)^2 nu(dx)`. Never fails; violated
/// conditions are entries of the report.
pub fn validate_assumptions(model: &ModelParams) -> ValidationReport {
    let checks = match model {
        ModelParams::Merton(p) => {
            let mu_s = martingale_drift(model);
            let q = quadratic_exp_moment(model);
            let lower = mu_s + p.sigma * p.sigma + q;
            vec![
                ConditionCheck {
                    name: "moments",
                    description: "Gaussian jumps have all exponential moments".into(),
                    passed: true,
                    slack: f64::INFINITY,
                },
                ConditionCheck {
                    name: "mu_s <= 0",
                    description: format!("mu^S = {mu_s}"),
                    passed: mu_s <= 0.0,
                    slack: -mu_s,
                },
                ConditionCheck {
                    name: "mu_s > -denom",
                    description: format!("mu^S + sigma^2 + int(e^x-1)^2 nu = {lower}"),
                    passed: lower > 0.0,
                    slack: lower,
                },
            ]
        }
        ModelParams::VarianceGamma(p) => {
            let spread = p.g - p.m;
            vec![
                ConditionCheck {
                    name: "M > 4",
                    description: format!("M = {}", p.m),
                    passed: p.m > 4.0,
                    slack: p.m - 4.0,
                },
                ConditionCheck {
                    name: "G - M <= -1",
                    description: format!("G - M = {spread} (equivalent to mu^S <= 0)"),
                    passed: spread <= -1.0,
                    slack: -1.0 - spread,
                },
                ConditionCheck {
                    name: "G - M > -3",
                    description: format!(
                        "G - M = {spread} (equivalent to mu^S > -int(e^x-1)^2 nu)"
                    ),
                    passed: spread > -3.0,
                    slack: spread + 3.0,
                },
            ]
        }
    };
    ValidationReport {
        model: model.name(),
        checks,
    }
}

/// One Fourier transform in the decomposition of `I_2`:
/// `coefficient * (1/pi) int_0^inf K'^{1 - i zeta} w(zeta) psi_2(zeta) dv`
/// with `K' = strike` and `w` the spectral weight of `kernel`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct I2Term {
    pub coefficient: f64,
    pub strike: f64,
    pub kernel: SpectralKernel,
}

/// Multiplier applied to the sampled `psi_2` array before transforming.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralKernel {
    /// `w = 1`: the call-price transform `f`.
    Plain,
    /// `w = exp(-variance zeta^2 / 2)`: the damped transform `f~`.
    GaussianDamped { variance: f64 },
    /// `w = int e^{i zeta x} (e^x - 1) nu(dx)` for a CGM density.
    VgLog { c: f64, g: f64, m: f64 },
}

impl SpectralKernel {
    pub fn weight(&self, zeta: Complex64) -> Result<Complex64> {
        match *self {
            SpectralKernel::Plain => Ok(Complex64::new(1.0, 0.0)),
            SpectralKernel::GaussianDamped { variance } => Ok((-0.5 * variance * zeta * zeta).exp()),
            SpectralKernel::VgLog { c, g, m } => vg::kernel(zeta, c, g, m),
        }
    }
}

/// A validated model together with its minimal-martingale-measure quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyModel {
    params: ModelParams,
    mmm: MmmQuantities,
}

impl LevyModel {
    pub fn new(params: impl Into<ModelParams>) -> Result<Self> {
        let params = params.into();
        let mmm = mmm_quantities(&params)?;
        Ok(Self { params, mmm })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn mmm(&self) -> &MmmQuantities {
        &self.mmm
    }

    pub fn name(&self) -> &'static str {
        self.params.name()
    }

    pub fn sigma(&self) -> f64 {
        self.params.sigma()
    }

    pub fn hedge_denominator(&self) -> f64 {
        self.mmm.hedge_denominator(self.sigma())
    }

    /// `E_P~[exp(i zeta L_tau)]`.
    pub fn char_fn(&self, zeta: Complex64, tau: f64) -> Result<Complex64> {
        match &self.params {
            ModelParams::Merton(p) => merton::char_fn(zeta, tau, p, &self.mmm),
            ModelParams::VarianceGamma(p) => vg::char_fn(zeta, tau, p, &self.mmm),
        }
    }

    /// Decomposition of `I_2` at `strike` into weighted call transforms.
    pub fn i2_terms(&self, strike: f64) -> Vec<I2Term> {
        match &self.params {
            ModelParams::Merton(p) => merton::i2_terms(p, strike).terms.to_vec(),
            ModelParams::VarianceGamma(p) => vg::i2_weights(p).terms(strike).to_vec(),
        }
    }

    /// Frequency beyond which the `I_1` integral's tail is below `eps`.
    /// `None` when `I_1` does not enter the hedge ratio (no diffusion).
    pub fn trunc_bound_i1(&self, eps: f64, tau: f64, strike: f64, spot: f64, alpha: f64) -> Option<f64> {
        match &self.params {
            ModelParams::Merton(p) => {
                let c1 = merton::c1(p, &self.mmm, tau, alpha);
                Some(merton::trunc_i1(eps, tau, strike, spot, alpha, c1, p))
            }
            ModelParams::VarianceGamma(_) => None,
        }
    }

    /// Frequency beyond which the `I_2` integral's tail is below `eps`.
    pub fn trunc_bound_i2(&self, eps: f64, tau: f64, strike: f64, spot: f64, alpha: f64) -> f64 {
        match &self.params {
            ModelParams::Merton(p) => {
                let c1 = merton::c1(p, &self.mmm, tau, alpha);
                merton::trunc_i2(eps, tau, strike, spot, alpha, c1, p)
            }
            ModelParams::VarianceGamma(p) => {
                let c2 = vg::c2(p, &self.mmm, tau, alpha);
                vg::trunc(eps, tau, strike, spot, alpha, c2, p)
            }
        }
    }
}

/// Evaluation time, maturity, spot `S_{t-}` and strike.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketQuery {
    pub t: f64,
    pub maturity: f64,
    pub spot: f64,
    pub strike: f64,
}

impl MarketQuery {
    pub fn new(t: f64, maturity: f64, spot: f64, strike: f64) -> Result<Self> {
        require_positive("maturity", maturity)?;
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "t",
                value: t,
                reason: "must be finite and non-negative",
            });
        }
        require_positive("spot", spot)?;
        require_positive("strike", strike)?;
        let tau = maturity - t;
        if !(tau >= TAU_MIN) {
            return Err(Error::MaturityTooShort { tau, min: TAU_MIN });
        }
        Ok(Self {
            t,
            maturity,
            spot,
            strike,
        })
    }

    pub fn tau(&self) -> f64 {
        self.maturity - self.t
    }

    /// `K / S_{t-}`.
    pub fn moneyness(&self) -> f64 {
        self.strike / self.spot
    }

    pub fn log_strike(&self) -> f64 {
        self.strike.ln()
    }
}
