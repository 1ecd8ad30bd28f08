//! The locally risk-minimizing hedge ratio
//! `LRM = (sigma^2 I_1 + I_2) / (S (sigma^2 + int (e^x - 1)^2 nu(dx)))`
//! for a European call, with
//!
//! * `I_1 = E_P~[S_T 1{S_T > K}]`, and
//! * `I_2 = int E_P~[(S_T e^x - K)^+ - (S_T - K)^+] (e^x - 1) nu(dx)`,
//!
//! both evaluated through damped Fourier transforms of the characteristic
//! function under the minimal martingale measure.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft::{carr_madan_grid, direct_sum_complex, tail_condition_check, DampedTransformRequest, FftConfig};
use crate::levy::{LevyModel, MarketQuery, ModelParams, SpectralKernel};

/// How the damped transforms are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMode {
    /// One FFT per transform on the whole log-strike grid, then monotone
    /// cubic interpolation at each strike.
    FftGrid,
    /// The Simpson sum evaluated at exactly `log K`, `O(N)` per strike.
    DirectSum,
    /// Direct summation for up to [`EvalMode::AUTO_DIRECT_LIMIT`] strikes,
    /// the FFT grid beyond.
    #[default]
    Auto,
}

impl EvalMode {
    pub const AUTO_DIRECT_LIMIT: usize = 4;

    pub fn resolve(self, strikes: usize) -> EvalMode {
        match self {
            EvalMode::Auto if strikes <= Self::AUTO_DIRECT_LIMIT => EvalMode::DirectSum,
            EvalMode::Auto => EvalMode::FftGrid,
            other => other,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            EvalMode::FftGrid => "fft-grid",
            EvalMode::DirectSum => "direct-sum",
            EvalMode::Auto => "auto",
        }
    }
}

impl std::str::FromStr for EvalMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "fft-grid" | "fft" => Ok(EvalMode::FftGrid),
            "direct-sum" | "direct" => Ok(EvalMode::DirectSum),
            "auto" => Ok(EvalMode::Auto),
            other => Err(format!("unknown mode `{other}` (expected fft-grid, direct-sum or auto)")),
        }
    }
}

/// Hedge ratio at one `(t, K)` cell together with its ingredients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LrmResult {
    pub query: MarketQuery,
    /// Units of the risky asset to hold.
    pub lrm: f64,
    /// `None` for models without a diffusion part, where `I_1` is skipped.
    pub i1: Option<f64>,
    pub i2: f64,
    /// Truncation point the grid `[0, N eta]` had to cover.
    pub trunc_a: f64,
    /// Resolved evaluation mode, never [`EvalMode::Auto`].
    pub mode: EvalMode,
    pub config: FftConfig,
}

impl LrmResult {
    /// The ratio is not clamped; values outside `[0, 1]` point at a
    /// discretization problem and are flagged rather than hidden.
    pub fn out_of_unit_interval(&self) -> bool {
        !(0.0..=1.0).contains(&self.lrm)
    }
}

/// Query expressed through moneyness `K / S_{t-}` and time to maturity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoneynessQuery {
    pub moneyness: f64,
    pub tau: f64,
}

impl MoneynessQuery {
    pub fn new(moneyness: f64, tau: f64) -> Result<Self> {
        // Delegate the checks to the equivalent market query.
        MarketQuery::new(0.0, tau, 1.0, moneyness)?;
        Ok(Self { moneyness, tau })
    }

    pub fn to_market_query(&self) -> MarketQuery {
        MarketQuery {
            t: 0.0,
            maturity: self.tau,
            spot: 1.0,
            strike: self.moneyness,
        }
    }
}

/// Effect `LRM(m e^{-y}) - LRM(m)` of a jump of size `y` in the log-price.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpImpact {
    pub y: f64,
    pub moneyness_before: f64,
    pub moneyness_after: f64,
    pub lrm_before: f64,
    pub lrm_after: f64,
    pub impact: f64,
}

/// Truncation point for the transforms at one strike, measured in units of
/// the spot: the bounds are evaluated at `(K / S, 1)` so that `eps` bounds the
/// tail error of `I / S`, the scale on which the hedge ratio lives.
pub fn truncation_bound(model: &LevyModel, query: &MarketQuery, config: &FftConfig) -> f64 {
    let (tau, moneyness) = (query.tau(), query.moneyness());
    let i2 = model.trunc_bound_i2(config.eps, tau, moneyness, 1.0, config.alpha);
    match model.trunc_bound_i1(config.eps, tau, moneyness, 1.0, config.alpha) {
        Some(i1) => i1.max(i2),
        None => i2,
    }
}

fn check_tail(model: &LevyModel, query: &MarketQuery, config: &FftConfig) -> Result<f64> {
    let required = truncation_bound(model, query, config);
    if tail_condition_check(config, required) {
        Ok(required)
    } else {
        Err(Error::TailCondition {
            required,
            available: config.upper_limit(),
        })
    }
}

/// `phi_tau(zeta) S^{i zeta}` on the contour `zeta_j = eta j - i alpha`.
struct ContourSamples {
    zeta: Vec<Complex64>,
    base: Vec<Complex64>,
}

impl ContourSamples {
    fn new(model: &LevyModel, tau: f64, spot: f64, config: &FftConfig) -> Result<Self> {
        let log_spot = spot.ln();
        let zeta: Vec<Complex64> = config
            .frequencies()
            .map(|v| Complex64::new(v, -config.alpha))
            .collect();
        let base = zeta
            .iter()
            .map(|&z| Ok(model.char_fn(z, tau)? * (Complex64::i() * z * log_spot).exp()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { zeta, base })
    }

    /// `psi_1(zeta) = phi S^{i zeta} / (i zeta - 1)`.
    fn psi1(&self) -> Vec<Complex64> {
        self.zeta
            .iter()
            .zip(&self.base)
            .map(|(&z, &b)| b / (Complex64::i() * z - 1.0))
            .collect()
    }

    /// `w(zeta) psi_2(zeta)` with `psi_2 = phi S^{i zeta} / ((i zeta - 1) i zeta)`.
    fn weighted_psi2(&self, kernel: &SpectralKernel) -> Result<Vec<Complex64>> {
        self.zeta
            .iter()
            .zip(&self.base)
            .map(|(&z, &b)| {
                let iz = Complex64::i() * z;
                Ok(kernel.weight(z)? * b / ((iz - 1.0) * iz))
            })
            .collect()
    }
}

/// Evaluates `K (1/pi) Re int_0^inf K^{-i zeta} psi(zeta) dv` for one sampled
/// `psi` at arbitrary strikes.
enum StrikeTransform {
    Grid(crate::fft::CarrMadanGrid),
    Direct(Vec<Complex64>),
}

impl StrikeTransform {
    fn new(samples: Vec<Complex64>, mode: EvalMode, config: &FftConfig) -> Result<Self> {
        match mode {
            EvalMode::FftGrid => {
                let request = DampedTransformRequest::new(samples, config)?;
                let mut grid = carr_madan_grid(&request)?;
                // Interpolate the undamped transform `K C(log K)`, which is
                // smooth and bounded on the range of interest.
                for (l, value) in grid.values.iter_mut().enumerate() {
                    *value *= (grid.first_log_strike + l as f64 * grid.spacing).exp();
                }
                Ok(StrikeTransform::Grid(grid))
            }
            _ => {
                DampedTransformRequest::new(samples.clone(), config)?;
                Ok(StrikeTransform::Direct(samples))
            }
        }
    }

    fn at(&self, strike: f64, config: &FftConfig) -> Result<f64> {
        let k = strike.ln();
        config.check_log_strike(k)?;
        match self {
            StrikeTransform::Grid(grid) => grid.interpolate(k),
            StrikeTransform::Direct(samples) => {
                Ok(strike * direct_sum_complex(samples, config.alpha, config.eta, k, config.weighting).re)
            }
        }
    }
}

/// All transforms needed for a strike sweep at fixed `(tau, S)`: `psi_1`
/// (diffusion models only) and one `w psi_2` per distinct `I_2` kernel.
struct SweepTransforms {
    i1: Option<StrikeTransform>,
    i2: Vec<(SpectralKernel, StrikeTransform)>,
}

impl SweepTransforms {
    fn new(model: &LevyModel, tau: f64, spot: f64, mode: EvalMode, config: &FftConfig) -> Result<Self> {
        let samples = ContourSamples::new(model, tau, spot, config)?;
        let i1 = match model.params() {
            ModelParams::Merton(_) => Some(StrikeTransform::new(samples.psi1(), mode, config)?),
            ModelParams::VarianceGamma(_) => None,
        };
        // The kernels do not depend on the strike; any strike lists them.
        let mut i2 = Vec::new();
        for term in model.i2_terms(1.0) {
            if i2.iter().all(|(k, _)| *k != term.kernel) {
                let transform = StrikeTransform::new(samples.weighted_psi2(&term.kernel)?, mode, config)?;
                i2.push((term.kernel, transform));
            }
        }
        Ok(Self { i1, i2 })
    }

    fn i1(&self, strike: f64, config: &FftConfig) -> Result<Option<f64>> {
        self.i1.as_ref().map(|t| t.at(strike, config)).transpose()
    }

    fn i2(&self, model: &LevyModel, strike: f64, config: &FftConfig) -> Result<f64> {
        let mut total = 0.0;
        for term in model.i2_terms(strike) {
            if term.coefficient == 0.0 {
                continue;
            }
            let (_, transform) = self
                .i2
                .iter()
                .find(|(k, _)| *k == term.kernel)
                .expect("every kernel has a transform");
            total += term.coefficient * transform.at(term.strike, config)?;
        }
        Ok(total)
    }
}

/// `I_1 = E_P~[S_T 1{S_T > K} | F_{t-}]`. Only defined for models with a
/// diffusion part.
pub fn i1(query: &MarketQuery, model: &LevyModel, config: &FftConfig) -> Result<f64> {
    if let ModelParams::VarianceGamma(_) = model.params() {
        return Err(Error::ModelMismatch {
            operation: "i1",
            model: model.name(),
        });
    }
    check_tail(model, query, config)?;
    let samples = ContourSamples::new(model, query.tau(), query.spot, config)?;
    StrikeTransform::new(samples.psi1(), EvalMode::DirectSum, config)?.at(query.strike, config)
}

pub fn i2(query: &MarketQuery, model: &LevyModel, config: &FftConfig) -> Result<f64> {
    check_tail(model, query, config)?;
    SweepTransforms::new(model, query.tau(), query.spot, EvalMode::DirectSum, config)?.i2(model, query.strike, config)
}

/// Hedge ratio at a single cell; [`EvalMode::Auto`] resolves to direct
/// summation.
pub fn lrm(query: &MarketQuery, model: &LevyModel, config: &FftConfig) -> Result<LrmResult> {
    lrm_with_mode(query, model, config, EvalMode::Auto)
}

pub fn lrm_with_mode(query: &MarketQuery, model: &LevyModel, config: &FftConfig, mode: EvalMode) -> Result<LrmResult> {
    let mut results = lrm_sweep(model, query.t, query.maturity, query.spot, &[query.strike], config, mode)?;
    Ok(results.pop().expect("one strike in, one result out"))
}

/// Hedge ratios for several strikes at the same `(t, T, S)`. The contour
/// samples are computed once and every kernel is transformed once, however
/// many strikes there are.
pub fn lrm_sweep(
    model: &LevyModel,
    t: f64,
    maturity: f64,
    spot: f64,
    strikes: &[f64],
    config: &FftConfig,
    mode: EvalMode,
) -> Result<Vec<LrmResult>> {
    let queries = strikes
        .iter()
        .map(|&k| MarketQuery::new(t, maturity, spot, k))
        .collect::<Result<Vec<_>>>()?;
    let bounds = queries
        .iter()
        .map(|q| check_tail(model, q, config))
        .collect::<Result<Vec<_>>>()?;
    if queries.is_empty() {
        return Ok(Vec::new());
    }
    let mode = mode.resolve(strikes.len());
    let transforms = SweepTransforms::new(model, maturity - t, spot, mode, config)?;
    let sigma2 = model.sigma() * model.sigma();
    let denominator = spot * model.hedge_denominator();
    queries
        .into_iter()
        .zip(bounds)
        .map(|(query, trunc_a)| {
            let i1 = transforms.i1(query.strike, config)?;
            let i2 = transforms.i2(model, query.strike, config)?;
            let numerator = sigma2 * i1.unwrap_or(0.0) + i2;
            Ok(LrmResult {
                query,
                lrm: numerator / denominator,
                i1,
                i2,
                trunc_a,
                mode,
                config: *config,
            })
        })
        .collect()
}

/// `LRM` at spot 1 and strike equal to the moneyness; the hedge ratio only
/// depends on `K / S_{t-}`.
pub fn lrm_by_moneyness(query: &MoneynessQuery, model: &LevyModel, config: &FftConfig) -> Result<LrmResult> {
    lrm(&query.to_market_query(), model, config)
}

/// Change of the hedge ratio when the log-price jumps by `y`, which moves the
/// moneyness from `m` to `m e^{-y}`.
pub fn jump_impact(y: f64, moneyness: f64, tau: f64, model: &LevyModel, config: &FftConfig) -> Result<JumpImpact> {
    if !(y.is_finite() && y != 0.0) {
        return Err(Error::InvalidParameter {
            name: "y",
            value: y,
            reason: "jump size must be finite and non-zero",
        });
    }
    let before = MoneynessQuery::new(moneyness, tau)?;
    let after = MoneynessQuery::new(moneyness * (-y).exp(), tau)?;
    let lrm_before = lrm_by_moneyness(&before, model, config)?.lrm;
    let lrm_after = lrm_by_moneyness(&after, model, config)?.lrm;
    Ok(JumpImpact {
        y,
        moneyness_before: before.moneyness,
        moneyness_after: after.moneyness,
        lrm_before,
        lrm_after,
        impact: lrm_after - lrm_before,
    })
}
