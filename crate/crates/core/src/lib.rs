//! Locally risk-minimizing hedge ratios for European calls under exponential
//! Lévy models, computed with the Carr–Madan FFT.
//!
//! ```
//! use lrm_core::{lrm, FftConfig, LevyModel, MarketQuery, MertonParams};
//!
//! let model = LevyModel::new(MertonParams::reference())?;
//! let query = MarketQuery::new(0.5, 1.0, 1.0, 1.0)?;
//! let result = lrm(&query, &model, &FftConfig::reference())?;
//! assert!(result.lrm > 0.0 && result.lrm < 1.0);
//! # Ok::<(), lrm_core::Error>(())
//! ```

pub mod error;
pub mod fft;
pub mod levy;
pub mod lrm;
pub mod merton;
pub mod oracle;
pub mod vg;

pub use error::{Error, Result};
pub use fft::{
    carr_madan_grid, direct_simpson_sum, radix2_fft, simpson_weights, tail_condition_check, CarrMadanGrid,
    DampedTransformRequest, FftConfig, Weighting,
};
pub use levy::{
    mmm_quantities, validate_assumptions, ConditionCheck, I2Term, LevyModel, MarketQuery, MertonParams, MmmQuantities,
    ModelParams, SpectralKernel, ValidationReport, VgParams, NIKKEI_SPOT, TAU_MIN,
};
pub use lrm::{
    i1, i2, jump_impact, lrm, lrm_by_moneyness, lrm_sweep, lrm_with_mode, truncation_bound, EvalMode, JumpImpact,
    LrmResult, MoneynessQuery,
};
