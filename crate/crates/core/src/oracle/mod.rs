//! Slow, independent reference computations used to check the production
//! path: adaptive quadrature, a literal DFT and numerical Lévy–Khintchine
//! integrals. Nothing outside this module depends on it.
//!
//! Closed forms are deliberately avoided here wherever a direct numerical
//! route exists: the measure change is applied to the density as
//! `(1 - h (e^x - 1)) nu(x)` instead of through its component form, and `I_2`
//! is integrated from its definition instead of through the spectral
//! decomposition.

mod dft;
mod hedge;
mod measure;
mod merton_series;
mod quadrature;

pub use dft::naive_dft;
pub use hedge::{call_price, quad_i1, quad_i2_definition, quad_lrm, OracleLrm, ORACLE_ALPHA};
pub use measure::{
    integrate_against, kernel, lk_char_fn, mmm_quantities, mu_s, mu_star, quadratic_exp_moment, TransformedMeasure,
};
pub use merton_series::{merton_series, MertonSeries};
pub use quadrature::{geometric_breakpoints, integrate, integrate_with_breakpoints, Domain, Estimate, QuadValue, QuadratureSpec};
