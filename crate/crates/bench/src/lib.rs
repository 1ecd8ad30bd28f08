//! Fixtures shared by the benchmarks: the two strike sweeps whose timings
//! are worth tracking.

use lrm_core::{FftConfig, LevyModel, MertonParams, VgParams, NIKKEI_SPOT};

pub struct Sweep {
    pub name: &'static str,
    pub model: LevyModel,
    pub t: f64,
    pub maturity: f64,
    pub spot: f64,
    pub strikes: Vec<f64>,
    pub config: FftConfig,
}

/// Merton reference set at `t = 0.5`, `K = 1, 1.25, ..., 8`.
pub fn merton_strikes() -> Sweep {
    Sweep {
        name: "merton-29",
        model: LevyModel::new(MertonParams::reference()).expect("reference set is admissible"),
        t: 0.5,
        maturity: 1.0,
        spot: 1.0,
        strikes: (0..29).map(|i| 1.0 + 0.25 * i as f64).collect(),
        config: FftConfig::reference(),
    }
}

/// Nikkei variance gamma at `t = 0.5`, `K = 10000, 11000, ..., 20000`.
pub fn nikkei_strikes() -> Sweep {
    Sweep {
        name: "nikkei-11",
        model: LevyModel::new(VgParams::nikkei()).expect("Nikkei set is admissible"),
        t: 0.5,
        maturity: 1.0,
        spot: NIKKEI_SPOT,
        strikes: (10..=20).map(|k| 1000.0 * k as f64).collect(),
        config: FftConfig::reference(),
    }
}
