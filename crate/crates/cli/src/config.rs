//! Flat `key = value` run configuration.
//!
//! Lines are `section.key = value`; `#` starts a comment, blank lines are
//! ignored. Grids are written either as a comma-separated list
//! (`1, 1.5, 2`) or as an inclusive range `start:stop:step`. The full schema
//! is documented in `docs/config.md`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use lrm_core::{EvalMode, FftConfig, LevyModel, MarketQuery, MertonParams, ModelParams, VgParams, Weighting};

use crate::error::CliError;

/// Every key the parser understands. Anything else is rejected so that a
/// typo cannot silently fall back to a default.
const KNOWN_KEYS: &[&str] = &[
    "model.kind",
    "model.mu",
    "model.sigma",
    "model.gamma",
    "model.m",
    "model.delta",
    "model.kappa",
    "model.c",
    "model.g",
    "fft.n",
    "fft.eta",
    "fft.alpha",
    "fft.eps",
    "fft.weighting",
    "query.t",
    "query.strike",
    "query.spot",
    "query.maturity",
    "output.path",
    "output.mode",
    "impact.y",
];

/// Raw key/value pairs, later entries overriding earlier ones.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut raw = RawConfig::default();
        for (number, line) in text.lines().enumerate() {
            let line = match line.find('#') {
                Some(i) => &line[..i],
                None => line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| CliError::Syntax {
                line: number + 1,
                reason: "expected `key = value`".into(),
            })?;
            let key = key.trim();
            if raw.entries.contains_key(key) {
                return Err(CliError::Syntax {
                    line: number + 1,
                    reason: format!("duplicate key `{key}`"),
                });
            }
            raw.insert(key, value.trim()).map_err(|e| match e {
                CliError::UnknownKey(key) => CliError::Syntax {
                    line: number + 1,
                    reason: format!("unknown key `{key}`"),
                },
                other => other,
            })?;
        }
        Ok(raw)
    }

    /// Layers `other` on top. A layer that names its own `model.kind` brings
    /// its own parameters, so the base's model keys are dropped.
    pub fn merge(&mut self, other: RawConfig) {
        if other.entries.contains_key("model.kind") {
            self.entries.retain(|k, _| !k.starts_with("model."));
        }
        self.entries.extend(other.entries);
    }

    /// Applies a `key=value` override from the command line.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("override `{assignment}` is not of the form key=value")))?;
        self.insert(key.trim(), value.trim())
    }

    fn insert(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        if !KNOWN_KEYS.contains(&key) {
            return Err(CliError::UnknownKey(key.to_string()));
        }
        self.entries.insert(key.to_string(), value.to_string());
        Ok(())
    }

    fn get(&self, key: &'static str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    fn number(&self, key: &'static str) -> Result<Option<f64>, CliError> {
        self.get(key).map(|v| parse_number(key, v)).transpose()
    }

    fn required(&self, key: &'static str) -> Result<f64, CliError> {
        self.number(key)?.ok_or(CliError::MissingKey(key))
    }

    fn number_or(&self, key: &'static str, default: f64) -> Result<f64, CliError> {
        Ok(self.number(key)?.unwrap_or(default))
    }
}

/// Where the CSV goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Output {
    Stdout,
    File(PathBuf),
}

/// A schema-checked run: the model is built, the FFT configuration and every
/// query cell have passed their constructors' checks.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: ModelParams,
    pub fft: FftConfig,
    pub t_grid: Vec<f64>,
    pub strikes: Vec<f64>,
    pub spot: f64,
    pub maturity: f64,
    pub mode: EvalMode,
    pub output: Output,
    pub jumps: Vec<f64>,
}

impl RunConfig {
    pub fn from_raw(raw: &RawConfig) -> Result<Self, CliError> {
        let params = model_params(raw)?;

        let reference = FftConfig::reference();
        let n = match raw.get("fft.n") {
            Some(v) => parse_size("fft.n", v)?,
            None => reference.n,
        };
        let weighting = match raw.get("fft.weighting") {
            None | Some("simpson") => Weighting::Simpson,
            Some("trapezoid") => Weighting::Trapezoid,
            Some(other) => return Err(invalid("fft.weighting", other, "expected simpson or trapezoid")),
        };
        let fft = FftConfig::new(
            n,
            raw.number_or("fft.eta", reference.eta)?,
            raw.number_or("fft.alpha", reference.alpha)?,
            raw.number_or("fft.eps", reference.eps)?,
        )?
        .with_weighting(weighting);

        let t_grid = grid(raw, "query.t")?.unwrap_or_else(|| vec![0.0]);
        let strikes = grid(raw, "query.strike")?.ok_or(CliError::MissingKey("query.strike"))?;
        let spot = raw.number_or("query.spot", 1.0)?;
        let maturity = raw.number_or("query.maturity", 1.0)?;
        for &t in &t_grid {
            for &strike in &strikes {
                MarketQuery::new(t, maturity, spot, strike)?;
            }
        }

        let mode = match raw.get("output.mode") {
            Some(v) => v.parse::<EvalMode>().map_err(|e| invalid("output.mode", v, &e))?,
            None => EvalMode::Auto,
        };
        let output = match raw.get("output.path") {
            None | Some("-") | Some("") => Output::Stdout,
            Some(path) => Output::File(PathBuf::from(path)),
        };
        let jumps = match raw.get("impact.y") {
            Some(v) => parse_grid("impact.y", v)?,
            None => Vec::new(),
        };

        Ok(Self {
            params,
            fft,
            t_grid,
            strikes,
            spot,
            maturity,
            mode,
            output,
            jumps,
        })
    }

    /// Builds the model, failing if the parameters violate the standing
    /// assumptions.
    pub fn model(&self) -> Result<LevyModel, CliError> {
        Ok(LevyModel::new(self.params)?)
    }

    pub fn cells(&self) -> usize {
        self.t_grid.len() * self.strikes.len()
    }
}

fn model_params(raw: &RawConfig) -> Result<ModelParams, CliError> {
    let kind = raw.get("model.kind").ok_or(CliError::MissingKey("model.kind"))?;
    let params = match kind {
        "merton" => MertonParams::new(
            raw.required("model.mu")?,
            raw.required("model.sigma")?,
            raw.required("model.gamma")?,
            raw.required("model.m")?,
            raw.required("model.delta")?,
        )?
        .into(),
        "vg" => VgParams::from_kmd(
            raw.required("model.kappa")?,
            raw.required("model.m")?,
            raw.required("model.delta")?,
        )?
        .into(),
        "vg-cgm" => VgParams::from_cgm(raw.required("model.c")?, raw.required("model.g")?, raw.required("model.m")?)?.into(),
        other => return Err(invalid("model.kind", other, "expected merton, vg or vg-cgm")),
    };
    let allowed: &[&str] = match kind {
        "merton" => &["model.mu", "model.sigma", "model.gamma", "model.m", "model.delta"],
        "vg" => &["model.kappa", "model.m", "model.delta"],
        _ => &["model.c", "model.g", "model.m"],
    };
    if let Some(stray) = raw
        .entries
        .keys()
        .find(|k| k.starts_with("model.") && *k != "model.kind" && !allowed.contains(&k.as_str()))
    {
        return Err(invalid(stray, raw.entries[stray].as_str(), &format!("not a parameter of model.kind = {kind}")));
    }
    Ok(params)
}

fn grid(raw: &RawConfig, key: &'static str) -> Result<Option<Vec<f64>>, CliError> {
    raw.get(key).map(|v| parse_grid(key, v)).transpose()
}

fn invalid(key: &str, value: &str, reason: &str) -> CliError {
    CliError::InvalidValue {
        key: key.to_string(),
        value: value.to_string(),
        reason: reason.to_string(),
    }
}

fn parse_number(key: &str, value: &str) -> Result<f64, CliError> {
    match value.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(invalid(key, value, "expected a finite number")),
    }
}

/// Accepts `16384` as well as `2^14`.
fn parse_size(key: &str, value: &str) -> Result<usize, CliError> {
    let parsed = match value.split_once('^') {
        Some((base, exp)) => match (base.trim().parse::<usize>(), exp.trim().parse::<u32>()) {
            (Ok(base), Ok(exp)) => base.checked_pow(exp),
            _ => None,
        },
        None => value.parse::<usize>().ok(),
    };
    parsed.ok_or_else(|| invalid(key, value, "expected a positive integer such as 16384 or 2^14"))
}

/// A list `a, b, c`, a range `start:stop:step` (stop included when it lies
/// on the lattice), or a single number.
pub fn parse_grid(key: &str, value: &str) -> Result<Vec<f64>, CliError> {
    let value = value.trim();
    if value.is_empty() {
        return Ok(Vec::new());
    }
    if value.contains(':') {
        let parts: Vec<&str> = value.split(':').map(str::trim).collect();
        let [start, stop, step] = parts[..] else {
            return Err(invalid(key, value, "a range is written start:stop:step"));
        };
        let (start, stop, step) = (parse_number(key, start)?, parse_number(key, stop)?, parse_number(key, step)?);
        if step <= 0.0 || stop < start {
            return Err(invalid(key, value, "a range needs step > 0 and stop >= start"));
        }
        // Points are start + i*step rather than a running sum, so that the
        // lattice is reproduced exactly whatever its length.
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        return Ok((0..count).map(|i| start + i as f64 * step).collect());
    }
    value.split(',').map(|item| parse_number(key, item.trim())).collect()
}
