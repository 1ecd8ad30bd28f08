use std::io::Write;

use rayon::prelude::*;

use lrm_core::{jump_impact, lrm_sweep, tail_condition_check, truncation_bound, validate_assumptions, EvalMode, JumpImpact, LrmResult, MarketQuery};

use crate::config::RunConfig;
use crate::error::CliError;

pub const CURVE_HEADER: &str = "model,t,tau,spot,strike,moneyness,alpha,n,eta,trunc_bound,mode,i1,i2,lrm";
pub const IMPACT_HEADER: &str = "y,moneyness_before,moneyness_after,lrm_before,lrm_after,impact";

/// 17 significant digits, enough to round-trip any `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Prints the assumption checks and, when the model is admissible, the
/// truncation bound of every query cell against `N eta`.
pub fn cmd_validate(run: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let report = validate_assumptions(&run.params);
    writeln!(out, "model: {}", report.model)?;
    write!(out, "{report}")?;
    if !report.all_passed() {
        writeln!(out, "truncation bounds: skipped, model assumptions violated")?;
        return Err(CliError::Validation(report.failure_summary()));
    }

    let model = run.model()?;
    let available = run.fft.upper_limit();
    writeln!(
        out,
        "fft: n={} eta={} alpha={} eps={} N*eta={}",
        run.fft.n, run.fft.eta, run.fft.alpha, run.fft.eps, available
    )?;
    let mut failures = 0usize;
    for &t in &run.t_grid {
        for &strike in &run.strikes {
            let query = MarketQuery::new(t, run.maturity, run.spot, strike)?;
            let bound = truncation_bound(&model, &query, &run.fft);
            let passed = tail_condition_check(&run.fft, bound);
            failures += usize::from(!passed);
            writeln!(
                out,
                "[{}] tail t={} K={} bound={} N*eta={} slack={}",
                if passed { "pass" } else { "FAIL" },
                t,
                strike,
                bound,
                available,
                available - bound
            )?;
        }
    }
    if failures > 0 {
        return Err(CliError::Validation(format!(
            "tail condition fails for {failures} of {} cells",
            run.cells()
        )));
    }
    Ok(())
}

/// Number of worker threads: `LRM_WORKERS` if set, the core count otherwise.
pub fn worker_count() -> Result<usize, CliError> {
    match std::env::var("LRM_WORKERS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Usage(format!("LRM_WORKERS must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn pool() -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count()?)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

/// Hedge ratios for every `(t, K)` cell, in grid order (t outer, K inner).
///
/// Each `t` is one sweep sharing its transforms across strikes; under
/// direct summation the strikes are independent and are split further.
pub fn curve(run: &RunConfig) -> Result<Vec<LrmResult>, CliError> {
    let model = run.model()?;
    let mode = run.mode.resolve(run.strikes.len());
    let tasks: Vec<(f64, &[f64])> = match mode {
        EvalMode::FftGrid => run.t_grid.iter().map(|&t| (t, run.strikes.as_slice())).collect(),
        _ => run
            .t_grid
            .iter()
            .flat_map(|&t| run.strikes.chunks(1).map(move |k| (t, k)))
            .collect(),
    };
    let batches = pool()?.install(|| {
        tasks
            .par_iter()
            .map(|&(t, strikes)| lrm_sweep(&model, t, run.maturity, run.spot, strikes, &run.fft, mode))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let rows: Vec<LrmResult> = batches.into_iter().flatten().collect();
    debug_assert_eq!(rows.len(), run.cells());
    Ok(rows)
}

pub fn write_curve(model: &str, rows: &[LrmResult], out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "{CURVE_HEADER}")?;
    for r in rows {
        let q = &r.query;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            model,
            num(q.t),
            num(q.tau()),
            num(q.spot),
            num(q.strike),
            num(q.moneyness()),
            num(r.config.alpha),
            r.config.n,
            num(r.config.eta),
            num(r.trunc_a),
            r.mode.as_str(),
            r.i1.map(num).unwrap_or_default(),
            num(r.i2),
            num(r.lrm)
        )?;
    }
    Ok(())
}

/// Jump impacts at the moneyness `K / S` of every strike, for every `y`,
/// strike-major. Requires a single `t`.
pub fn impact(run: &RunConfig, jumps: &[f64]) -> Result<Vec<JumpImpact>, CliError> {
    if jumps.is_empty() {
        return Err(CliError::Usage("impact needs at least one jump size (--y or impact.y)".into()));
    }
    let [t] = run.t_grid[..] else {
        return Err(CliError::Usage(format!(
            "impact takes a single query.t, got {} values",
            run.t_grid.len()
        )));
    };
    let model = run.model()?;
    let tau = run.maturity - t;
    let cells: Vec<(f64, f64)> = run
        .strikes
        .iter()
        .flat_map(|&k| jumps.iter().map(move |&y| (k / run.spot, y)))
        .collect();
    let rows = pool()?.install(|| {
        cells
            .par_iter()
            .map(|&(moneyness, y)| jump_impact(y, moneyness, tau, &model, &run.fft))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(rows)
}

pub fn write_impact(rows: &[JumpImpact], out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "{IMPACT_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            num(r.y),
            num(r.moneyness_before),
            num(r.moneyness_after),
            num(r.lrm_before),
            num(r.lrm_after),
            num(r.impact)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-2.5), "-2.5000000000000000e0");
        for x in [0.930690669424, 1e-300, 14841.07, -0.031279] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }
}
