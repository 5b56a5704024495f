//! One function per CLI subcommand. Each writes its report to `out` and
//! returns the exit code, or a [`CliError`] carrying one.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use super::figure::{self, write_figure};
use super::io::load_dist;
use super::verify::{run_verify, VerifyConfig};
use super::{exit, CliError};
use crate::bounds::{bound_report, Tolerance};
use crate::divergence::{self, RenyiOrder};
use crate::sanov;
use crate::Unit;

/// Divergence measures selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Measure {
    Tv,
    Kl,
    Chi2,
    Renyi,
}

/// Default orders reported by `bounds`.
pub const DEFAULT_ORDERS: &[f64] = &[
    0.0,
    0.25,
    0.5,
    0.75,
    1.0,
    1.5,
    2.0,
    3.0,
    10.0,
    f64::INFINITY,
];

fn io_err(e: std::io::Error) -> CliError {
    CliError::Input(format!("write failed: {e}"))
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).map_err(|e| CliError::Input(e.to_string()))?;
    writeln!(out, "{text}").map_err(io_err)
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn cmd_div(
    p_path: &Path,
    q_path: &Path,
    measure: Measure,
    alpha: Option<RenyiOrder>,
    unit: Unit,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let p = load_dist(p_path)?;
    let q = load_dist(q_path)?;
    let (value, unit_label, finite) = match measure {
        Measure::Tv => {
            let tv = divergence::total_variation(&p, &q)?;
            (tv, "unitless", true)
        }
        m => {
            let v = match m {
                Measure::Kl => divergence::kl(&p, &q)?,
                Measure::Chi2 => divergence::chi2(&p, &q)?,
                _ => {
                    let order = alpha
                        .ok_or_else(|| CliError::Input("--alpha is required for renyi".into()))?;
                    divergence::renyi(&p, &q, order)?
                }
            };
            // χ² is a plain ratio, not an information quantity
            let v = if m == Measure::Chi2 { v } else { v.to(unit) };
            let label = if m == Measure::Chi2 {
                "unitless"
            } else {
                unit.as_str()
            };
            (v.value, label, v.is_finite())
        }
    };
    let mut report = json!({
        "measure": format!("{measure:?}").to_lowercase(),
        "value": finite_or_null(value),
        "unit": unit_label,
        "finite": finite,
    });
    if measure == Measure::Renyi {
        report["alpha"] =
            serde_json::to_value(alpha).map_err(|e| CliError::Input(e.to_string()))?;
    }
    emit(out, &report)?;
    Ok(exit::OK)
}

pub fn cmd_bounds(
    p_path: &Path,
    q_path: &Path,
    orders: &[RenyiOrder],
    unit: Unit,
    tolerance: Tolerance,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let p = load_dist(p_path)?;
    let q = load_dist(q_path)?;
    let report = bound_report(&p, &q, orders)?;
    let violations = report.violations(tolerance);
    let m = &report.measured;
    let info = |x: f64| finite_or_null(unit.from_nats(x));
    let renyi: Vec<Value> = m
        .renyi
        .iter()
        .map(|(o, v)| json!({ "alpha": o, "value": info(*v) }))
        .collect();
    let doc = json!({
        "unit": unit,
        "stats": report.stats,
        "measured": {
            "tv": m.tv,
            "kl": info(m.kl),
            "chi2": finite_or_null(m.chi2),
            "tv_from_uniform": m.tv_from_uniform,
            "renyi": renyi,
        },
        "bounds": report.bounds,
        "violations": violations,
    });
    emit(out, &doc)?;
    if violations.is_empty() {
        Ok(exit::OK)
    } else {
        let ids: Vec<&str> = violations.iter().map(|v| v.bound_id).collect();
        Err(CliError::TheoremViolation(format!(
            "bounds violated: {}",
            ids.join(", ")
        )))
    }
}

pub fn cmd_verify(
    config: &VerifyConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    if config.trials == 0 {
        writeln!(err, "warning: --trials 0, nothing to verify").map_err(io_err)?;
    }
    if let Some(&n) = config.alphabet_sizes.iter().find(|&&n| n < 2) {
        return Err(CliError::Input(format!(
            "alphabet sizes must be at least 2, got {n}"
        )));
    }
    let summary = run_verify(config);
    write!(out, "{}", summary.render(config.unit)).map_err(io_err)?;
    if summary.total_violations() == 0 {
        Ok(exit::OK)
    } else {
        let failing: Vec<&str> = summary
            .tallies
            .iter()
            .filter(|t| t.violations > 0)
            .map(|t| t.property)
            .collect();
        Err(CliError::PropertyViolation(format!(
            "properties violated: {}",
            failing.join(", ")
        )))
    }
}

pub fn cmd_figure(
    which: u8,
    out_dir: &Path,
    resolution: usize,
    unit: Unit,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let written = write_figure(which, out_dir, resolution, unit)
        .map_err(|e| CliError::Input(format!("{}: {e}", out_dir.display())))?;
    for path in written {
        writeln!(out, "wrote {}", path.display()).map_err(io_err)?;
    }
    if which == 2 {
        let crossover = figure::figure2_crossover()?;
        writeln!(out, "composite bound leaves f1 at alpha = {crossover:.6}").map_err(io_err)?;
    }
    Ok(exit::OK)
}

pub fn cmd_sanov(
    q_path: &Path,
    delta: f64,
    grid: usize,
    passes: usize,
    unit: Unit,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let q = load_dist(q_path)?;
    let r = sanov::sanov_oracle(&q, delta, grid, passes)?;
    let info = |x: f64| finite_or_null(unit.from_nats(x));
    let doc = json!({
        "unit": unit,
        "delta": r.delta,
        "oracle_value": info(r.oracle_value),
        "oracle_tolerance": info(r.oracle_tolerance),
        "lower_bound": info(r.lower_bound),
        "upper_bound": r.upper_bound.map(info),
        "boundary_tv": finite_or_null(r.boundary_tv),
        "minimizer": r.minimizer,
        "grid_points_per_dim": r.grid_points_per_dim,
        "refinement_passes": r.refinement_passes,
        "final_step": r.final_step,
        "sandwich_holds": r.sandwich_holds(),
    });
    emit(out, &doc)?;
    if r.sandwich_holds() {
        Ok(exit::OK)
    } else {
        Err(CliError::TheoremViolation(format!(
            "exponent sandwich violated: lower {} oracle {} upper {:?}",
            r.lower_bound, r.oracle_value, r.upper_bound
        )))
    }
}
