//! `scan`: closure residual over a grid of initial parameters.

use serde_json::json;

use projbill::dynamics::{default_ranges, scan, ScanReport};
use projbill::Scalar;

use crate::error::CliError;
use crate::{with_field, Context};

/// Grid scan with the configured or default window.
pub(crate) fn grid_scan<S: Scalar>(ctx: &Context) -> Result<ScanReport, CliError> {
    let bil = ctx.config.billiard::<S>()?;
    let (ds, dt) = default_ranges(&bil);
    let run = &ctx.config.run;
    let s_range = run.s_range.map_or(ds, |[a, b]| (a, b));
    let t_range = run.t_range.map_or(dt, |[a, b]| (a, b));
    Ok(scan(&bil, ctx.settings.grid, s_range, t_range, ctx.settings.tol))
}

pub(crate) fn summary_json(report: &ScanReport) -> serde_json::Value {
    json!({
        "grid": report.grid,
        "s_range": report.s_range,
        "t_range": report.t_range,
        "tol": report.tol,
        "min": finite(report.min),
        "max": finite(report.max),
        "mean": finite(report.mean),
        "fraction_below_tol": report.fraction_below_tol,
        "degenerate": report.degenerate,
        "exact_zeros": report.exact_zeros,
    })
}

/// JSON has no infinities or NaN.
fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub fn run(ctx: &Context) -> Result<bool, CliError> {
    let report = with_field!(ctx.settings.field, S => grid_scan::<S>(ctx))?;
    ctx.out.write("scan.csv", &report.to_csv())?;
    ctx.out.write_json(
        "report.json",
        &json!({"command": "scan", "settings": ctx.settings, "scan": summary_json(&report)}),
    )?;
    println!(
        "scan: {0}x{0} grid, max residual {1:.3e}, fraction below {2:.1e} = {3}, degenerate cells {4}",
        report.grid, report.max, report.tol, report.fraction_below_tol, report.degenerate
    );
    Ok(true)
}
