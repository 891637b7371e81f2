//! `orbit`: iterate the billiard map and report per-vertex defects.

use num_complex::Complex64;
use serde_json::{json, Value};

use projbill::dynamics::iterate;
use projbill::Scalar;

use crate::config::{Num, RunSpec};
use crate::error::CliError;
use crate::output::{line_json, point_json, JsonScalar};
use crate::{plot, with_field, Context};

/// Initial parameter: the configured value (plus `i·im` in complex mode),
/// else the point `k/5` of the way through the sampling bounds.
pub(crate) fn initial<S: Scalar>(value: Option<Num>, im: Option<f64>, bounds: (f64, f64), k: i64) -> S {
    let re = match value {
        Some(v) => v.to_scalar::<S>(),
        None => {
            let (lo, hi) = (S::from_f64(bounds.0), S::from_f64(bounds.1));
            lo.clone() + (hi - lo) * S::from_ratio(k, 5)
        }
    };
    match im {
        Some(y) if S::MODE == projbill::FieldMode::Complex => re + S::from_c64(Complex64::new(0.0, y)),
        _ => re,
    }
}

pub(crate) fn initial_pair<S: Scalar>(run: &RunSpec, bil: &projbill::curves::Billiard<S>) -> (S, S) {
    let s = initial(run.s, run.s_im, bil.piece(0).domain().sample_bounds(), 2);
    let t = initial(run.t, run.t_im, bil.piece(1).domain().sample_bounds(), 3);
    (s, t)
}

fn trace<S: JsonScalar>(ctx: &Context) -> Result<bool, CliError> {
    let bil = ctx.config.billiard::<S>()?;
    let (s, t) = initial_pair::<S>(&ctx.config.run, &bil);
    let steps = ctx.config.run.steps.unwrap_or(bil.len());
    let orbit = iterate(&bil, &s, &t, steps)?;
    let defects = orbit.defects(&bil);
    let max_defect = defects
        .iter()
        .map(|d| d.reflection.max(d.on_curve).max(d.chain))
        .fold(0.0, f64::max);
    let pass = max_defect <= ctx.settings.tol;
    let vertices: Vec<Value> = orbit
        .vertices
        .iter()
        .map(|v| {
            json!({
                "piece": v.point.curve_id,
                "param": v.point.param.to_json(),
                "point": point_json(&v.point.point),
                "frame": line_json(&v.point.frame),
                "tangent": line_json(&v.point.tangent),
            })
        })
        .collect();
    let report = json!({
        "command": "orbit",
        "settings": ctx.settings,
        "s": s.to_json(),
        "t": t.to_json(),
        "steps": steps,
        "vertices": vertices,
        "defects": defects,
        "max_defect": max_defect,
        "periodic": orbit.periodic,
        "pass": pass,
    });
    ctx.out.write_json("report.json", &report)?;
    if let Some(vp) = ctx.config.run.viewport {
        if S::MODE != projbill::FieldMode::Complex {
            let real = bil.map(|x| x.real());
            let pts: Vec<_> = orbit.vertices.iter().map(|v| v.point.point.map(|x| x.real())).collect();
            ctx.out.write("plot.svg", &plot::render(&real, &vp, Some(&pts))?)?;
        }
    }
    println!(
        "orbit: {} vertices, periodic = {}, max defect = {:.3e} (tol {:.1e}) -> {}",
        orbit.vertices.len(),
        orbit.periodic,
        max_defect,
        ctx.settings.tol,
        if pass { "PASS" } else { "FAIL" }
    );
    Ok(pass)
}

pub fn run(ctx: &Context) -> Result<bool, CliError> {
    with_field!(ctx.settings.field, S => trace::<S>(ctx))
}
