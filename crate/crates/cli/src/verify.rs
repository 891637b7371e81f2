//! `verify <suite>`: packaged checks with a JSON report per suite.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use projbill::birkhoff::{restricted_rank, RankRecord, DEFAULT_SV_TOL};
use projbill::dynamics::{default_targets, reference_cases};
use projbill::{Error, FieldMode, Scalar};

use crate::error::CliError;
use crate::sampling::{chain_defect, complex_family_point, family_point, random_chain, spherical_sample, tilted};
use crate::scan::{grid_scan, summary_json};
use crate::{with_field, Context, Suite};

/// Tolerance of the spherical correspondence.
pub const SPHERE_TOL: f64 = 1e-9;
/// Constant `C` in `|ratio − limit| ≤ C·|z|`.
pub const ASYMPTOTIC_C: f64 = 100.0;
pub const MIN_SLOPE: f64 = 0.9;
pub const ANGLE_TOL: f64 = 1e-9;
pub const MIN_GAP: f64 = 1e6;
pub const PLANARITY_TOL: f64 = 1e-12;
/// Relative tilt of the control frame and the defect it must produce.
pub const TILT: f64 = 1e-3;
pub const TILT_DETECT: f64 = 1e-6;

#[derive(Debug, Serialize)]
struct Check {
    name: String,
    value: f64,
    bound: String,
    pass: bool,
}

impl Check {
    fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound: format!("<= {bound:e}"),
            pass: value <= bound,
        }
    }

    fn at_least(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound: format!(">= {bound:e}"),
            pass: value >= bound,
        }
    }
}

fn finish(ctx: &Context, suite: &str, checks: Vec<Check>, details: Value) -> Result<bool, CliError> {
    let pass = checks.iter().all(|c| c.pass);
    for c in &checks {
        println!(
            "  {:<40} {:>12.4e}  {:<12} {}",
            c.name,
            c.value,
            c.bound,
            if c.pass { "ok" } else { "FAIL" }
        );
    }
    println!("verify {suite}: {}", if pass { "PASS" } else { "FAIL" });
    ctx.out.write_json(
        "report.json",
        &json!({
            "command": "verify",
            "suite": suite,
            "settings": ctx.settings,
            "pass": pass,
            "checks": checks,
            "details": details,
        }),
    )?;
    Ok(pass)
}

fn samples(ctx: &Context, default: usize) -> usize {
    ctx.config.run.samples.unwrap_or(default)
}

fn right_spherical(ctx: &Context) -> Result<bool, CliError> {
    let report = with_field!(ctx.settings.field, S => grid_scan::<S>(ctx))?;
    let cells = report.grid * report.grid;
    let valid = cells - report.degenerate;
    let mut checks = vec![
        Check::at_most("max closure residual", report.max, ctx.settings.tol),
        Check::at_least("fraction below tol", report.fraction_below_tol, 1.0),
        Check::at_least("non-degenerate cells", valid as f64, 1.0),
    ];
    if ctx.settings.field == FieldMode::Rational {
        checks.push(Check::at_least("exactly vanishing cells", report.exact_zeros as f64, valid as f64));
    }
    finish(ctx, "right-spherical", checks, summary_json(&report))
}

fn spherical_projection(ctx: &Context) -> Result<bool, CliError> {
    let n = samples(ctx, 100);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.settings.seed);
    let (mut mismatch, mut residual, mut periodic, mut failed) = (0.0f64, 0.0f64, 0usize, 0usize);
    for _ in 0..n {
        match spherical_sample(&mut rng) {
            Ok(s) => {
                mismatch = mismatch.max(s.mismatch);
                residual = residual.max(s.residual);
                periodic += usize::from(s.periodic);
            }
            Err(_) => failed += 1,
        }
    }
    let checks = vec![
        Check::at_most("max vertex mismatch", mismatch, SPHERE_TOL),
        Check::at_most("max closure residual", residual, SPHERE_TOL),
        Check::at_least("periodic projected orbits", periodic as f64, n as f64),
        Check::at_most("failed samples", failed as f64, 0.0),
    ];
    finish(ctx, "spherical-projection", checks, json!({"samples": n}))
}

fn asymptotics(ctx: &Context) -> Result<bool, CliError> {
    let targets = default_targets();
    let mut checks = Vec::new();
    let mut details = Vec::new();
    for case in reference_cases() {
        let rep = case.run(&targets)?;
        let name = case.name;
        checks.push(Check::at_most(format!("{name}: C for z'/z -> -1"), rep.const_prime, ASYMPTOTIC_C));
        checks.push(Check::at_most(
            format!("{name}: C for z*/z -> {}", rep.limit_star),
            rep.const_star,
            ASYMPTOTIC_C,
        ));
        checks.push(Check::at_least(format!("{name}: slope z'"), rep.slope_prime, MIN_SLOPE));
        checks.push(Check::at_least(format!("{name}: slope z*"), rep.slope_star, MIN_SLOPE));
        details.push(json!({"case": name, "report": rep}));
    }
    finish(ctx, "asymptotics", checks, Value::Array(details))
}

fn rank_sample<S: Scalar>(
    bil: &projbill::curves::Billiard<S>,
    s: &S,
    t: &S,
    sv_tol: f64,
) -> Result<Option<RankRecord>, CliError> {
    match restricted_rank(bil, s, t, sv_tol) {
        Ok(r) => Ok(Some(r)),
        Err(e @ Error::RankUnstable { .. }) => Err(e.into()),
        Err(_) => Ok(None),
    }
}

fn birkhoff_rank(ctx: &Context) -> Result<bool, CliError> {
    let n = samples(ctx, 20).max(20);
    let sv_tol = ctx.config.run.sv_tol.unwrap_or(DEFAULT_SV_TOL);
    let complex = ctx.settings.field == FieldMode::Complex;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.settings.seed);
    let mut records = Vec::with_capacity(n);
    let mut skipped = 0usize;
    while records.len() < n {
        let rec = if complex {
            let (bil, s, t) = complex_family_point(&mut rng);
            rank_sample::<Complex64>(&bil, &s, &t, sv_tol)?
        } else {
            let (bil, s, t) = family_point(&mut rng);
            rank_sample::<f64>(&bil, &s, &t, sv_tol)?
        };
        match rec {
            Some(r) => records.push(r),
            None => {
                skipped += 1;
                if skipped > 10 * n {
                    return Err(CliError::Core(Error::DegenerateConfiguration("no usable family points")));
                }
            }
        }
    }
    let wrong_dims = records
        .iter()
        .filter(|r| (r.dims.d, r.dims.tm, r.dims.s, r.dims.s_in_d) != (7, 6, 2, 2))
        .count();
    let angle = records.iter().map(|r| r.principal_angle).fold(0.0, f64::max);
    let gap = records.iter().map(|r| r.sv_gap).fold(f64::INFINITY, f64::min);
    let checks = vec![
        Check::at_most("samples with dims != (7, 6, 2, 2)", wrong_dims as f64, 0.0),
        Check::at_most("max principal angle", angle, ANGLE_TOL),
        Check::at_least("min singular-value gap", gap, MIN_GAP),
    ];
    let computed_in = if complex { "f-complex" } else { "f-real" };
    let details = json!({"samples": n, "skipped": skipped, "sv_tol": sv_tol, "computed_in": computed_in, "records": records});
    finish(ctx, "birkhoff-rank", checks, details)
}

fn planarity(ctx: &Context) -> Result<bool, CliError> {
    let n = samples(ctx, 1000);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.settings.seed);
    let (mut worst, mut control, mut skipped, mut done) = (0.0f64, f64::INFINITY, 0usize, 0usize);
    while done < n {
        let Some((d, dt)) = random_chain(&mut rng)
            .ok()
            .and_then(|o| Some((chain_defect(&o)?, chain_defect(&tilted(&o, TILT).ok()?)?)))
        else {
            skipped += 1;
            if skipped > 10 * n {
                return Err(CliError::Core(Error::DegenerateConfiguration("no usable chains")));
            }
            continue;
        };
        worst = worst.max(d);
        control = control.min(dt);
        done += 1;
    }
    let checks = vec![
        Check::at_most("max out-of-plane defect", worst, PLANARITY_TOL),
        Check::at_least("min defect with tilted frame", control, TILT_DETECT),
    ];
    finish(ctx, "planarity-3d", checks, json!({"samples": n, "skipped": skipped, "tilt": TILT}))
}

pub fn run(ctx: &Context, suite: Suite) -> Result<bool, CliError> {
    match suite {
        Suite::RightSpherical => right_spherical(ctx),
        Suite::SphericalProjection => spherical_projection(ctx),
        Suite::Asymptotics => asymptotics(ctx),
        Suite::BirkhoffRank => birkhoff_rank(ctx),
        Suite::Planarity3d => planarity(ctx),
    }
}
