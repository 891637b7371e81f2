//! `plot`: SVG of the pieces, frame ticks and an orbit polygon.
//!
//! User coordinates are the affine chart with `y` negated, so the picture
//! has the usual mathematical orientation.

use std::fmt::Write as _;

use projbill::curves::Billiard;
use projbill::dynamics::iterate;
use projbill::projective::Point2;
use projbill::FieldMode;

use crate::config::Viewport;
use crate::error::CliError;
use crate::orbit::initial_pair;
use crate::Context;

const SAMPLES: usize = 256;
const TICK_EVERY: usize = 16;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn check(vp: &Viewport) -> Result<(), CliError> {
    let ok = [vp.xmin, vp.xmax, vp.ymin, vp.ymax].iter().all(|x| x.is_finite())
        && vp.xmax > vp.xmin
        && vp.ymax > vp.ymin;
    if ok {
        Ok(())
    } else {
        Err(CliError::ViewportDegenerate(format!(
            "x in [{}, {}], y in [{}, {}]",
            vp.xmin, vp.xmax, vp.ymin, vp.ymax
        )))
    }
}

fn xy(p: &Point2<f64>) -> Option<(f64, f64)> {
    p.xy().filter(|(x, y)| x.is_finite() && y.is_finite())
}

/// Renders `bil` in the viewport, with the closed polygon through `orbit`
/// when given.
pub fn render(bil: &Billiard<f64>, vp: &Viewport, orbit: Option<&[Point2<f64>]>) -> Result<String, CliError> {
    check(vp)?;
    let (w, h) = (vp.xmax - vp.xmin, vp.ymax - vp.ymin);
    let tick = 0.03 * w.hypot(h);
    let mut svg = String::new();
    let mut put = |s: String| svg.push_str(&s);
    put(format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"800\" height=\"{}\">\n",
        vp.xmin,
        -vp.ymax,
        w,
        h,
        (800.0 * h / w).round()
    ));
    put("<g fill=\"none\" stroke-linecap=\"round\">\n".into());
    for (i, piece) in bil.pieces().iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let (lo, hi) = piece.domain().sample_bounds();
        let mut runs: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
        let mut ticks = String::new();
        for k in 0..SAMPLES {
            let u = lo + (hi - lo) * k as f64 / (SAMPLES - 1) as f64;
            let Ok(fp) = piece.eval_unchecked(&u) else {
                runs.push(Vec::new());
                continue;
            };
            let Some((x, y)) = xy(&fp.point) else {
                runs.push(Vec::new());
                continue;
            };
            runs.last_mut().expect("nonempty").push((x, y));
            if k % TICK_EVERY == 0 {
                let [dx, dy] = fp.frame.direction();
                let n = dx.hypot(dy);
                if n > 0.0 {
                    let (dx, dy) = (tick * dx / n, tick * dy / n);
                    writeln!(
                        ticks,
                        "<line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\"/>",
                        x - dx,
                        -(y - dy),
                        x + dx,
                        -(y + dy)
                    )
                    .expect("writing to a String");
                }
            }
        }
        put(format!("<g stroke=\"{color}\">\n"));
        for run in runs.iter().filter(|r| r.len() > 1) {
            let pts: Vec<String> = run.iter().map(|(x, y)| format!("{x:.6},{:.6}", -y)).collect();
            put(format!(
                "<polyline stroke-width=\"{:.6}\" points=\"{}\"/>\n",
                tick * 0.1,
                pts.join(" ")
            ));
        }
        put(format!("<g stroke-width=\"{:.6}\" opacity=\"0.6\">\n{ticks}</g>\n", tick * 0.05));
        put("</g>\n".into());
    }
    if let Some(orbit) = orbit {
        let pts: Vec<String> = orbit
            .iter()
            .filter_map(xy)
            .map(|(x, y)| format!("{x:.6},{:.6}", -y))
            .collect();
        if pts.len() > 1 {
            put(format!(
                "<polygon stroke=\"black\" stroke-width=\"{:.6}\" points=\"{}\"/>\n",
                tick * 0.06,
                pts.join(" ")
            ));
        }
    }
    put("</g>\n</svg>\n".into());
    Ok(svg)
}

pub fn run(ctx: &Context) -> Result<bool, CliError> {
    if ctx.settings.field != FieldMode::Real {
        return Err(CliError::Usage("plot works in the f64 field only".into()));
    }
    let vp = ctx
        .config
        .run
        .viewport
        .ok_or_else(|| CliError::Config("plot needs run.viewport".into()))?;
    let bil = ctx.config.billiard::<f64>()?;
    let run = &ctx.config.run;
    let orbit = if run.s.is_some() && run.t.is_some() {
        let (s, t) = initial_pair::<f64>(run, &bil);
        let o = iterate(&bil, &s, &t, run.steps.unwrap_or(bil.len()))?;
        Some(o.vertices.iter().map(|v| v.point.point.clone()).collect::<Vec<_>>())
    } else {
        None
    };
    let svg = render(&bil, &vp, orbit.as_deref())?;
    ctx.out.write("plot.svg", &svg)?;
    println!(
        "plot: {} pieces, {} samples each, orbit {}",
        bil.len(),
        SAMPLES,
        if orbit.is_some() { "drawn" } else { "not requested" }
    );
    Ok(true)
}
