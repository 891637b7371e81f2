//! Azimuths of degenerating triangles near a tangent line.
//!
//! Fix `m_{A₀}` on a curve `a` and let `B` run along a framed curve `b`
//! towards a point `B₀` of the tangent `T_{A₀}a`. With
//! `z = az(A₀B)`, `z' = az(A₀C)` (mirror image of `A₀B` at `A₀`) and
//! `z* = az(BC)` (mirror image at `B`), the ratios `z'/z` and `z*/z`
//! tend to `−1` and `2I − 1`, where `I` is the contact order of `b` with
//! `T_{A₀}a` at `B₀`.

use serde::Serialize;

use crate::curves::{Domain, FramedCurve, FramedPoint, Poly};
use crate::error::{Error, Result};
use crate::projective::{azimuth, cross_ratio_points, reflect_line, P1Value, PLine};
use crate::scalar::{Dual, Scalar};

use super::index::intersection_index;

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsRow {
    /// Normalized `az(A₀B)`.
    pub z: f64,
    pub z_prime_ratio: f64,
    pub z_star_ratio: f64,
    /// Parameter of `B` on `b`.
    pub param: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsReport {
    pub index: u32,
    pub limit_prime: f64,
    pub limit_star: f64,
    pub rows: Vec<AsymptoticsRow>,
    /// Least-squares slope of `log|z'/z + 1|` against `log|z|`.
    pub slope_prime: f64,
    /// Least-squares slope of `log|z*/z − (2I − 1)|` against `log|z|`.
    pub slope_star: f64,
    /// `max |z'/z + 1| / |z|` over the rows.
    pub const_prime: f64,
    /// `max |z*/z − (2I − 1)| / |z|` over the rows.
    pub const_star: f64,
}

/// Möbius normalization of the slope line: `T_{A₀}a ↦ 0`, `L_{A₀} ↦ 1` and
/// an auxiliary slope `p ↦ ∞` chosen away from the data. Every such map is
/// induced by a linear change of affine coordinates.
#[derive(Debug, Clone)]
struct Normalization {
    l0: P1Value<f64>,
    t0: P1Value<f64>,
    p: P1Value<f64>,
}

impl Normalization {
    fn new(l0: P1Value<f64>, t0: P1Value<f64>, avoid: &[P1Value<f64>]) -> Result<Self> {
        if l0.same_as(&t0) {
            return Err(Error::ChartDegenerate);
        }
        let mut candidates = vec![P1Value::infinity()];
        candidates.extend([-1.0, 2.0, -3.0, 5.0, -7.0, 11.0].map(P1Value::finite));
        let p = candidates
            .into_iter()
            .find(|c| {
                !c.same_as(&l0) && !c.same_as(&t0) && avoid.iter().all(|a| !c.same_as(a))
            })
            .ok_or(Error::ChartDegenerate)?;
        Ok(Self { l0, t0, p })
    }

    fn apply<S: Scalar>(&self, x: &P1Value<S>) -> Result<S> {
        let lift = |v: &P1Value<f64>| v.map(|c| S::from_f64(*c));
        let w = cross_ratio_points(x, &lift(&self.l0), &lift(&self.t0), &lift(&self.p))?;
        w.value().ok_or(Error::ChartDegenerate)
    }
}

fn slope<S: Scalar>(l: &PLine<S>) -> Result<P1Value<S>> {
    azimuth(l).map_err(|_| Error::ChartDegenerate)
}

/// `(z, z', z*)` for `B = b(u)`.
fn azimuths<S: Scalar>(
    norm: &Normalization,
    a0: &FramedPoint<S>,
    b: &FramedCurve<S>,
    u: &S,
) -> Result<[S; 3]> {
    let mb = b.eval_unchecked(u)?;
    let chord = a0.point.join(&mb.point)?;
    let at_a = reflect_line(&a0.point, &chord, &a0.frame, &a0.tangent)?;
    let at_b = reflect_line(&mb.point, &chord, &mb.frame, &mb.tangent)?;
    Ok([
        norm.apply(&slope(&chord)?)?,
        norm.apply(&slope(&at_a)?)?,
        norm.apply(&slope(&at_b)?)?,
    ])
}

fn chord_azimuth(
    norm: &Normalization,
    a0: &FramedPoint<Dual<f64>>,
    b: &FramedCurve<Dual<f64>>,
    u: f64,
) -> Result<(f64, f64)> {
    let mb = b.eval_unchecked(&Dual::variable(u))?;
    let chord = a0.point.join(&mb.point)?;
    let z = norm.apply(&slope(&chord)?)?;
    Ok((z.value, z.eps))
}

/// Safeguarded Newton on `g(u) = target` inside a bracket where `g − target`
/// changes sign.
fn solve_bracketed(
    g: impl Fn(f64) -> Result<(f64, f64)>,
    target: f64,
    mut lo: f64,
    mut hi: f64,
) -> Result<f64> {
    let glo = g(lo)?.0 - target;
    let ghi = g(hi)?.0 - target;
    if glo * ghi > 0.0 {
        return Err(Error::NoConvergence {
            best_residual: glo.abs().min(ghi.abs()),
        });
    }
    let lo_neg = glo < 0.0;
    let mut u = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (v, dv) = g(u)?;
        let f = v - target;
        if (f / target).abs() < 1e-15 || (hi - lo).abs() <= 4.0 * f64::EPSILON * u.abs() {
            return Ok(u);
        }
        if (f < 0.0) == lo_neg {
            lo = u;
        } else {
            hi = u;
        }
        let newton = u - f / dv;
        u = if dv != 0.0 && newton.is_finite() && (newton - lo) * (newton - hi) < 0.0 {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(u)
}

fn fit_slope(zs: &[f64], errs: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = zs
        .iter()
        .zip(errs)
        .filter(|(_, e)| **e > 0.0)
        .map(|(z, e)| (z.abs().ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::INFINITY;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Runs the experiment for `m_{A₀} = a(u_a0)` and `B → B₀ = b(u_b0)`, with
/// `|z|` running through `targets` (decreasing, e.g. `10⁻¹, …, 10⁻⁵`).
///
/// `B₀` must lie on `T_{A₀}a`; when `b` is `a` itself, `B₀ = A₀`.
pub fn asymptotics_experiment(
    a: &FramedCurve<f64>,
    u_a0: f64,
    b: &FramedCurve<f64>,
    u_b0: f64,
    targets: &[f64],
) -> Result<AsymptoticsReport> {
    let a0 = a.eval(&u_a0)?;
    let b0 = b.eval(&u_b0)?;
    if !a0.tangent.contains(&b0.point) {
        return Err(Error::DegenerateConfiguration("B0 is off the tangent at A0"));
    }
    let index = intersection_index(b, &a0.tangent, &b0.point)?.value();
    let t0 = slope(&a0.tangent)?;
    let l0 = slope(&a0.frame)?;
    let avoid = [slope(&b0.tangent)?, slope(&b0.frame)?];
    let norm = Normalization::new(l0, t0, &avoid)?;

    let lift = |x: &f64| Dual::constant(*x);
    let a0d = a0.map(lift);
    let bd = b.map(lift);
    let g = |u: f64| chord_azimuth(&norm, &a0d, &bd, u);

    // walk away from u_b0 until |z| exceeds the largest target
    let zmax = targets.iter().fold(0.0f64, |m, z| m.max(z.abs()));
    let domain = b.domain();
    let mut start = None;
    'dirs: for dir in [1.0, -1.0] {
        let mut h = 1e-4;
        while h < 1e3 {
            let u = u_b0 + dir * h;
            if !domain.contains(u) {
                break;
            }
            if let Ok((z, _)) = g(u) {
                if z.abs() >= zmax {
                    start = Some((u, z.signum()));
                    break 'dirs;
                }
            }
            h *= 1.5;
        }
    }
    let (mut outer, sign) = start.ok_or(Error::DegenerateConfiguration(
        "secant family does not reach the requested azimuths",
    ))?;

    let mut rows = Vec::with_capacity(targets.len());
    for &target in targets {
        let target = sign * target.abs();
        let u = solve_bracketed(&g, target, u_b0 + (outer - u_b0) * 1e-3, outer)?;
        outer = u;
        let [z, zp, zs] = azimuths(&norm, &a0, b, &u)?;
        rows.push(AsymptoticsRow {
            z,
            z_prime_ratio: zp / z,
            z_star_ratio: zs / z,
            param: u,
        });
    }

    let limit_prime = -1.0;
    let limit_star = (2 * index - 1) as f64;
    let zs: Vec<f64> = rows.iter().map(|r| r.z).collect();
    let ep: Vec<f64> = rows.iter().map(|r| (r.z_prime_ratio - limit_prime).abs()).collect();
    let es: Vec<f64> = rows.iter().map(|r| (r.z_star_ratio - limit_star).abs()).collect();
    let cmax = |e: &[f64]| {
        e.iter()
            .zip(&zs)
            .map(|(e, z)| e / z.abs())
            .fold(0.0, f64::max)
    };
    Ok(AsymptoticsReport {
        index,
        limit_prime,
        limit_star,
        slope_prime: fit_slope(&zs, &ep),
        slope_star: fit_slope(&zs, &es),
        const_prime: cmax(&ep),
        const_star: cmax(&es),
        rows,
    })
}

/// The decades `10⁻¹, …, 10⁻⁵`.
pub fn default_targets() -> Vec<f64> {
    (1..=5).map(|k| 10f64.powi(-k)).collect()
}

/// A configuration `(a, A₀; b, B₀)` for [`asymptotics_experiment`].
#[derive(Debug, Clone)]
pub struct AsymptoticsCase {
    pub name: &'static str,
    pub a: FramedCurve<f64>,
    pub u_a0: f64,
    pub b: FramedCurve<f64>,
    pub u_b0: f64,
}

impl AsymptoticsCase {
    pub fn run(&self, targets: &[f64]) -> Result<AsymptoticsReport> {
        asymptotics_experiment(&self.a, self.u_a0, &self.b, self.u_b0, targets)
    }
}

fn parabola() -> FramedCurve<f64> {
    // y = x², frames of slope 1 + x
    FramedCurve::graph(
        Poly::new(vec![0.0, 0.0, 1.0]),
        Poly::new(vec![1.0, 1.0]),
        Domain::interval(-0.5, 0.5),
    )
    .expect("transverse frames")
}

/// Contact orders 1, 2 and 3 at `A₀ = (0, 0)` on graphs through the origin:
/// a transverse arc `b` crossing the tangent `y = 0` at `(1, 0)`, the
/// parabola against itself, and the cubic `y = x³` against itself.
pub fn reference_cases() -> Vec<AsymptoticsCase> {
    let a = parabola();
    let transverse = FramedCurve::parametric(
        Poly::constant(1.0),
        Poly::new(vec![0.0, 2.0, -1.0]),
        Poly::new(vec![0.0, 2.0]),
        Domain::interval(-0.5, 0.5),
    )
    .expect("transverse frames");
    let cubic = FramedCurve::graph(
        Poly::new(vec![0.0, 0.0, 0.0, 1.0]),
        Poly::new(vec![1.0, 0.25]),
        Domain::interval(-0.5, 0.5),
    )
    .expect("transverse frames");
    vec![
        AsymptoticsCase {
            name: "transverse",
            a: a.clone(),
            u_a0: 0.0,
            b: transverse,
            u_b0: 0.0,
        },
        AsymptoticsCase {
            name: "conic-self",
            a: a.clone(),
            u_a0: 0.0,
            b: a,
            u_b0: 0.0,
        },
        AsymptoticsCase {
            name: "cubic-self",
            a: cubic.clone(),
            u_a0: 0.0,
            b: cubic,
            u_b0: 0.0,
        },
    ]
}
