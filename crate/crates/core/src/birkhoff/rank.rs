//! Tangent spaces, the Birkhoff distribution and its restricted rank.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::curves::{Billiard, FramedCurve};
use crate::error::{Error, Result};
use crate::scalar::{Dual, FieldMode, Scalar};

use super::linalg::{column_span, containment_defect, intersection_dim, kernel, realify, RankInfo, SubspaceBasis};
use super::phase::{Chart, PhasePoint, CHART_DIM};

/// Reflection constraints must hold to this scale-free accuracy before
/// tangent spaces are computed.
const ON_M_TOL: f64 = 1e-10;

pub const DEFAULT_SV_TOL: f64 = 1e-8;

fn complex<S: Scalar>() -> bool {
    S::MODE == FieldMode::Complex
}

/// Halves real dimensions in complex mode.
fn field_dim<S: Scalar>(real_dim: usize) -> Result<usize> {
    if !complex::<S>() {
        return Ok(real_dim);
    }
    if real_dim % 2 != 0 {
        return Err(Error::RankUnstable { threshold: f64::NAN });
    }
    Ok(real_dim / 2)
}

fn lift<S: Scalar>(x: &S) -> Dual<S> {
    Dual::constant(x.clone())
}

/// Jacobian of the three constraints in the chart, rows normalized.
fn constraint_jacobian<S: Scalar>(chart: Chart, alpha: &FramedCurve<S>, x: &[S; CHART_DIM]) -> Result<DMatrix<Complex64>> {
    let ad = alpha.map(lift);
    let mut jac = DMatrix::<Complex64>::zeros(3, CHART_DIM);
    for k in 0..CHART_DIM {
        let xd: [Dual<S>; CHART_DIM] = std::array::from_fn(|i| {
            if i == k {
                Dual::variable(x[i].clone())
            } else {
                lift(&x[i])
            }
        });
        let f = chart.constraints(&ad, &xd)?;
        for (i, fi) in f.iter().enumerate() {
            jac[(i, k)] = fi.eps.to_c64();
        }
    }
    for i in 0..3 {
        let n = jac.row(i).norm();
        if n == 0.0 {
            return Err(Error::RankDrop { rank: 0, expected: 3 });
        }
        jac.row_mut(i).unscale_mut(n);
    }
    Ok(jac)
}

/// `T_z M_α`: kernel of the constraint Jacobian in the chart.
pub fn tangent_m_alpha<S: Scalar>(
    chart: Chart,
    alpha: &FramedCurve<S>,
    z: &PhasePoint<S>,
    sv_tol: f64,
) -> Result<(SubspaceBasis, RankInfo)> {
    let defects = z.constraint_defects()?;
    if defects.iter().any(|d| *d > ON_M_TOL) {
        return Err(Error::DegenerateConfiguration("point is off M_alpha"));
    }
    let x = chart.coords(z)?;
    let jac = realify(&constraint_jacobian(chart, alpha, &x)?, complex::<S>());
    let (basis, info) = kernel(&jac, sv_tol)?;
    let rank = field_dim::<S>(info.rank)?;
    if rank < 3 {
        return Err(Error::RankDrop { rank, expected: 3 });
    }
    Ok((basis, info))
}

/// `D(z)`: velocities moving `B` along `T_B` and `C` along `T_C`.
pub fn birkhoff_d<S: Scalar>(chart: Chart, z: &PhasePoint<S>, sv_tol: f64) -> Result<(SubspaceBasis, RankInfo)> {
    let x = chart.coords(z)?;
    let one = Complex64::new(1.0, 0.0);
    let mut m = DMatrix::<Complex64>::zeros(2, CHART_DIM);
    // dB_y − τ_B dB_x = 0 and dC_y − τ_C dC_x = 0
    m[(0, 1)] = -x[4].to_c64();
    m[(0, 2)] = one;
    m[(1, 5)] = -x[8].to_c64();
    m[(1, 6)] = one;
    for i in 0..2 {
        let n = m.row(i).norm();
        m.row_mut(i).unscale_mut(n);
    }
    let (basis, info) = kernel(&realify(&m, complex::<S>()), sv_tol)?;
    let rank = field_dim::<S>(info.rank)?;
    if rank < 2 {
        return Err(Error::RankDrop { rank, expected: 2 });
    }
    Ok((basis, info))
}

/// `T_z S` for the orbit surface `(s, t) ↦ z(s, t)` of a billiard.
pub fn family_tangent<S: Scalar>(
    chart: Chart,
    bil: &Billiard<S>,
    s: &S,
    t: &S,
    sv_tol: f64,
) -> Result<(SubspaceBasis, RankInfo)> {
    let bd = bil.map(lift);
    let mut m = DMatrix::<Complex64>::zeros(CHART_DIM, 2);
    for (col, (sd, td)) in [
        (Dual::variable(s.clone()), lift(t)),
        (lift(s), Dual::variable(t.clone())),
    ]
    .into_iter()
    .enumerate()
    {
        let z = PhasePoint::from_family(&bd, &sd, &td)?;
        let x = chart.coords(&z)?;
        for (i, xi) in x.iter().enumerate() {
            m[(i, col)] = xi.eps.to_c64();
        }
    }
    let (basis, info) = column_span(&realify(&m, complex::<S>()), sv_tol)?;
    let rank = field_dim::<S>(info.rank)?;
    if rank < 2 {
        return Err(Error::RankDrop { rank, expected: 2 });
    }
    Ok((basis, info))
}

/// Dimensions reported per sampled point (over the field of the billiard).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dims {
    #[serde(rename = "D")]
    pub d: usize,
    #[serde(rename = "TM")]
    pub tm: usize,
    #[serde(rename = "S")]
    pub s: usize,
    #[serde(rename = "S_in_D")]
    pub s_in_d: usize,
    #[serde(rename = "TM_in_D")]
    pub tm_in_d: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankRecord {
    /// Chart coordinates (real parts, then imaginary parts in complex mode).
    pub coords: Vec<f64>,
    pub chart: usize,
    pub dims: Dims,
    /// Smallest singular-value gap over all rank decisions.
    pub sv_gap: f64,
    /// Sine of the largest principal angle between `T_z S` and `D(z)`.
    pub principal_angle: f64,
}

/// All rank decisions at the orbit `z(s, t)` of `bil` in the given chart.
pub fn restricted_rank_in<S: Scalar>(chart: Chart, bil: &Billiard<S>, s: &S, t: &S, sv_tol: f64) -> Result<RankRecord> {
    let z = PhasePoint::from_family(bil, s, t)?;
    let x = chart.coords(&z)?;
    let (tm, i_tm) = tangent_m_alpha(chart, bil.piece(0), &z, sv_tol)?;
    let (d, i_d) = birkhoff_d(chart, &z, sv_tol)?;
    let (sb, i_s) = family_tangent(chart, bil, s, t, sv_tol)?;
    let (s_in_d, i_sd) = intersection_dim(&sb, &d, sv_tol)?;
    let (tm_in_d, i_td) = intersection_dim(&tm, &d, sv_tol)?;
    let gap = [i_tm, i_d, i_s, i_sd, i_td]
        .iter()
        .map(|i| i.gap)
        .fold(f64::INFINITY, f64::min);
    let mut coords: Vec<f64> = x.iter().map(|v| v.real()).collect();
    if complex::<S>() {
        coords.extend(x.iter().map(|v| v.to_c64().im));
    }
    Ok(RankRecord {
        coords,
        chart: chart.index(),
        dims: Dims {
            d: field_dim::<S>(d.dim())?,
            tm: field_dim::<S>(tm.dim())?,
            s: field_dim::<S>(sb.dim())?,
            s_in_d: field_dim::<S>(s_in_d)?,
            tm_in_d: field_dim::<S>(tm_in_d)?,
        },
        sv_gap: gap,
        principal_angle: containment_defect(&sb, &d),
    })
}

/// [`restricted_rank_in`] in the first chart where the point is regular.
pub fn restricted_rank<S: Scalar>(bil: &Billiard<S>, s: &S, t: &S, sv_tol: f64) -> Result<RankRecord> {
    let z = PhasePoint::from_family(bil, s, t)?;
    let chart = Chart::choose(&z)?;
    restricted_rank_in(chart, bil, s, t, sv_tol)
}
