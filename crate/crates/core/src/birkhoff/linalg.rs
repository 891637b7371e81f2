//! Rank decisions by singular values with an explicit gap.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Outcome of a rank decision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankInfo {
    pub rank: usize,
    /// `σ_r / σ_{r+1}`, the missing or vanishing `σ_{r+1}` floored at
    /// `ε·σ_max`.
    pub gap: f64,
}

/// Column basis of a subspace of `R^ambient_dim`, orthonormal.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    pub vectors: DMatrix<f64>,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.vectors.ncols()
    }

    /// Largest entry of `QᵀQ − I`.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.vectors.transpose() * &self.vectors;
        let n = g.nrows();
        (g - DMatrix::identity(n, n)).amax()
    }
}

/// `[[Re, −Im], [Im, Re]]`, or the real part alone when `complex` is off.
pub fn realify(m: &DMatrix<Complex64>, complex: bool) -> DMatrix<f64> {
    if !complex {
        return m.map(|z| z.re);
    }
    let (r, c) = m.shape();
    let mut out = DMatrix::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let z = m[(i, j)];
            out[(i, j)] = z.re;
            out[(i, j + c)] = -z.im;
            out[(i + r, j)] = z.im;
            out[(i + r, j + c)] = z.re;
        }
    }
    out
}

/// Rank from the sorted singular values `sv` with relative threshold
/// `sv_tol`. Values within a factor 10 of the threshold make the decision
/// ambiguous.
pub fn decide_rank(sv: &[f64], sv_tol: f64) -> Result<RankInfo> {
    let smax = sv.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 {
        return Ok(RankInfo {
            rank: 0,
            gap: f64::INFINITY,
        });
    }
    let thr = sv_tol * smax;
    if sv.iter().any(|&s| s > thr / 10.0 && s < thr * 10.0) {
        return Err(Error::RankUnstable { threshold: thr });
    }
    let mut sorted = sv.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let rank = sorted.iter().filter(|&&s| s > thr).count();
    let floor = f64::EPSILON * smax;
    let next = sorted.get(rank).copied().unwrap_or(0.0).max(floor);
    let gap = if rank == 0 { f64::INFINITY } else { sorted[rank - 1] / next };
    Ok(RankInfo { rank, gap })
}

/// Orthonormal basis of the column span of `m`.
pub fn column_span(m: &DMatrix<f64>, sv_tol: f64) -> Result<(SubspaceBasis, RankInfo)> {
    let svd = m.clone().svd(true, false);
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let info = decide_rank(&sv, sv_tol)?;
    let u = svd.u.expect("requested U");
    let mut idx: Vec<usize> = (0..sv.len()).collect();
    idx.sort_by(|&a, &b| sv[b].total_cmp(&sv[a]));
    let cols: Vec<_> = idx[..info.rank].iter().map(|&k| u.column(k).into_owned()).collect();
    let vectors = if cols.is_empty() {
        DMatrix::zeros(m.nrows(), 0)
    } else {
        DMatrix::from_columns(&cols)
    };
    Ok((
        SubspaceBasis {
            ambient_dim: m.nrows(),
            vectors,
        },
        info,
    ))
}

/// Orthonormal basis of the kernel of `m`, with the rank decision for `m`.
pub fn kernel(m: &DMatrix<f64>, sv_tol: f64) -> Result<(SubspaceBasis, RankInfo)> {
    let (r, c) = m.shape();
    // pad to a square matrix so that the SVD returns a full V
    let n = r.max(c);
    let mut sq = DMatrix::zeros(n, c);
    sq.view_mut((0, 0), (r, c)).copy_from(m);
    let svd = sq.svd(false, true);
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let info = decide_rank(&sv, sv_tol)?;
    let vt = svd.v_t.expect("requested Vᵀ");
    let thr = sv_tol * sv.iter().copied().fold(0.0, f64::max);
    let cols: Vec<_> = (0..vt.nrows())
        .filter(|&k| sv[k] <= thr)
        .map(|k| vt.row(k).transpose())
        .collect();
    let vectors = if cols.is_empty() {
        DMatrix::zeros(c, 0)
    } else {
        DMatrix::from_columns(&cols)
    };
    Ok((SubspaceBasis { ambient_dim: c, vectors }, info))
}

/// `dim(A ∩ B) = dim A + dim B − rank [A | B]`.
pub fn intersection_dim(a: &SubspaceBasis, b: &SubspaceBasis, sv_tol: f64) -> Result<(usize, RankInfo)> {
    assert_eq!(a.ambient_dim, b.ambient_dim);
    let n = a.ambient_dim;
    let mut m = DMatrix::zeros(n, a.dim() + b.dim());
    m.view_mut((0, 0), (n, a.dim())).copy_from(&a.vectors);
    m.view_mut((0, a.dim()), (n, b.dim())).copy_from(&b.vectors);
    let (_, info) = column_span(&m, sv_tol)?;
    Ok((a.dim() + b.dim() - info.rank, info))
}

/// Sine of the largest principal angle between `A` and its projection on
/// `B`: zero iff `A ⊂ B`.
pub fn containment_defect(a: &SubspaceBasis, b: &SubspaceBasis) -> f64 {
    if a.dim() == 0 {
        return 0.0;
    }
    let proj = &b.vectors * (b.vectors.transpose() * &a.vectors);
    let resid = &a.vectors - proj;
    resid.singular_values().max()
}
