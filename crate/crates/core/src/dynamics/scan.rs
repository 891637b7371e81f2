//! Grid scans of the closure residual over the initial parameters.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::curves::Billiard;
use crate::scalar::Scalar;

use super::closure::closure_residual;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub s: f64,
    pub t: f64,
    /// `None` for cells excluded as degenerate.
    pub residual: Option<f64>,
    pub exact_zero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub grid: usize,
    pub s_range: (f64, f64),
    pub t_range: (f64, f64),
    pub tol: f64,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Share of non-degenerate cells with residual `≤ tol`.
    pub fraction_below_tol: f64,
    pub degenerate: usize,
    /// Cells whose residual vanished identically (exact fields only).
    pub exact_zeros: usize,
    /// Row-major: `s` varies slowest.
    #[serde(skip)]
    pub rows: Vec<ScanRow>,
}

/// Centres of `n` equal cells of `[lo, hi]`.
pub fn cell_centers(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (2 * i + 1) as f64 * (hi - lo) / (2 * n) as f64)
        .collect()
}

/// Evaluates the closure residual at the centres of an `n × n` grid over
/// `s_range × t_range`. Cells raising an error are flagged and left out of
/// the statistics.
pub fn scan<S: Scalar>(
    bil: &Billiard<S>,
    n: usize,
    s_range: (f64, f64),
    t_range: (f64, f64),
    tol: f64,
) -> ScanReport {
    let ss = cell_centers(s_range.0, s_range.1, n);
    let ts = cell_centers(t_range.0, t_range.1, n);
    let rows: Vec<ScanRow> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (s, t) = (ss[idx / n], ts[idx % n]);
            let res = closure_residual(bil, &S::from_f64(s), &S::from_f64(t)).ok();
            ScanRow {
                s,
                t,
                residual: res.as_ref().map(|r| r.value()),
                exact_zero: res.is_some_and(|r| r.exact_zero),
            }
        })
        .collect();
    summarize(rows, n, s_range, t_range, tol)
}

/// Default scan window: the sampling bounds of the first two pieces.
pub fn default_ranges<S: Scalar>(bil: &Billiard<S>) -> ((f64, f64), (f64, f64)) {
    (
        bil.piece(0).domain().sample_bounds(),
        bil.piece(1).domain().sample_bounds(),
    )
}

fn summarize(
    rows: Vec<ScanRow>,
    grid: usize,
    s_range: (f64, f64),
    t_range: (f64, f64),
    tol: f64,
) -> ScanReport {
    let vals: Vec<f64> = rows.iter().filter_map(|r| r.residual).collect();
    let degenerate = rows.len() - vals.len();
    let (min, max, sum, below) = vals.iter().fold(
        (f64::INFINITY, f64::NEG_INFINITY, 0.0, 0usize),
        |(lo, hi, sum, k), &v| (lo.min(v), hi.max(v), sum + v, k + usize::from(v <= tol)),
    );
    let exact_zeros = rows.iter().filter(|r| r.exact_zero).count();
    let count = vals.len();
    let (mean, fraction) = if count == 0 {
        (f64::NAN, 0.0)
    } else {
        (sum / count as f64, below as f64 / count as f64)
    };
    ScanReport {
        grid,
        s_range,
        t_range,
        tol,
        min,
        max,
        mean,
        fraction_below_tol: fraction,
        degenerate,
        exact_zeros,
        rows,
    }
}

impl ScanReport {
    /// `s,t,residual,flag` with 17 significant digits, row-major.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,t,residual,flag\n");
        for r in &self.rows {
            match r.residual {
                Some(v) => writeln!(out, "{:.16e},{:.16e},{:.16e},ok", r.s, r.t, v),
                None => writeln!(out, "{:.16e},{:.16e},NaN,degenerate", r.s, r.t),
            }
            .expect("writing to a String");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::right_spherical;
    use crate::projective::Point2;

    #[test]
    fn centers() {
        assert_eq!(cell_centers(0.0, 1.0, 4), vec![0.125, 0.375, 0.625, 0.875]);
    }

    #[test]
    fn right_spherical_scan_is_flat() {
        let bil = right_spherical(
            &Point2::affine(0.0, 0.0),
            &Point2::affine(0.0, 1.0),
            &Point2::affine(1.0, 0.0),
        )
        .unwrap();
        let rep = scan(&bil, 20, (0.0, 1.0), (0.0, 1.0), 1e-12);
        assert_eq!(rep.fraction_below_tol, 1.0);
        assert_eq!(rep.degenerate, 0);
        let csv = rep.to_csv();
        assert_eq!(csv.lines().count(), 401);
        assert_eq!(csv, scan(&bil, 20, (0.0, 1.0), (0.0, 1.0), 1e-12).to_csv());
    }
}
