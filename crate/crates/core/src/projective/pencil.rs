//! Pencils of lines through a point, their `P¹` charts, and the reflection
//! of a pencil in a framed point.

use crate::error::{Error, Result};
use crate::scalar::{argmax_magnitude, Scalar};

use super::p1::{cross_ratio_points, P1Value};
use super::point::{cross, PLine, Point2};

/// Identifies the pencil of lines through `center` with `P¹` by cutting it
/// with a reference line not through the center.
///
/// With the line at infinity as reference and the basis `(0:1:0), (1:0:0)`
/// the coordinate of a line is its slope.
#[derive(Debug, Clone)]
pub struct PencilChart<S> {
    center: Point2<S>,
    reference: PLine<S>,
    basis: [Point2<S>; 2],
    // join(center, basis[1]) and join(center, basis[0])
    dual: [PLine<S>; 2],
    scale: [S; 2],
}

impl<S: Scalar> PencilChart<S> {
    pub fn new(center: Point2<S>, reference: PLine<S>) -> Result<Self> {
        if reference.contains(&center) {
            return Err(Error::AuxThroughCenter);
        }
        let basis = if reference.same_as(&PLine::infinity()) {
            [
                Point2::from_coords_unchecked([S::zero(), S::one(), S::zero()]),
                Point2::from_coords_unchecked([S::one(), S::zero(), S::zero()]),
            ]
        } else {
            let cands: Vec<Point2<S>> = (0..3)
                .map(|i| {
                    let mut e = [S::zero(), S::zero(), S::zero()];
                    e[i] = S::one();
                    Point2::from_coords_unchecked(cross(reference.coeffs(), &e))
                })
                .collect();
            // the pair with the best-conditioned join
            let mut best = (0, 1, -1.0);
            for i in 0..3 {
                for j in (i + 1)..3 {
                    let c = cross(cands[i].coords(), cands[j].coords());
                    let m = crate::scalar::norm2(&c)
                        / (cands[i].norm() * cands[j].norm()).max(f64::MIN_POSITIVE);
                    if m > best.2 {
                        best = (i, j, m);
                    }
                }
            }
            [cands[best.0].clone(), cands[best.1].clone()]
        };
        let dual = [
            center.join(&basis[1])?,
            center.join(&basis[0])?,
        ];
        let scale = [dual[0].eval(&basis[0]), dual[1].eval(&basis[1])];
        Ok(Self {
            center,
            reference,
            basis,
            dual,
            scale,
        })
    }

    /// Slope chart of the pencil through a finite point.
    pub fn affine(center: Point2<S>) -> Result<Self> {
        Self::new(center, PLine::infinity())
    }

    pub fn center(&self) -> &Point2<S> {
        &self.center
    }

    pub fn reference(&self) -> &PLine<S> {
        &self.reference
    }

    /// Coordinate of a line of the pencil.
    pub fn coordinate(&self, line: &PLine<S>) -> Result<P1Value<S>> {
        if line.same_as(&self.reference) {
            return Err(Error::LineIsReference);
        }
        if !line.contains(&self.center) {
            return Err(Error::NotThroughPoint);
        }
        let x = line.meet(&self.reference)?;
        // x = u·basis[0] + v·basis[1]
        let u = self.dual[0].eval(&x) * self.scale[1].clone();
        let v = self.dual[1].eval(&x) * self.scale[0].clone();
        P1Value::new(u, v)
    }

    /// Line of the pencil with the given coordinate.
    pub fn line(&self, z: &P1Value<S>) -> Result<PLine<S>> {
        let x = self.basis[0].combine(&z.u, &self.basis[1], &z.v);
        self.center.join(&x)
    }
}

/// Slope `(−a : b)` of the line `a·x + b·y + c·w = 0`; `∞` for vertical lines.
pub fn azimuth<S: Scalar>(line: &PLine<S>) -> Result<P1Value<S>> {
    let [a, b, _] = line.coeffs();
    if a.is_zero() && b.is_zero() {
        return Err(Error::LineIsReference);
    }
    Ok(P1Value::from_raw(-a.clone(), b.clone()))
}

/// Cross-ratio of four concurrent lines, read in the chart cut out by `aux`.
pub fn cross_ratio_lines<S: Scalar>(lines: [&PLine<S>; 4], aux: &PLine<S>) -> Result<P1Value<S>> {
    let mut center = None;
    'outer: for i in 0..4 {
        for j in (i + 1)..4 {
            if let Ok(c) = lines[i].meet(lines[j]) {
                center = Some(c);
                break 'outer;
            }
        }
    }
    let center = center.ok_or(Error::DegeneratePencil)?;
    if lines.iter().any(|l| !l.contains(&center)) {
        return Err(Error::NotConcurrent);
    }
    let chart = PencilChart::new(center, aux.clone())?;
    let z: Vec<P1Value<S>> = lines
        .iter()
        .map(|l| chart.coordinate(l))
        .collect::<Result<_>>()?;
    cross_ratio_points(&z[0], &z[1], &z[2], &z[3])
}

/// Reflects `incoming` in the framed point `(at, frame, tangent)`.
///
/// The lines through `at` form a 2-dimensional space of covectors spanned
/// by the frame `L` and the tangent `T`. Writing `m = αL + βT` the
/// reflection is `αL − βT`, i.e. the harmonic conjugate of `m` with
/// respect to `{L, T}`. The coefficients are read off from `m × T = α L × T`
/// and `m × L = −β L × T` in the coordinate where `at` is largest, so no
/// chart or reference line is involved.
pub fn reflect_line<S: Scalar>(
    at: &Point2<S>,
    incoming: &PLine<S>,
    frame: &PLine<S>,
    tangent: &PLine<S>,
) -> Result<PLine<S>> {
    for l in [incoming, frame, tangent] {
        if !l.contains(at) {
            return Err(Error::NotThroughPoint);
        }
    }
    if frame.same_as(tangent) {
        return Err(Error::DegenerateFrame);
    }
    let k = argmax_magnitude(at.coords()).expect("nonempty");
    let a = cross(incoming.coeffs(), tangent.coeffs())[k].clone();
    let b = cross(incoming.coeffs(), frame.coeffs())[k].clone();
    let out = frame.combine(&a, tangent, &b);
    if out.coeffs().iter().all(Scalar::is_zero) {
        return Err(Error::DegenerateFrame);
    }
    Ok(out)
}
