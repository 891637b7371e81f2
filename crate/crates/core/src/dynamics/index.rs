//! Order of contact between a curve and a line.

use serde::Serialize;

use crate::curves::FramedCurve;
use crate::error::{Error, Result};
use crate::projective::{PLine, Point2};
use crate::scalar::Scalar;

/// Intersection multiplicity `I ≥ 1` of a line and a curve at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IntersectionIndex(u32);

impl IntersectionIndex {
    pub fn value(self) -> u32 {
        self.0
    }
}

/// Vanishing order at `at` of `⟨line, A(u)⟩`, read off the Taylor
/// coefficients of the restricted polynomial.
pub fn intersection_index<S: Scalar>(
    curve: &FramedCurve<S>,
    line: &PLine<S>,
    at: &Point2<S>,
) -> Result<IntersectionIndex> {
    if !line.contains(at) {
        return Err(Error::LineNotThroughPoint);
    }
    let u0 = curve.locate(at)?;
    let f = curve.restrict_line(line);
    let coeffs = f.taylor_at(&u0);
    let scale = coeffs.iter().map(Scalar::magnitude).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::CurveInLine);
    }
    let first = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, c)| !c.near_zero(scale))
        .map(|(k, _)| k)
        .ok_or(Error::CurveInLine)?;
    Ok(IntersectionIndex(first as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{Domain, Poly};
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn indices_one_two_three() {
        let circle = FramedCurve::circle([q(0), q(0)], q(1), Domain::Whole).unwrap();
        let p = Point2::affine(q(1), q(0));
        let secant = p.join(&Point2::affine(q(0), q(1))).unwrap();
        let tangent = PLine::new([q(1), q(0), q(-1)]).unwrap();
        assert_eq!(intersection_index(&circle, &secant, &p).unwrap().value(), 1);
        assert_eq!(intersection_index(&circle, &tangent, &p).unwrap().value(), 2);

        let cubic = FramedCurve::graph(
            Poly::new(vec![q(0), q(0), q(0), q(1)]),
            Poly::constant(q(1)),
            Domain::Whole,
        )
        .unwrap();
        let o = Point2::affine(q(0), q(0));
        let x_axis = PLine::new([q(0), q(1), q(0)]).unwrap();
        assert_eq!(intersection_index(&cubic, &x_axis, &o).unwrap().value(), 3);
    }

    #[test]
    fn line_must_pass_through_point() {
        let circle = FramedCurve::circle([q(0), q(0)], q(1), Domain::Whole).unwrap();
        let p = Point2::affine(q(1), q(0));
        let far = PLine::new([q(1), q(0), q(-5)]).unwrap();
        assert_eq!(
            intersection_index(&circle, &far, &p).unwrap_err(),
            Error::LineNotThroughPoint
        );
    }
}
