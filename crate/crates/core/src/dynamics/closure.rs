//! Closure of triangular orbits.

use serde::Serialize;

use crate::curves::{Billiard, FramedCurve, FramedPoint};
use crate::error::{Error, Result};
use crate::projective::{azimuth, harmonic_defect, harmonic_form, reflect_line, P1Value, PLine, Point2};
use crate::scalar::Scalar;

/// How far the triangle started at `A = α(s)`, `B = β(t)` is from closing
/// on the third piece.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureResidual {
    /// Defect of `C` against the equation of the third piece.
    pub incidence: f64,
    /// Harmonic defect of `(CA, CB)` against the frame and tangent at `C`.
    pub azimuth: f64,
    /// Both raw defects vanish identically (exact fields only).
    pub exact_zero: bool,
}

impl ClosureResidual {
    pub fn value(&self) -> f64 {
        self.incidence.max(self.azimuth)
    }
}

/// The pair of mirror images of `AB` at `A` and at `B`, after the
/// genericity checks `B ∉ L_A ∪ T_A` and `A ∉ L_B ∪ T_B`.
pub(crate) fn reflected_pair<S: Scalar>(
    a: &FramedPoint<S>,
    b: &FramedPoint<S>,
) -> Result<(PLine<S>, PLine<S>)> {
    let ab = a
        .point
        .join(&b.point)
        .map_err(|_| Error::DegenerateConfiguration("A = B"))?;
    if a.frame.contains(&b.point) || a.tangent.contains(&b.point) {
        return Err(Error::DegenerateConfiguration("B on L_A or T_A"));
    }
    if b.frame.contains(&a.point) || b.tangent.contains(&a.point) {
        return Err(Error::DegenerateConfiguration("A on L_B or T_B"));
    }
    let at_a = reflect_line(&a.point, &ab, &a.frame, &a.tangent)?;
    let at_b = reflect_line(&b.point, &ab, &b.frame, &b.tangent)?;
    Ok((at_a, at_b))
}

/// Third vertex `C` of the would-be triangle through `A` and `B`.
pub fn third_vertex<S: Scalar>(a: &FramedPoint<S>, b: &FramedPoint<S>) -> Result<Point2<S>> {
    let (la, lb) = reflected_pair(a, b)?;
    la.meet(&lb)
        .map_err(|_| Error::DegenerateConfiguration("reflected lines coincide"))
}

/// Slopes of frame and tangent of `piece` at the curve point nearest `c`,
/// and of `CA` and `CB`.
fn slopes_at<S: Scalar>(
    piece: &FramedCurve<S>,
    a: &Point2<S>,
    b: &Point2<S>,
    c: &Point2<S>,
) -> Result<[P1Value<S>; 4]> {
    if c.is_at_infinity() {
        return Err(Error::ChartDegenerate);
    }
    let u = piece.nearest_param(c)?;
    let m = piece.eval_unchecked(&u)?;
    let ca = c.join(a).map_err(|_| Error::DegenerateConfiguration("C = A"))?;
    let cb = c.join(b).map_err(|_| Error::DegenerateConfiguration("C = B"))?;
    let az = |l: &PLine<S>| azimuth(l).map_err(|_| Error::ChartDegenerate);
    Ok([az(&m.frame)?, az(&m.tangent)?, az(&ca)?, az(&cb)?])
}

/// Closure residual at `A = piece(0)(s)`, `B = piece(1)(t)`: `C` is the meet
/// of the mirror images of `AB` at `A` and `B`, and the residual is the
/// larger of the incidence defect of `C` on `piece(2)` and the harmonic
/// defect of `(CA, CB)` against the frame and tangent of `piece(2)` there,
/// both read in the affine slope chart.
pub fn closure_residual<S: Scalar>(bil: &Billiard<S>, s: &S, t: &S) -> Result<ClosureResidual> {
    let a = bil.piece(0).eval(s)?;
    let b = bil.piece(1).eval(t)?;
    closure_residual_at(bil.piece(2), &a, &b)
}

pub fn closure_residual_at<S: Scalar>(
    piece3: &FramedCurve<S>,
    a: &FramedPoint<S>,
    b: &FramedPoint<S>,
) -> Result<ClosureResidual> {
    let c = third_vertex(a, b)?;
    let [l, t, za, zb] = slopes_at(piece3, &a.point, &b.point, &c)?;
    let incidence = piece3.implicit_defect(&c);
    let azimuth = harmonic_defect(&l, &t, &za, &zb);
    let exact_zero = S::EXACT && harmonic_form(&l, &t, &za, &zb).is_zero() && {
        match piece3.implicit_value(&c) {
            Some(v) => v.is_zero(),
            None => piece3
                .nearest_param(&c)
                .is_ok_and(|u| piece3.point_unchecked(&u).same_as(&c)),
        }
    };
    Ok(ClosureResidual {
        incidence,
        azimuth,
        exact_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::right_spherical;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn triangle() -> Billiard<Rational> {
        right_spherical(
            &Point2::affine(r(0, 1), r(0, 1)),
            &Point2::affine(r(0, 1), r(1, 1)),
            &Point2::affine(r(1, 1), r(0, 1)),
        )
        .unwrap()
    }

    #[test]
    fn right_spherical_closes_exactly() {
        let bil = triangle();
        for (s, t) in [((1, 3), (1, 2)), ((2, 7), (5, 9)), ((9, 10), (1, 10))] {
            let res = closure_residual(&bil, &r(s.0, s.1), &r(t.0, t.1)).unwrap();
            assert!(res.exact_zero, "{s:?} {t:?}");
            assert_eq!(res.value(), 0.0);
        }
    }

    #[test]
    fn moved_pivot_breaks_closure() {
        let p = Point2::affine(0.0, 0.0);
        let q = Point2::affine(0.0, 1.0);
        let rr = Point2::affine(1.0, 0.0);
        let d = crate::curves::Domain::interval(0.0, 1.0);
        let bil = Billiard::new(vec![
            FramedCurve::line_with_pivot(&p, &q, &Point2::affine(1.0, 1e-3), d).unwrap(),
            FramedCurve::line_with_pivot(&q, &rr, &p, d).unwrap(),
            FramedCurve::line_with_pivot(&rr, &p, &q, d).unwrap(),
        ])
        .unwrap();
        assert!(closure_residual(&bil, &0.4, &0.3).unwrap().value() > 1e-6);
    }

    #[test]
    fn frame_through_partner_is_excluded() {
        let bil = triangle();
        // B = R is on every frame through the pivot R of side PQ
        let e = closure_residual(&bil, &r(1, 2), &r(1, 1)).unwrap_err();
        assert!(matches!(e, Error::DegenerateConfiguration(_)));
    }
}
