//! The projective line: values `(u : v)` with `z = u / v` and `∞ = (1 : 0)`.
//!
//! Every operation is written with 2×2 determinants `[a, b] = a.u·b.v − a.v·b.u`
//! so that infinity needs no special casing.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{norm2, Scalar};

use super::point::proportional;

#[derive(Debug, Clone)]
pub struct P1Value<S> {
    pub u: S,
    pub v: S,
}

impl<S: Scalar> P1Value<S> {
    pub fn new(u: S, v: S) -> Result<Self> {
        if u.is_zero() && v.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(Self { u, v })
    }

    pub(crate) fn from_raw(u: S, v: S) -> Self {
        Self { u, v }
    }

    pub fn finite(z: S) -> Self {
        Self { u: z, v: S::one() }
    }

    pub fn infinity() -> Self {
        Self {
            u: S::one(),
            v: S::zero(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.v.near_zero(self.norm())
    }

    /// `u / v`, or `None` at infinity.
    pub fn value(&self) -> Option<S> {
        if self.v.is_zero() {
            None
        } else {
            Some(self.u.clone() / self.v.clone())
        }
    }

    pub fn norm(&self) -> f64 {
        norm2(&[self.u.clone(), self.v.clone()])
    }

    pub fn same_as(&self, other: &Self) -> bool {
        proportional(
            &[self.u.clone(), self.v.clone()],
            &[other.u.clone(), other.v.clone()],
        )
    }

    pub fn normalize(&self) -> Self {
        let mut c = [self.u.clone(), self.v.clone()];
        S::normalize_homogeneous(&mut c);
        let [u, v] = c;
        Self { u, v }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> P1Value<T> {
        P1Value {
            u: f(&self.u),
            v: f(&self.v),
        }
    }

    /// Image under the Möbius map with matrix `[[a, b], [c, d]]`.
    pub fn mobius(&self, m: &[[S; 2]; 2]) -> Self {
        Self {
            u: m[0][0].clone() * self.u.clone() + m[0][1].clone() * self.v.clone(),
            v: m[1][0].clone() * self.u.clone() + m[1][1].clone() * self.v.clone(),
        }
    }

    /// Finite real value as `f64` (`±inf` at infinity).
    pub fn to_f64(&self) -> f64 {
        match self.value() {
            Some(z) => z.real(),
            None => f64::INFINITY,
        }
    }
}

impl<S: Scalar> PartialEq for P1Value<S> {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl<S: Scalar> fmt::Display for P1Value<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(z) => write!(f, "{z}"),
            None => f.write_str("inf"),
        }
    }
}

/// `[a, b] = a.u·b.v − a.v·b.u`.
pub fn det<S: Scalar>(a: &P1Value<S>, b: &P1Value<S>) -> S {
    a.u.clone() * b.v.clone() - a.v.clone() * b.u.clone()
}

fn distinct<S: Scalar>(a: &P1Value<S>, b: &P1Value<S>) -> bool {
    !det(a, b).near_zero(a.norm() * b.norm())
}

/// Value at `x1` of the projective coordinate sending `x2 ↦ 1`, `x3 ↦ 0`,
/// `x4 ↦ ∞`, i.e. `([x1,x3][x2,x4] : [x1,x4][x2,x3])`.
///
/// `x2, x3, x4` must be pairwise distinct.
pub fn cross_ratio_points<S: Scalar>(
    x1: &P1Value<S>,
    x2: &P1Value<S>,
    x3: &P1Value<S>,
    x4: &P1Value<S>,
) -> Result<P1Value<S>> {
    if !distinct(x2, x3) || !distinct(x2, x4) || !distinct(x3, x4) {
        return Err(Error::DegeneratePencil);
    }
    Ok(P1Value::from_raw(
        det(x1, x3) * det(x2, x4),
        det(x1, x4) * det(x2, x3),
    ))
}

/// Harmonic conjugate of `z3` with respect to the pair `{z1, z2}`.
pub fn harmonic_conjugate<S: Scalar>(
    z1: &P1Value<S>,
    z2: &P1Value<S>,
    z3: &P1Value<S>,
) -> Result<P1Value<S>> {
    if !distinct(z1, z2) {
        return Err(Error::DegeneratePair);
    }
    // z3 = a·z1 + b·z2 maps to a·z1 − b·z2, up to the factor [z1, z2]
    let a = det(z3, z2);
    let b = det(z1, z3);
    let num = a.clone() * z1.u.clone() - b.clone() * z2.u.clone();
    let den = a * z1.v.clone() - b * z2.v.clone();
    if num.is_zero() && den.is_zero() {
        return Err(Error::DegeneratePair);
    }
    Ok(P1Value::from_raw(num, den))
}

/// The reflection `z ↦ z'` of the pencil at a framed point with frame
/// azimuth `l` and tangent azimuth `t`: `z'` is harmonic to `z` with respect
/// to `{l, t}`. When `l = t` the map is constant with value `l`.
pub fn reflect_azimuth<S: Scalar>(
    z: &P1Value<S>,
    l: &P1Value<S>,
    t: &P1Value<S>,
) -> Result<P1Value<S>> {
    if !distinct(l, t) {
        return Ok(l.clone());
    }
    harmonic_conjugate(l, t, z)
}

/// Symmetric bilinear form in `(z, w)` vanishing exactly when `{z, w}` and
/// `{l, t}` separate harmonically (for `l ≠ t`).
pub fn harmonic_form<S: Scalar>(
    l: &P1Value<S>,
    t: &P1Value<S>,
    z: &P1Value<S>,
    w: &P1Value<S>,
) -> S {
    let two = S::from_i64(2);
    let slt = l.u.clone() * t.v.clone() + t.u.clone() * l.v.clone();
    let szw = z.u.clone() * w.v.clone() + w.u.clone() * z.v.clone();
    slt * szw
        - two.clone() * l.u.clone() * t.u.clone() * z.v.clone() * w.v.clone()
        - two * z.u.clone() * w.u.clone() * l.v.clone() * t.v.clone()
}

/// Scale-free version of [`harmonic_form`].
pub fn harmonic_defect<S: Scalar>(
    l: &P1Value<S>,
    t: &P1Value<S>,
    z: &P1Value<S>,
    w: &P1Value<S>,
) -> f64 {
    let scale = l.norm() * t.norm() * z.norm() * w.norm();
    if scale == 0.0 {
        return 0.0;
    }
    harmonic_form(l, t, z, w).magnitude() / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> P1Value<Rational> {
        P1Value::finite(Rational::from_ratio(n, d))
    }

    fn inf() -> P1Value<Rational> {
        P1Value::infinity()
    }

    #[test]
    fn cross_ratio_example() {
        let r = cross_ratio_points(&q(5, 1), &q(3, 1), &q(2, 1), &q(4, 1)).unwrap();
        assert_eq!(r, q(-3, 1));
    }

    #[test]
    fn cross_ratio_normalizing_points() {
        let (a, b, c) = (q(7, 3), q(-1, 2), q(5, 1));
        assert_eq!(cross_ratio_points(&a, &a, &b, &c).unwrap(), q(1, 1));
        assert_eq!(cross_ratio_points(&b, &a, &b, &c).unwrap(), q(0, 1));
        assert_eq!(cross_ratio_points(&c, &a, &b, &c).unwrap(), inf());
        assert_eq!(
            cross_ratio_points(&a, &b, &b, &c).unwrap_err(),
            Error::DegeneratePencil
        );
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(
            harmonic_conjugate(&q(1, 1), &q(-1, 1), &q(2, 1)).unwrap(),
            q(1, 2)
        );
        assert_eq!(
            harmonic_conjugate(&q(0, 1), &inf(), &q(5, 1)).unwrap(),
            q(-5, 1)
        );
        assert_eq!(
            harmonic_conjugate(&q(2, 1), &q(2, 1), &q(5, 1)).unwrap_err(),
            Error::DegeneratePair
        );
    }

    #[test]
    fn reflect_examples() {
        let r = reflect_azimuth(&q(-3, 1), &q(-3, 5), &inf()).unwrap();
        assert_eq!(r, q(9, 5));
        let r = reflect_azimuth(&q(9, 5), &q(6, 1), &q(-1, 1)).unwrap();
        assert_eq!(r, q(-15, 1));
        let r = reflect_azimuth(&q(7, 4), &inf(), &q(0, 1)).unwrap();
        assert_eq!(r, q(-7, 4));
        let r = reflect_azimuth(&q(7, 4), &q(2, 1), &q(2, 1)).unwrap();
        assert_eq!(r, q(2, 1));
    }

    #[test]
    fn harmonic_form_detects_harmonic_pairs() {
        let (l, t) = (q(6, 1), q(-1, 1));
        assert!(harmonic_form(&l, &t, &q(9, 5), &q(-15, 1)).is_zero());
        assert!(!harmonic_form(&l, &t, &q(9, 5), &q(-14, 1)).is_zero());
        // degenerate pair: form factors through [l,z][l,w]
        assert!(harmonic_form(&l, &l, &q(6, 1), &q(3, 1)).is_zero());
    }
}
