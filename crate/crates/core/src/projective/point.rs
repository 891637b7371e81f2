//! Homogeneous points and lines.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{norm2, Scalar};

/// A point of projective space in homogeneous coordinates.
///
/// `N = 3` gives the projective plane, `N = 4` projective 3-space. Two
/// representatives that differ by a nonzero factor compare equal.
#[derive(Debug, Clone)]
pub struct PPoint<S, const N: usize> {
    coords: [S; N],
}

/// Point of the projective plane.
pub type Point2<S> = PPoint<S, 3>;
/// Point of projective 3-space.
pub type Point3<S> = PPoint<S, 4>;

/// A line of the projective plane, stored as the covector `(a, b, c)` of the
/// equation `a·x + b·y + c·w = 0`.
#[derive(Debug, Clone)]
pub struct PLine<S> {
    coeffs: [S; 3],
}

pub(crate) fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub(crate) fn cross<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

/// Whether two homogeneous vectors are proportional: every 2×2 minor
/// vanishes (relative to `‖a‖·‖b‖` in floating fields).
pub(crate) fn proportional<S: Scalar>(a: &[S], b: &[S]) -> bool {
    let scale = norm2(a) * norm2(b);
    for i in 0..a.len() {
        for j in (i + 1)..a.len() {
            let minor = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
            if !minor.near_zero(scale) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn is_null<S: Scalar>(v: &[S], scale: f64) -> bool {
    v.iter().all(|c| c.near_zero(scale))
}

impl<S: Scalar, const N: usize> PPoint<S, N> {
    pub fn new(coords: [S; N]) -> Result<Self> {
        if coords.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { coords })
    }

    /// Wraps coordinates without the nonzero check.
    pub fn from_coords_unchecked(coords: [S; N]) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[S; N] {
        &self.coords
    }

    pub fn into_coords(self) -> [S; N] {
        self.coords
    }

    /// Canonical representative (see [`Scalar::normalize_homogeneous`]).
    pub fn normalize(&self) -> Self {
        let mut coords = self.coords.clone();
        S::normalize_homogeneous(&mut coords);
        Self { coords }
    }

    /// The last coordinate vanishes.
    pub fn is_at_infinity(&self) -> bool {
        self.coords[N - 1].near_zero(norm2(&self.coords))
    }

    /// Affine coordinates `x_i / w`, or `None` for points at infinity.
    pub fn to_affine(&self) -> Option<Vec<S>> {
        let w = &self.coords[N - 1];
        if w.is_zero() {
            return None;
        }
        Some(
            self.coords[..N - 1]
                .iter()
                .map(|c| c.clone() / w.clone())
                .collect(),
        )
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.coords)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> PPoint<T, N> {
        PPoint {
            coords: std::array::from_fn(|i| f(&self.coords[i])),
        }
    }

    /// Projective equality (equality up to a nonzero factor).
    pub fn same_as(&self, other: &Self) -> bool {
        proportional(&self.coords, &other.coords)
    }

    /// `a·self + b·other` on representatives.
    pub fn combine(&self, a: &S, other: &Self, b: &S) -> Self {
        Self {
            coords: std::array::from_fn(|i| {
                a.clone() * self.coords[i].clone() + b.clone() * other.coords[i].clone()
            }),
        }
    }
}

impl<S: Scalar> Point2<S> {
    pub fn affine(x: S, y: S) -> Self {
        Self {
            coords: [x, y, S::one()],
        }
    }

    pub fn xy(&self) -> Option<(S, S)> {
        self.to_affine().map(|v| (v[0].clone(), v[1].clone()))
    }

    /// Line through `self` and `other`.
    pub fn join(&self, other: &Self) -> Result<PLine<S>> {
        let c = cross(&self.coords, &other.coords);
        if is_null(&c, self.norm() * other.norm()) {
            return Err(Error::CoincidentPoints);
        }
        Ok(PLine { coeffs: c })
    }

    pub fn lies_on(&self, line: &PLine<S>) -> bool {
        line.contains(self)
    }
}

impl<S: Scalar, const N: usize> PartialEq for PPoint<S, N> {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl<S: Scalar, const N: usize> fmt::Display for PPoint<S, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalize();
        write!(f, "[")?;
        for (i, c) in n.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> PLine<S> {
    pub fn new(coeffs: [S; 3]) -> Result<Self> {
        if coeffs.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { coeffs })
    }

    /// Wraps coefficients without the nonzero check.
    pub fn from_coeffs_unchecked(coeffs: [S; 3]) -> Self {
        Self { coeffs }
    }

    /// The line `w = 0`.
    pub fn infinity() -> Self {
        Self {
            coeffs: [S::zero(), S::zero(), S::one()],
        }
    }

    pub fn coeffs(&self) -> &[S; 3] {
        &self.coeffs
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.coeffs)
    }

    pub fn normalize(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        S::normalize_homogeneous(&mut coeffs);
        Self { coeffs }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> PLine<T> {
        PLine {
            coeffs: std::array::from_fn(|i| f(&self.coeffs[i])),
        }
    }

    /// `⟨p, l⟩`.
    pub fn eval(&self, p: &Point2<S>) -> S {
        dot(&self.coeffs, p.coords())
    }

    /// Incidence: `⟨p, l⟩ = 0` exactly, or `|⟨p, l⟩| ≤ 1e-10·‖p‖‖l‖`.
    pub fn contains(&self, p: &Point2<S>) -> bool {
        self.eval(p).near_zero(self.norm() * p.norm())
    }

    /// Scale-free incidence defect `|⟨p, l⟩| / (‖p‖‖l‖)`.
    pub fn incidence_defect(&self, p: &Point2<S>) -> f64 {
        let scale = self.norm() * p.norm();
        if scale == 0.0 {
            return 0.0;
        }
        self.eval(p).magnitude() / scale
    }

    /// Intersection point of `self` and `other`.
    pub fn meet(&self, other: &Self) -> Result<Point2<S>> {
        let c = cross(&self.coeffs, &other.coeffs);
        if is_null(&c, self.norm() * other.norm()) {
            return Err(Error::CoincidentLines);
        }
        Ok(PPoint::from_coords_unchecked(c))
    }

    pub fn same_as(&self, other: &Self) -> bool {
        proportional(&self.coeffs, &other.coeffs)
    }

    pub fn combine(&self, a: &S, other: &Self, b: &S) -> Self {
        Self {
            coeffs: std::array::from_fn(|i| {
                a.clone() * self.coeffs[i].clone() + b.clone() * other.coeffs[i].clone()
            }),
        }
    }

    /// Point at infinity of the line, i.e. its direction `(b, −a, 0)`.
    pub fn direction(&self) -> [S; 2] {
        [self.coeffs[1].clone(), -self.coeffs[0].clone()]
    }
}

impl<S: Scalar> PartialEq for PLine<S> {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl<S: Scalar> fmt::Display for PLine<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.normalize();
        write!(f, "<{}:{}:{}>", n.coeffs[0], n.coeffs[1], n.coeffs[2])
    }
}
