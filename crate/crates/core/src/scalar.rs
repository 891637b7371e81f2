//! Field abstraction shared by every geometric routine.
//!
//! Geometry is written once against [`Scalar`] and instantiated over `f64`,
//! `Complex64`, exact [`Rational`]s, and the forward-mode [`Dual`] numbers
//! used for Jacobians. Zero tests are exact in exact fields and relative to a
//! caller-supplied scale in floating fields.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance of floating incidence and equality predicates.
pub const INCIDENCE_TOL: f64 = 1e-10;

pub use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldMode {
    /// Floating reals.
    #[serde(rename = "f-real")]
    Real,
    /// Floating complex numbers.
    #[serde(rename = "f-complex")]
    Complex,
    /// Exact rationals.
    Rational,
}

impl Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FieldMode::Real => "f-real",
            FieldMode::Complex => "f-complex",
            FieldMode::Rational => "rational",
        };
        f.write_str(name)
    }
}

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const MODE: FieldMode;
    /// Zero tests are decided exactly.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// Exact binary value of `x` in exact fields.
    fn from_f64(x: f64) -> Self;
    /// Exact zero test (on the primal part for dual numbers).
    fn is_zero(&self) -> bool;
    /// Absolute value (modulus) as a float.
    fn magnitude(&self) -> f64;
    /// Real part as a float; used for domain checks and rendering.
    fn real(&self) -> f64;
    /// A square root in the field, when one exists.
    fn sqrt(&self) -> Option<Self>;
    /// Value as a floating complex number (primal part for dual numbers).
    fn to_c64(&self) -> Complex64;
    /// Nearest field element to a floating complex number (real part only in
    /// real fields).
    fn from_c64(z: Complex64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.clone() / rhs.clone())
    }

    /// Zero up to `INCIDENCE_TOL * scale` in floating fields; exact otherwise.
    fn near_zero(&self, scale: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= INCIDENCE_TOL * scale
        }
    }

    /// Canonical representative of a homogeneous vector.
    ///
    /// The default divides by the component of largest magnitude (first one on
    /// ties), so that component becomes exactly one.
    fn normalize_homogeneous(coords: &mut [Self]) {
        let Some(k) = argmax_magnitude(coords) else {
            return;
        };
        if coords[k].is_zero() {
            return;
        }
        let pivot = coords[k].clone();
        for c in coords.iter_mut() {
            *c = c.clone() / pivot.clone();
        }
    }
}

/// Index of the entry of largest magnitude (first on ties).
pub fn argmax_magnitude<S: Scalar>(coords: &[S]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, c) in coords.iter().enumerate() {
        let m = c.magnitude();
        if best.is_none_or(|(_, b)| m > b) {
            best = Some((i, m));
        }
    }
    best.map(|(i, _)| i)
}

/// Euclidean norm of the magnitudes.
pub fn norm2<S: Scalar>(coords: &[S]) -> f64 {
    coords.iter().map(|c| c.magnitude().powi(2)).sum::<f64>().sqrt()
}

impl Scalar for f64 {
    const MODE: FieldMode = FieldMode::Real;
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn real(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z.re
    }
}

impl Scalar for Complex64 {
    const MODE: FieldMode = FieldMode::Complex;
    const EXACT: bool = false;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn real(&self) -> f64 {
        self.re
    }
    fn sqrt(&self) -> Option<Self> {
        Some(Complex64::sqrt(*self))
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
}

impl Scalar for Rational {
    const MODE: FieldMode = FieldMode::Rational;
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n)
    }
    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).unwrap_or_default()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(num, den)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64()
    }
    fn real(&self) -> f64 {
        self.to_f64()
    }
    fn sqrt(&self) -> Option<Self> {
        Rational::sqrt(self)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.real(), 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        Self::from_f64(z.re)
    }

    /// Clears denominators, divides by the gcd of the numerators and makes the
    /// first nonzero component positive.
    fn normalize_homogeneous(coords: &mut [Self]) {
        if let Some(p) = Rational::primitive(coords) {
            for (c, v) in coords.iter_mut().zip(p) {
                *c = v;
            }
        }
    }
}

/// Forward-mode dual number `value + eps·ε` with `ε² = 0`.
///
/// Predicates (zero tests, magnitudes) look at the primal part only, so any
/// geometric routine written against [`Scalar`] differentiates itself when
/// instantiated with `Dual`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual<T> {
    pub value: T,
    pub eps: T,
}

impl<T: Scalar> Dual<T> {
    pub fn new(value: T, eps: T) -> Self {
        Self { value, eps }
    }

    pub fn constant(value: T) -> Self {
        Self {
            value,
            eps: T::zero(),
        }
    }

    /// Independent variable seeded with unit tangent.
    pub fn variable(value: T) -> Self {
        Self {
            value,
            eps: T::one(),
        }
    }
}

impl<T: Scalar> Display for Dual<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.value, self.eps)
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual::new(self.value + rhs.value, self.eps + rhs.eps)
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.value - rhs.value, self.eps - rhs.eps)
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let eps = self.value.clone() * rhs.eps + self.eps * rhs.value.clone();
        Dual::new(self.value * rhs.value, eps)
    }
}

impl<T: Scalar> Div for Dual<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let value = self.value.clone() / rhs.value.clone();
        let eps = (self.eps - value.clone() * rhs.eps) / rhs.value;
        Dual::new(value, eps)
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.value, -self.eps)
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    const MODE: FieldMode = T::MODE;
    const EXACT: bool = T::EXACT;

    fn zero() -> Self {
        Dual::constant(T::zero())
    }
    fn one() -> Self {
        Dual::constant(T::one())
    }
    fn from_i64(n: i64) -> Self {
        Dual::constant(T::from_i64(n))
    }
    fn from_f64(x: f64) -> Self {
        Dual::constant(T::from_f64(x))
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
    fn magnitude(&self) -> f64 {
        self.value.magnitude()
    }
    fn real(&self) -> f64 {
        self.value.real()
    }
    fn sqrt(&self) -> Option<Self> {
        let root = self.value.sqrt()?;
        if root.is_zero() {
            return None;
        }
        let eps = self.eps.clone() / (T::from_i64(2) * root.clone());
        Some(Dual::new(root, eps))
    }
    fn to_c64(&self) -> Complex64 {
        self.value.to_c64()
    }
    fn from_c64(z: Complex64) -> Self {
        Dual::constant(T::from_c64(z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn rational_normalization_is_canonical() {
        let mut v = vec![q(-2, 3), q(4, 9), q(0, 1)];
        Rational::normalize_homogeneous(&mut v);
        assert_eq!(v, vec![q(3, 1), q(-2, 1), q(0, 1)]);
        let again = {
            let mut w = v.clone();
            Rational::normalize_homogeneous(&mut w);
            w
        };
        assert_eq!(v, again);
    }

    #[test]
    fn float_normalization_divides_by_largest() {
        let mut v = vec![1.0, -4.0, 2.0];
        f64::normalize_homogeneous(&mut v);
        assert_eq!(v, vec![-0.25, 1.0, -0.5]);
    }

    #[test]
    fn division_by_zero_is_detected() {
        assert_eq!(1.0f64.checked_div(&0.0), Err(Error::DivisionByZero));
        assert_eq!(q(1, 2).checked_div(&q(0, 1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_sqrt_only_for_squares() {
        assert_eq!(Scalar::sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(Scalar::sqrt(&q(2, 1)), None);
        assert_eq!(Scalar::sqrt(&q(-1, 1)), None);
    }

    #[test]
    fn dual_numbers_differentiate_rational_functions() {
        // f(x) = (x^2 + 1) / (x - 3), f'(x) = (x^2 - 6x - 1) / (x - 3)^2
        let x = Dual::variable(2.0);
        let f = (x * x + Dual::one()) / (x - Dual::from_i64(3));
        assert_eq!(f.value, -5.0);
        assert!((f.eps - (4.0 - 12.0 - 1.0)).abs() < 1e-15);
        let s = Scalar::sqrt(&Dual::variable(4.0)).unwrap();
        assert_eq!((s.value, s.eps), (2.0, 0.25));
    }
}
