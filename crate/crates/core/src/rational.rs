//! Exact rationals with an inline machine-word representation.
//!
//! Values whose reduced numerator and denominator fit in `i64` are stored
//! inline and combined with `i128` intermediates; anything larger spills to
//! [`BigRational`]. The representation is canonical, so equality is
//! structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, `den > 0`.
    Small { num: i64, den: i64 },
    /// Reduced and not representable as `Small`.
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rational {
    /// `num / den` from `i128` parts, reduced; `den ≠ 0`.
    fn from_i128(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs());
        // g ≤ |den|, and g = 2^127 only when num = den = i128::MIN
        let (mut n, mut d) = if g == 1u128 << 127 {
            (1, 1)
        } else {
            (num / g as i128, den / g as i128)
        };
        if d < 0 {
            match (n.checked_neg(), d.checked_neg()) {
                (Some(a), Some(b)) => {
                    n = a;
                    d = b;
                }
                _ => return Self::from_big(BigRational::new(BigInt::from(num), BigInt::from(den))),
            }
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    /// Canonical form of a reduced big rational.
    fn from_big(x: BigRational) -> Self {
        match (x.numer().to_i64(), x.denom().to_i64()) {
            (Some(num), Some(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(x)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(x) => x.clone(),
        }
    }

    pub fn new(num: i64, den: i64) -> Self {
        Self::from_i128(num.into(), den.into())
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Repr::Small { num: n, den: 1 })
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big(x) => x.is_negative(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Exact binary value of a finite float; `None` for NaN and infinities.
    pub fn from_float(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self::from_big)
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } if num.unsigned_abs() < 1 << 53 && *den < 1 << 53 => *num as f64 / *den as f64,
            _ => self.to_big().to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(x) => x.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(x) => x.denom().clone(),
        }
    }

    /// Square root when numerator and denominator are perfect squares.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let (n, d) = (self.numer(), self.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        (&rn * &rn == n && &rd * &rd == d).then(|| Self::from_big(BigRational::new_raw(rn, rd)))
    }

    /// Integer vector proportional to `coords` with coprime entries and
    /// first nonzero entry positive; `None` if all entries vanish.
    pub fn primitive(coords: &[Self]) -> Option<Vec<Self>> {
        if coords.iter().all(Self::is_zero) {
            return None;
        }
        if let Some(v) = Self::primitive_small(coords) {
            return Some(v);
        }
        let lcm = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
        let ints: Vec<BigInt> = coords.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if ints.iter().find(|v| !v.is_zero()).is_some_and(Signed::is_negative) {
            g = -g;
        }
        Some(
            ints.into_iter()
                .map(|v| Self::from_big(BigRational::from_integer(v / &g)))
                .collect(),
        )
    }

    fn primitive_small(coords: &[Self]) -> Option<Vec<Self>> {
        let mut lcm: i128 = 1;
        for c in coords {
            let Repr::Small { den, .. } = c.0 else { return None };
            let den = i128::from(den);
            lcm = (lcm / gcd_u128(lcm as u128, den as u128) as i128).checked_mul(den)?;
        }
        let mut ints = Vec::with_capacity(coords.len());
        for c in coords {
            let Repr::Small { num, den } = c.0 else { return None };
            ints.push(i128::from(num).checked_mul(lcm / i128::from(den))?);
        }
        let mut g = ints.iter().fold(0u128, |acc, v| gcd_u128(acc, v.unsigned_abs())) as i128;
        if ints.iter().find(|v| **v != 0).is_some_and(|v| *v < 0) {
            g = -g;
        }
        ints.into_iter()
            .map(|v| i64::try_from(v / g).ok().map(Self::from_integer))
            .collect()
    }

    fn small_pair(&self, other: &Self) -> Option<(i128, i128, i128, i128)> {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Some(((*a).into(), (*b).into(), (*c).into(), (*d).into()))
            }
            _ => None,
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.small_pair(other) {
            Some((a, b, c, d)) => (a * d).cmp(&(c * b)),
            None => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Neg for Rational {
    type Output = Self;
    fn neg(self) -> Self {
        match self.0 {
            Repr::Small { num, den } if num != i64::MIN => Rational(Repr::Small { num: -num, den }),
            _ => Self::from_big(-self.to_big()),
        }
    }
}

// i64 × i64 products fit in i128, and so do sums of two of them.
impl Add for Rational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        match self.small_pair(&rhs) {
            Some((a, b, c, d)) if b == d => Self::from_i128(a + c, b),
            Some((a, b, c, d)) => Self::from_i128(a * d + c * b, b * d),
            None => Self::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl Sub for Rational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        match self.small_pair(&rhs) {
            Some((a, b, c, d)) if b == d => Self::from_i128(a - c, b),
            Some((a, b, c, d)) => Self::from_i128(a * d - c * b, b * d),
            None => Self::from_big(self.to_big() - rhs.to_big()),
        }
    }
}

impl Mul for Rational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        match self.small_pair(&rhs) {
            Some((a, b, c, d)) => Self::from_i128(a * c, b * d),
            None => Self::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl Div for Rational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "rational division by zero");
        match self.small_pair(&rhs) {
            Some((a, b, c, d)) => Self::from_i128(a * d, b * c),
            None => Self::from_big(self.to_big() / rhs.to_big()),
        }
    }
}
