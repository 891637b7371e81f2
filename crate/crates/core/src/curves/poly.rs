//! Dense univariate polynomials over a [`Scalar`] field.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Polynomial with coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(S::zero());
        }
        Self { coeffs }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `a + b·u`.
    pub fn linear(a: S, b: S) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn eval(&self, u: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * u.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::constant(S::zero());
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| S::from_i64(k as i64) * c.clone())
                .collect(),
        )
    }

    pub fn scale(&self, a: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * a.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(S::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(S::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Taylor coefficients at `u0`, i.e. the coefficients of `p(u0 + h)` in `h`.
    pub fn taylor_at(&self, u0: &S) -> Vec<S> {
        // repeated synthetic division
        let mut work = self.coeffs.clone();
        let n = work.len();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            for i in (k..n - 1).rev() {
                let carry = work[i + 1].clone() * u0.clone();
                work[i] = work[i].clone() + carry;
            }
            out.push(work[k].clone());
        }
        out
    }

    /// Quotient of the division by `u − root` (the remainder is dropped).
    pub fn deflate(&self, root: &S) -> Self {
        let n = self.coeffs.len();
        if n <= 1 {
            return Self::constant(S::zero());
        }
        let mut q = vec![S::zero(); n - 1];
        let mut carry = S::zero();
        for i in (1..n).rev() {
            carry = self.coeffs[i].clone() + carry * root.clone();
            q[i - 1] = carry.clone();
        }
        Self::new(q)
    }

    /// [`Poly::deflate`] for a quadratic with a large known root: the
    /// cofactor is built from the product of the roots `c₀ / (c₂·root)`
    /// rather than their sum, which would cancel.
    pub fn deflate_stable(&self, root: &S) -> Self {
        if S::EXACT || self.degree() != 2 || root.magnitude() <= 1.0 {
            return self.deflate(root);
        }
        let (c0, c2) = (self.coeffs[0].clone(), self.coeffs[2].clone());
        // c₂·(u − other) with other = c₀ / (c₂·root)
        Self::new(vec![-(c0 / root.clone()), c2])
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Roots in the field: exact for degree ≤ 2 when the square root exists,
    /// companion-matrix eigenvalues polished by Newton steps in `S` otherwise.
    ///
    /// Real fields return only the real roots. Exact fields fail with
    /// [`Error::NotExact`] for degree ≥ 3 and for irrational quadratic roots.
    pub fn roots(&self) -> Result<Vec<S>> {
        match self.degree() {
            0 => Ok(Vec::new()),
            1 => Ok(vec![-self.coeffs[0].clone() / self.coeffs[1].clone()]),
            2 => quadratic_roots(&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]),
            _ => {
                if S::EXACT {
                    return Err(Error::NotExact);
                }
                self.numeric_roots()
            }
        }
    }

    fn numeric_roots(&self) -> Result<Vec<S>> {
        let n = self.degree();
        let lead = self.coeffs[n].to_c64();
        let mut m = DMatrix::<Complex64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..n {
            m[(i, n - 1)] = -self.coeffs[i].to_c64() / lead;
        }
        let eig = m
            .schur()
            .eigenvalues()
            .ok_or(Error::DegenerateConfiguration("polynomial root finding"))?;
        let complex_field = S::MODE == crate::scalar::FieldMode::Complex;
        let d = self.derivative();
        let mut roots = Vec::new();
        for z in eig.iter() {
            if !complex_field && z.im.abs() > 1e-7 * (1.0 + z.norm()) {
                continue;
            }
            let mut u = S::from_c64(*z);
            for _ in 0..4 {
                let du = d.eval(&u);
                if du.is_zero() {
                    break;
                }
                u = u.clone() - self.eval(&u) / du;
            }
            roots.push(u);
        }
        Ok(roots)
    }
}

/// Roots of `c + b·u + a·u²`, in the cancellation-free form.
fn quadratic_roots<S: Scalar>(c: &S, b: &S, a: &S) -> Result<Vec<S>> {
    let two = S::from_i64(2);
    let disc = b.clone() * b.clone() - S::from_i64(4) * a.clone() * c.clone();
    let Some(s) = disc.sqrt() else {
        if S::EXACT && disc.real() >= 0.0 {
            return Err(Error::NotExact);
        }
        return Ok(Vec::new());
    };
    let plus = b.clone() + s.clone();
    let minus = b.clone() - s;
    let q = if plus.magnitude() >= minus.magnitude() {
        -plus / two
    } else {
        -minus / two
    };
    if q.is_zero() {
        // b = 0 and c = 0: double root at the origin
        return Ok(vec![S::zero(), S::zero()]);
    }
    Ok(vec![q.clone() / a.clone(), c.clone() / q])
}
