//! Truncated power series with exact rational coefficients, used to rebuild
//! the counting sequences from their exponential generating functions.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, BigNat};

/// `c_0 + c_1 z + ... + c_N z^N`, coefficients in lowest terms.
///
/// Binary operations on series of different order truncate to the smaller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSeries {
    coeffs: Vec<BigRational>,
}

impl ExactSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least its constant term");
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    /// `e^z` through `z^order`.
    pub fn exp(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut fact = BigInt::one();
        for j in 0..=order {
            if j > 0 {
                fact *= j;
            }
            coeffs.push(BigRational::new(BigInt::one(), fact.clone()));
        }
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &BigRational {
        &self.coeffs[j]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    /// Multiplicative inverse via `b_0 = 1/a_0`, `b_n = -(1/a_0) sum_{k>=1} a_k b_{n-k}`.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = a0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &out[n - k];
            }
            out.push(-(acc * &inv0));
        }
        Ok(Self { coeffs: out })
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| (0..=n).fold(BigRational::zero(), |acc, k| acc + &self.coeffs[k] * &other.coeffs[n - k]))
            .collect();
        Self { coeffs }
    }

    /// Repeated squaring.
    pub fn pow(&self, mut p: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while p > 0 {
            if p & 1 == 1 {
                result = result.mul(&base);
            }
            p >>= 1;
            if p > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Termwise derivative; the order drops by one (an order-0 series has
    /// derivative zero of order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::one(0).scale(&BigRational::zero());
        }
        let coeffs = (1..self.coeffs.len()).map(|j| &self.coeffs[j] * BigRational::from_integer(j.into())).collect();
        Self { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// `j! c_j`, required to be a nonnegative integer.
    pub fn egf_coefficient(&self, j: usize) -> Result<BigNat> {
        let v = &self.coeffs[j] * BigRational::from_integer(factorial(j).into());
        if !v.is_integer() || v.is_negative() {
            return Err(Error::NonIntegralCoefficient { index: j, value: v.to_string() });
        }
        Ok(v.to_integer().magnitude().clone())
    }

    /// `[0! c_0, 1! c_1, ..., N! c_N]`.
    pub fn egf_coefficients(&self) -> Result<Vec<BigNat>> {
        (0..self.coeffs.len()).map(|j| self.egf_coefficient(j)).collect()
    }
}

fn zip_with(a: &ExactSeries, b: &ExactSeries, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> ExactSeries {
    let order = a.order().min(b.order());
    ExactSeries { coeffs: (0..=order).map(|j| f(&a.coeffs[j], &b.coeffs[j])).collect() }
}

impl Add for &ExactSeries {
    type Output = ExactSeries;
    fn add(self, rhs: Self) -> ExactSeries {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Sub for &ExactSeries {
    type Output = ExactSeries;
    fn sub(self, rhs: Self) -> ExactSeries {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Mul for &ExactSeries {
    type Output = ExactSeries;
    fn mul(self, rhs: Self) -> ExactSeries {
        ExactSeries::mul(self, rhs)
    }
}

impl Neg for &ExactSeries {
    type Output = ExactSeries;
    fn neg(self) -> ExactSeries {
        ExactSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// `1 / (2 - e^z)`, the generating function of the ordered Bell numbers.
pub fn ordered_bell_egf(order: usize) -> Result<ExactSeries> {
    let two = ExactSeries::constant(BigRational::from_integer(2.into()), order);
    (&two - &ExactSeries::exp(order)).invert()
}

/// `1 / (2 - e^z)^(m+1)`: `l!` times the `z^l` coefficient is `r(m, l)`.
pub fn egf_r(m: usize, order: usize) -> Result<ExactSeries> {
    Ok(ordered_bell_egf(order)?.pow(exponent(m)?))
}

/// `((e^z - 1) / (2 - e^z))^(m+1)`: `l!` times the `z^l` coefficient is `s(m, l)`.
pub fn egf_s(m: usize, order: usize) -> Result<ExactSeries> {
    let numerator = &ExactSeries::exp(order) - &ExactSeries::one(order);
    Ok(numerator.mul(&ordered_bell_egf(order)?).pow(exponent(m)?))
}

fn exponent(m: usize) -> Result<u32> {
    u32::try_from(m + 1).map_err(|_| Error::InvalidArgument(format!("bar count {m} too large")))
}

/// Checks `d/dz r_{m-1}(z) + m r_{m-1}(z) = 2m r_m(z)` through `z^(order-1)`.
pub fn check_derivative_identity(m: usize, order: usize) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidArgument("the derivative identity needs m >= 1".into()));
    }
    if order == 0 {
        return Ok(true);
    }
    let prev = egf_r(m - 1, order)?;
    let cur = egf_r(m, order)?;
    let mf = BigRational::from_integer(m.into());
    let lhs = &prev.derivative() + &prev.scale(&mf);
    let rhs = cur.scale(&(mf * BigRational::from_integer(2.into()))).truncate(order - 1);
    Ok(lhs == rhs)
}
