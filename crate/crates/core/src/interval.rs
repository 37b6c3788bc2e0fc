//! Fixed-point interval arithmetic over big integers.
//!
//! An [`Interval`] at precision `p` holds integers `lo <= hi` and stands for
//! the real interval `[lo / 2^p, hi / 2^p]`. Every operation rounds its lower
//! end down and its upper end up, so the true result of the exact operation
//! on any points of the inputs lies inside the output.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn shr_floor(x: &BigInt, bits: u32) -> BigInt {
    // BigInt >> rounds toward negative infinity.
    x >> bits
}

fn shr_ceil(x: &BigInt, bits: u32) -> BigInt {
    -((-x) >> bits)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Interval {
    fn from_raw(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Self { lo, hi, prec }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_raw(BigInt::zero(), BigInt::zero(), prec)
    }

    pub fn from_integer(n: impl Into<BigInt>, prec: u32) -> Self {
        let v = n.into() << prec;
        Self::from_raw(v.clone(), v, prec)
    }

    /// Encloses `num / den`; exact when the quotient is a dyadic rational
    /// representable at this precision.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        let scaled = num << prec;
        Self::from_raw(scaled.div_floor(&den), div_ceil(&scaled, &den), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Self::from_ratio(q.numer(), q.denom(), prec)
    }

    /// Encloses a finite `f64` exactly when its binary expansion fits.
    pub fn from_f64(x: f64, prec: u32) -> Result<Self> {
        let q = BigRational::from_float(x).ok_or_else(|| Error::InvalidArgument(format!("{x} is not finite")))?;
        Ok(Self::from_rational(&q, prec))
    }

    /// `[a, b]` with both ends rounded outward.
    pub fn hull(a: &BigRational, b: &BigRational, prec: u32) -> Self {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let lo = Self::from_rational(a, prec).lo;
        let hi = Self::from_rational(b, prec).hi;
        Self::from_raw(lo, hi, prec)
    }

    /// `[-r, r]` for a nonnegative rational `r`.
    pub fn symmetric(radius: &BigRational, prec: u32) -> Self {
        let hi = Self::from_rational(&radius.abs(), prec).hi;
        Self::from_raw(-hi.clone(), hi, prec)
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec)
    }

    pub fn width(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, BigInt::one() << self.prec)
    }

    /// Midpoint and half-width, both exact.
    pub fn midpoint_radius(&self) -> (BigRational, BigRational) {
        let den = BigInt::one() << (self.prec + 1);
        (BigRational::new(&self.lo + &self.hi, den.clone()), BigRational::new(&self.hi - &self.lo, den))
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lower() <= q && q <= &self.upper()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Re-encloses at another precision.
    pub fn with_precision(&self, prec: u32) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = prec - self.prec;
                Self::from_raw(&self.lo << s, &self.hi << s, prec)
            }
            Ordering::Less => {
                let s = self.prec - prec;
                Self::from_raw(shr_floor(&self.lo, s), shr_ceil(&self.hi, s), prec)
            }
        }
    }

    fn same_prec(&self, other: &Self) {
        assert_eq!(self.prec, other.prec, "interval precision mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_prec(other);
        Self::from_raw(&self.lo + &other.lo, &self.hi + &other.hi, self.prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.same_prec(other);
        Self::from_raw(&self.lo - &other.hi, &self.hi - &other.lo, self.prec)
    }

    pub fn neg(&self) -> Self {
        Self::from_raw(-&self.hi, -&self.lo, self.prec)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_prec(other);
        let products = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let min = products.iter().min().expect("four products");
        let max = products.iter().max().expect("four products");
        Self::from_raw(shr_floor(min, self.prec), shr_ceil(max, self.prec), self.prec)
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if a <= b {
            Self::from_raw(a, b, self.prec)
        } else {
            Self::from_raw(b, a, self.prec)
        }
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        assert!(!k.is_zero(), "division by zero");
        let (a, b) = if k.is_negative() { (-&self.hi, -&self.lo) } else { (self.lo.clone(), self.hi.clone()) };
        let k = k.abs();
        Self::from_raw(a.div_floor(&k), div_ceil(&b, &k), self.prec)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_prec(other);
        if other.contains_zero() {
            return Err(Error::InvalidArgument("interval division by an interval containing zero".into()));
        }
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                let scaled = a << self.prec;
                let f = scaled.div_floor(b);
                let c = div_ceil(&scaled, b);
                if lo.as_ref().is_none_or(|l| &f < l) {
                    lo = Some(f);
                }
                if hi.as_ref().is_none_or(|h| &c > h) {
                    hi = Some(c);
                }
            }
        }
        Ok(Self::from_raw(lo.expect("set"), hi.expect("set"), self.prec))
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Self::from_integer(1, self.prec);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Square root of a nonnegative interval.
    pub fn sqrt(&self) -> Result<Self> {
        if self.hi.is_negative() {
            return Err(Error::InvalidArgument("square root of a negative interval".into()));
        }
        let lo_arg = if self.lo.is_negative() { BigInt::zero() } else { &self.lo << self.prec };
        let hi_arg = &self.hi << self.prec;
        let lo = lo_arg.sqrt();
        let mut hi = hi_arg.sqrt();
        if &hi * &hi < hi_arg {
            hi += 1;
        }
        Ok(Self::from_raw(lo, hi, self.prec))
    }

    /// Intersection with `[a, b]`; `None` if disjoint.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        self.same_prec(other);
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then(|| Self::from_raw(lo, hi, self.prec))
    }

    /// The only integer inside the interval, if there is exactly one.
    pub fn unique_integer(&self) -> Option<BigInt> {
        let floor_hi = shr_floor(&self.hi, self.prec);
        let ceil_lo = shr_ceil(&self.lo, self.prec);
        (floor_hi == ceil_lo).then_some(floor_hi)
    }

    pub fn to_f64(&self) -> f64 {
        let (mid, _) = self.midpoint_radius();
        rational_to_f64(&mid)
    }

    /// `ln 2` via `sum_{k>=1} 1 / (k 2^k)` with the tail bounded by
    /// `1 / ((N + 1) 2^N)`.
    pub fn ln2(prec: u32) -> Self {
        let work = prec + 32;
        let terms = work as usize + 2;
        let mut acc = Self::zero(work);
        for k in 1..=terms {
            let den = BigInt::from(k) << k;
            acc = acc.add(&Self::from_ratio(&BigInt::one(), &den, work));
        }
        let tail = BigRational::new(BigInt::one(), BigInt::from(terms + 1) << terms);
        acc = acc.add(&Self::hull(&BigRational::zero(), &tail, work));
        acc.with_precision(prec)
    }

    /// `pi = 16 atan(1/5) - 4 atan(1/239)`.
    pub fn pi(prec: u32) -> Self {
        let work = prec + 32;
        let a = atan_inv(5, work).mul_int(&BigInt::from(16));
        let b = atan_inv(239, work).mul_int(&BigInt::from(4));
        a.sub(&b).with_precision(prec)
    }
}

/// `atan(1/x)` for integer `x > 1`, alternating series with the first
/// omitted term as the tail bound.
fn atan_inv(x: u64, prec: u32) -> Interval {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut acc = Interval::zero(prec);
    let mut power = x.clone(); // x^(2j+1)
    let threshold = BigInt::one() << (prec + 2);
    let mut j = 0u64;
    loop {
        let den = &power * BigInt::from(2 * j + 1);
        let term = Interval::from_ratio(&BigInt::one(), &den, prec);
        acc = if j.is_multiple_of(2) { acc.add(&term) } else { acc.sub(&term) };
        power *= &x2;
        j += 1;
        if power > threshold {
            let next = BigRational::new(BigInt::one(), &power * BigInt::from(2 * j + 1));
            return acc.add(&Interval::symmetric(&next, prec));
        }
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    // Scale to keep 64 significant bits before converting.
    let n = q.numer();
    let d = q.denom();
    if n.is_zero() {
        return 0.0;
    }
    let shift = n.bits() as i64 - d.bits() as i64 - 64;
    let (num, den) = if shift > 0 { (n.clone(), d << shift as u64) } else { (n << (-shift) as u64, d.clone()) };
    let quotient = num / den;
    let mant = quotient.to_f64().unwrap_or(f64::NAN);
    mant * 2f64.powi(shift as i32)
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", rational_to_f64(&self.lower()), rational_to_f64(&self.upper()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn shifts_round_outward() {
        assert_eq!(shr_floor(&BigInt::from(-3), 1), BigInt::from(-2));
        assert_eq!(shr_ceil(&BigInt::from(-3), 1), BigInt::from(-1));
        assert_eq!(shr_ceil(&BigInt::from(3), 1), BigInt::from(2));
    }

    #[test]
    fn ratio_enclosure() {
        let third = Interval::from_ratio(&BigInt::from(1), &BigInt::from(3), 64);
        assert!(third.contains(&q(1, 3)));
        assert!(third.width() <= q(1, 1 << 62));
        let half = Interval::from_ratio(&BigInt::from(-1), &BigInt::from(2), 8);
        assert_eq!(half.lower(), half.upper());
        assert_eq!(Interval::from_f64(0.5, 8).unwrap().lower(), q(1, 2));
    }

    #[test]
    fn arithmetic_contains_exact_results() {
        let p = 80;
        let a = Interval::from_rational(&q(1, 3), p);
        let b = Interval::from_rational(&q(-2, 7), p);
        assert!(a.mul(&b).contains(&q(-2, 21)));
        assert!(a.sub(&b).contains(&q(13, 21)));
        assert!(a.div(&b).unwrap().contains(&q(-7, 6)));
        assert!(b.powi(3).contains(&q(-8, 343)));
        assert!(a.div_int(&BigInt::from(-5)).contains(&q(-1, 15)));
        let two = Interval::from_integer(2, p);
        let root = two.sqrt().unwrap();
        assert!(root.mul(&root).contains(&q(2, 1)));
        assert!(Interval::zero(p).div(&Interval::zero(p)).is_err());
    }

    #[test]
    fn constants() {
        let ln2 = Interval::ln2(200);
        assert!((ln2.to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!(ln2.width() < q(1, 1) / BigRational::from_integer(BigInt::one() << 190));
        let pi = Interval::pi(200);
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!(pi.width() < q(1, 1) / BigRational::from_integer(BigInt::one() << 190));
        // 49 decimals of pi
        let digits = "3.1415926535897932384626433832795028841971693993751";
        let ten49 = BigInt::from(10).pow(49);
        let scaled: BigInt = digits.replace('.', "").parse().unwrap();
        let approx = BigRational::new(scaled, ten49.clone());
        let slack = BigRational::new(BigInt::one(), ten49);
        assert!(pi.lower() < &approx + &slack && &approx - &slack < pi.upper());
    }

    #[test]
    fn unique_integer_detection() {
        let x = Interval::hull(&q(41, 10), &q(43, 10), 32);
        assert!(x.unique_integer().is_none());
        let y = Interval::hull(&q(39, 10), &q(42, 10), 32);
        assert_eq!(y.unique_integer(), Some(BigInt::from(4)));
        assert!(Interval::hull(&q(31, 10), &q(51, 10), 32).unique_integer().is_none());
        assert_eq!(Interval::hull(&q(31, 10), &q(41, 10), 32).unique_integer(), Some(BigInt::from(4)));
    }
}
