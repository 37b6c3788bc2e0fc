//! Certified evaluation of the infinite series for `r_l` and `r(m, l)`.
//!
//! Three families are implemented:
//!
//! - the dyadic series `r_l = (1/2) sum_{k>=0} k^l / 2^k` and its barred
//!   generalization `r(m, l) = 1/(2^(m+1) m!) sum_k (k+1)^(rising m) k^l / 2^k`;
//! - the leading asymptotic term `l! / (2 (ln 2)^(l+1))`;
//! - the pole expansion `r_l = l!/(2 (ln 2)^(l+1)) + sum_{k>=1} l! rho_k^-(l+1) T_(l+1)(ln 2 / rho_k)`
//!   with `rho_k = sqrt((ln 2)^2 + 4 pi^2 k^2)`, which converges and whose
//!   truncation error is of the order of the first omitted term.
//!
//! Every result is an [`ApproxValue`] whose interval is guaranteed to contain
//! the exact quantity. Arithmetic runs at the requested precision plus 32
//! guard bits.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, stirling1_row};
use crate::interval::{rational_to_f64, Interval};

pub const DEFAULT_PRECISION_BITS: u32 = 256;
const GUARD_BITS: u32 = 32;
const MAX_TERMS: usize = 1 << 20;

/// Arbitrary-precision value with a rigorous absolute error bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxValue {
    pub value: BigRational,
    pub error_bound: BigRational,
    pub precision_bits: u32,
}

impl ApproxValue {
    pub fn from_interval(x: &Interval, precision_bits: u32) -> Self {
        let (value, error_bound) = x.midpoint_radius();
        Self { value, error_bound, precision_bits }
    }

    pub fn lower(&self) -> BigRational {
        &self.value - &self.error_bound
    }

    pub fn upper(&self) -> BigRational {
        &self.value + &self.error_bound
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.lower() <= *q && *q <= self.upper()
    }

    pub fn contains_integer(&self, n: &BigInt) -> bool {
        self.contains(&BigRational::from_integer(n.clone()))
    }

    /// Nearest integer to the value (halves round up).
    pub fn rounded(&self) -> BigInt {
        (&self.value + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
    }

    /// The integer the interval pins down, when it contains exactly one.
    pub fn certified_integer(&self) -> Option<BigInt> {
        let lo = self.lower().ceil().to_integer();
        let hi = self.upper().floor().to_integer();
        (lo == hi).then_some(lo)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.value)
    }

    pub fn error_f64(&self) -> f64 {
        rational_to_f64(&self.error_bound)
    }

    /// Value in fixed decimal notation with `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_decimal(&self.value, digits)
    }
}

impl fmt::Display for ApproxValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.3e}", self.to_decimal(12), self.error_f64())
    }
}

/// Fixed-point decimal rendering, rounded to nearest at the last place.
pub fn format_decimal(q: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (q * BigRational::from_integer(scale.clone()) + BigRational::new(BigInt::one(), BigInt::from(2)))
        .floor()
        .to_integer();
    let negative = scaled.is_negative();
    let (int, frac) = scaled.abs().div_rem(&scale);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// Chebyshev polynomial of the first kind at an interval argument, by
/// `T_(k+1) = 2x T_k - T_(k-1)`. The result is clipped to `[-1, 1]`, which
/// holds for every point of the domain.
pub fn chebyshev_t(n: usize, x: &Interval) -> Result<Interval> {
    let p = x.precision();
    let unit = Interval::hull(&-BigRational::one(), &BigRational::one(), p);
    if x.lower() < -BigRational::one() || x.upper() > BigRational::one() {
        return Err(Error::Domain { value: x.to_string() });
    }
    let mut prev = Interval::from_integer(1, p);
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = x.clone();
    let two_x = x.mul_int(&BigInt::from(2));
    for _ in 1..n {
        let next = two_x.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur.intersect(&unit).ok_or_else(|| Error::Domain { value: format!("T_{n} evaluated to {cur}") })
}

/// [`chebyshev_t`] for an `f64` argument, evaluated at 128 bits.
pub fn chebyshev_t_f64(n: usize, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::Domain { value: x.to_string() });
    }
    Ok(chebyshev_t(n, &Interval::from_f64(x, 128)?)?.to_f64())
}

/// One Chebyshev evaluation with its domain validated up front.
#[derive(Debug, Clone)]
pub struct ChebyshevEval {
    pub degree: usize,
    pub x: Interval,
}

impl ChebyshevEval {
    pub fn new(degree: usize, x: Interval) -> Result<Self> {
        if x.lower() < -BigRational::one() || x.upper() > BigRational::one() {
            return Err(Error::Domain { value: x.to_string() });
        }
        Ok(Self { degree, x })
    }

    pub fn evaluate(&self) -> Result<Interval> {
        chebyshev_t(self.degree, &self.x)
    }
}

/// `x (x + 1) ... (x + m - 1)`; 1 for `m = 0`.
pub fn rising_factorial<T>(x: T, m: usize) -> T
where
    T: Clone + One + Add<Output = T> + Mul<Output = T>,
{
    let mut acc = T::one();
    let mut factor = x;
    for _ in 0..m {
        acc = acc * factor.clone();
        factor = factor + T::one();
    }
    acc
}

/// Checks `sum_{r=1..s} c(s, r) x^r = x (x+1) ... (x+s-1)` exactly.
pub fn check_stirling_rising_identity(x: &BigInt, s: usize) -> bool {
    let row = stirling1_row(s);
    let lhs = (1..=s).fold(BigInt::zero(), |acc, r| acc + BigInt::from(row[r].clone()) * x.pow(r as u32));
    lhs == rising_factorial(x.clone(), s)
}

/// One summand of a traced evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct TermRecord {
    pub index: usize,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct SeriesEvaluation {
    pub value: ApproxValue,
    pub terms: Vec<TermRecord>,
    /// Rigorous bound on everything not summed.
    pub tail_bound: BigRational,
}

fn eps_rational(eps: f64) -> Result<BigRational> {
    if eps.is_nan() || eps <= 0.0 || eps.is_infinite() {
        return Err(Error::InvalidArgument(format!("eps must be positive and finite, got {eps}")));
    }
    Ok(BigRational::from_float(eps).expect("finite"))
}

/// Sums `prefactor * sum_k num(k) / 2^k`.
///
/// Past `peak`, once the term ratio `ratio(k) = t_(k+1)/t_k` is below 1
/// (ratios are non-increasing for these series) the remaining sum is at most
/// `t_k q / (1 - q)`; summation stops when that bound drops below `eps / 2`.
fn dyadic_series(
    prefactor: &BigRational,
    num: impl Fn(usize) -> BigInt,
    ratio: impl Fn(usize) -> BigRational,
    peak: f64,
    eps: f64,
    bits: u32,
) -> Result<SeriesEvaluation> {
    let eps = eps_rational(eps)?;
    let work = bits + GUARD_BITS;
    let half_eps = &eps / BigRational::from_integer(2.into());
    let pre = Interval::from_rational(prefactor, work);
    let mut sum = Interval::zero(work);
    let mut terms = Vec::new();
    for k in 0..MAX_TERMS {
        let n = num(k);
        let den = BigInt::one() << k;
        let term = Interval::from_ratio(&n, &den, work);
        terms.push(TermRecord {
            index: k,
            value: rational_to_f64(&(prefactor * BigRational::new(n.clone(), den.clone()))),
        });
        sum = sum.add(&term);
        if k == 0 || (k as f64) <= peak {
            continue;
        }
        let q = ratio(k);
        if q >= BigRational::one() {
            continue;
        }
        let t_k = BigRational::new(n, den);
        let tail = prefactor * &t_k * &q / (BigRational::one() - &q);
        if tail >= half_eps {
            continue;
        }
        let total = pre.mul(&sum).add(&Interval::hull(&BigRational::zero(), &tail, work));
        let value = ApproxValue::from_interval(&total, bits);
        if value.error_bound > eps {
            return Err(Error::PrecisionTooLow {
                bits,
                requested: rational_to_f64(&eps).to_string(),
                achieved: value.error_f64().to_string(),
            });
        }
        return Ok(SeriesEvaluation { value, terms, tail_bound: tail });
    }
    Err(Error::PrecisionTooLow {
        bits,
        requested: rational_to_f64(&eps).to_string(),
        achieved: "term limit reached".into(),
    })
}

fn pow_usize(base: usize, exp: usize) -> BigInt {
    BigInt::from(base).pow(exp as u32)
}

/// `r_l = (1/2) sum_{k>=0} k^l / 2^k`, with error bound at most `eps`.
pub fn gross_series_r(l: usize, eps: f64, bits: u32) -> Result<ApproxValue> {
    gross_series_r_traced(l, eps, bits).map(|e| e.value)
}

pub fn gross_series_r_traced(l: usize, eps: f64, bits: u32) -> Result<SeriesEvaluation> {
    let prefactor = BigRational::new(BigInt::one(), BigInt::from(2));
    dyadic_series(
        &prefactor,
        |k| pow_usize(k, l),
        |k| BigRational::new(pow_usize(k + 1, l), pow_usize(k, l) * 2),
        l as f64 / std::f64::consts::LN_2,
        eps,
        bits,
    )
}

/// `r(m, l) = 1/(2^(m+1) m!) sum_{k>=0} (k+1)^(rising m) k^l / 2^k` for `m >= 1`.
pub fn gross_series_barred(m: usize, l: usize, eps: f64, bits: u32) -> Result<ApproxValue> {
    gross_series_barred_traced(m, l, eps, bits).map(|e| e.value)
}

pub fn gross_series_barred_traced(m: usize, l: usize, eps: f64, bits: u32) -> Result<SeriesEvaluation> {
    if m == 0 {
        return Err(Error::InvalidArgument("the barred series needs m >= 1".into()));
    }
    let prefactor = BigRational::new(BigInt::one(), (BigInt::one() << (m + 1)) * BigInt::from(factorial(m)));
    dyadic_series(
        &prefactor,
        |k| rising_factorial(BigInt::from(k + 1), m) * pow_usize(k, l),
        |k| BigRational::new(BigInt::from(k + m + 1) * pow_usize(k + 1, l), BigInt::from(k + 1) * pow_usize(k, l) * 2),
        l as f64 / std::f64::consts::LN_2,
        eps,
        bits,
    )
}

/// Shared constants at a working precision.
struct PoleData {
    ln2: Interval,
    two_pi: Interval,
}

impl PoleData {
    fn new(work: u32) -> Self {
        let ln2 = Interval::ln2(work);
        let two_pi = Interval::pi(work).mul_int(&BigInt::from(2));
        Self { ln2, two_pi }
    }

    fn rho(&self, k: usize) -> Result<Interval> {
        let ak = self.two_pi.mul_int(&BigInt::from(k));
        self.ln2.mul(&self.ln2).add(&ak.mul(&ak)).sqrt()
    }

    /// `l! / (2 (ln 2)^(l+1))`.
    fn main_term(&self, l: usize) -> Result<Interval> {
        let work = self.ln2.precision();
        let fact = Interval::from_integer(BigInt::from(factorial(l)), work);
        fact.div(&self.ln2.powi(l as u32 + 1).mul_int(&BigInt::from(2)))
    }

    /// `l! rho_k^-(l+1) T_(l+1)(ln 2 / rho_k)`.
    fn pair_term(&self, l: usize, k: usize) -> Result<Interval> {
        let work = self.ln2.precision();
        let rho = self.rho(k)?;
        let t = chebyshev_t(l + 1, &self.ln2.div(&rho)?)?;
        let fact = Interval::from_integer(BigInt::from(factorial(l)), work);
        fact.mul(&t).div(&rho.powi(l as u32 + 1))
    }

    /// `l! / rho_k^(l+1)`.
    fn magnitude(&self, l: usize, k: usize) -> Result<Interval> {
        let work = self.ln2.precision();
        let fact = Interval::from_integer(BigInt::from(factorial(l)), work);
        fact.div(&self.rho(k)?.powi(l as u32 + 1))
    }

    /// Upper bound on `sum_{k>K} l! / rho_k^(l+1)` for `l >= 1`:
    /// the `k = K+1` term plus `l! (2 pi)^-(l+1) (K+1)^-l / l` from comparing
    /// the rest with an integral of `(2 pi x)^-(l+1)`.
    fn tail_bound(&self, l: usize, terms: usize) -> Result<BigRational> {
        let work = self.ln2.precision();
        let first = self.magnitude(l, terms + 1)?;
        let fact = Interval::from_integer(BigInt::from(factorial(l)), work);
        let denom = self.two_pi.powi(l as u32 + 1).mul_int(&pow_usize(terms + 1, l)).mul_int(&BigInt::from(l));
        let rest = fact.div(&denom)?;
        Ok(first.add(&rest).upper())
    }
}

fn require_positive_len(l: usize) -> Result<()> {
    if l == 0 {
        return Err(Error::InvalidArgument("the pole expansion holds for l >= 1".into()));
    }
    Ok(())
}

fn convergent_interval(
    data: &PoleData,
    l: usize,
    terms: usize,
    trace: &mut Vec<TermRecord>,
) -> Result<(Interval, BigRational)> {
    let work = data.ln2.precision();
    let main = data.main_term(l)?;
    trace.push(TermRecord { index: 0, value: main.to_f64() });
    let mut acc = main;
    for k in 1..=terms {
        let term = data.pair_term(l, k)?;
        trace.push(TermRecord { index: k, value: term.to_f64() });
        acc = acc.add(&term);
    }
    let tail = data.tail_bound(l, terms)?;
    Ok((acc.add(&Interval::symmetric(&tail, work)), tail))
}

/// Main term plus pair terms `k = 1..=terms` of the pole expansion of `r_l`.
pub fn convergent_series_r(l: usize, terms: usize, bits: u32) -> Result<ApproxValue> {
    convergent_series_r_traced(l, terms, bits).map(|e| e.value)
}

pub fn convergent_series_r_traced(l: usize, terms: usize, bits: u32) -> Result<SeriesEvaluation> {
    require_positive_len(l)?;
    let data = PoleData::new(bits + GUARD_BITS);
    let mut trace = Vec::new();
    let (x, tail_bound) = convergent_interval(&data, l, terms, &mut trace)?;
    Ok(SeriesEvaluation { value: ApproxValue::from_interval(&x, bits), terms: trace, tail_bound })
}

/// `r(m, l) = 1/(2^m m!) sum_i c(m+1, i+1) r_(l+i)` with each `r_(l+i)`
/// from the truncated pole expansion.
pub fn convergent_series_barred(m: usize, l: usize, terms: usize, bits: u32) -> Result<ApproxValue> {
    convergent_series_barred_traced(m, l, terms, bits).map(|e| e.value)
}

pub fn convergent_series_barred_traced(m: usize, l: usize, terms: usize, bits: u32) -> Result<SeriesEvaluation> {
    require_positive_len(l)?;
    let work = bits + GUARD_BITS;
    let data = PoleData::new(work);
    let weights = stirling1_row(m + 1);
    let mut acc = Interval::zero(work);
    let mut trace = Vec::new();
    let mut tail_total = BigRational::zero();
    for i in 0..=m {
        let (x, tail) = convergent_interval(&data, l + i, terms, &mut trace)?;
        let w = BigInt::from(weights[i + 1].clone());
        tail_total += BigRational::from_integer(w.clone()) * tail;
        acc = acc.add(&x.mul_int(&w));
    }
    let divisor = (BigInt::one() << m) * BigInt::from(factorial(m));
    let value = acc.div_int(&divisor);
    Ok(SeriesEvaluation {
        value: ApproxValue::from_interval(&value, bits),
        terms: trace,
        tail_bound: tail_total / BigRational::from_integer(divisor),
    })
}

/// Magnitude `l! / rho_(K+1)^(l+1)` of the first pair term left out when
/// `terms = K` pairs are summed.
pub fn first_omitted_term(l: usize, terms: usize, bits: u32) -> Result<ApproxValue> {
    let data = PoleData::new(bits + GUARD_BITS);
    Ok(ApproxValue::from_interval(&data.magnitude(l, terms + 1)?, bits))
}

/// Leading term `l! / (2 (ln 2)^(l+1))`.
///
/// The error bound is the rigorous bound on all pair terms of the pole
/// expansion, so the interval contains `r_l`.
pub fn asymptotic_leading(l: usize, bits: u32) -> Result<ApproxValue> {
    require_positive_len(l)?;
    let work = bits + GUARD_BITS;
    let data = PoleData::new(work);
    let main = data.main_term(l)?;
    let tail = data.tail_bound(l, 0)?;
    Ok(ApproxValue::from_interval(&main.add(&Interval::symmetric(&tail, work)), bits))
}

/// The constant `C` in `|r_l - leading| <= C l l! / rho^(l+1)` implied by
/// the certified error bound of [`asymptotic_leading`].
pub fn asymptotic_error_constant(l: usize, bits: u32) -> Result<f64> {
    require_positive_len(l)?;
    let data = PoleData::new(bits + GUARD_BITS);
    let tail = data.tail_bound(l, 0)?;
    let scale = data.magnitude(l, 1)?.mul_int(&BigInt::from(l));
    Ok(rational_to_f64(&(tail / scale.lower())))
}

/// `r_l 2 (ln 2)^(l+1) / l!`, enclosed.
pub fn asymptotic_ratio(l: usize, exact: &BigInt, bits: u32) -> Result<ApproxValue> {
    require_positive_len(l)?;
    let work = bits + GUARD_BITS;
    let data = PoleData::new(work);
    let main = data.main_term(l)?;
    let ratio = Interval::from_integer(exact.clone(), work).div(&main)?;
    Ok(ApproxValue::from_interval(&ratio, bits))
}
