//! Exact big-integer kernels for ordered Bell numbers, barred counts `r(m, l)`
//! and special (no empty section) counts `s(m, l)`.
//!
//! Every sequence has several independent formulas. Formulas with rational
//! coefficients are evaluated as integer numerators followed by an exact
//! division that is checked, so each evaluation is also a consistency check.
//!
//! Conventions for `l = 0`: every `r` routine returns 1 and every `s` routine
//! returns 0.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer used for all exact counts.
pub type BigNat = BigUint;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigNat {
    if k > n {
        return BigNat::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigNat::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of size-`k` multisets over `n` symbols, `C(n + k - 1, k)`.
pub fn multichoose(n: usize, k: usize) -> BigNat {
    if k == 0 {
        return BigNat::one();
    }
    if n == 0 {
        return BigNat::zero();
    }
    binomial(n + k - 1, k)
}

pub fn factorial(n: usize) -> BigNat {
    (1..=n).fold(BigNat::one(), |acc, i| acc * i)
}

/// Row `n` of the Stirling triangle of the second kind, entries `k = 0..=n`.
pub fn stirling2_row(n: usize) -> Vec<BigNat> {
    let mut row = vec![BigNat::one()];
    for len in 1..=n {
        let mut next = vec![BigNat::zero(); len + 1];
        for k in 1..=len {
            let stay = if k < row.len() { &row[k] * k } else { BigNat::zero() };
            next[k] = stay + &row[k - 1];
        }
        row = next;
    }
    row
}

/// Partitions of an `l`-set into `k` nonempty blocks.
pub fn stirling2(l: usize, k: usize) -> BigNat {
    if k > l {
        return BigNat::zero();
    }
    stirling2_row(l).swap_remove(k)
}

/// Row `n` of the unsigned Stirling triangle of the first kind, entries
/// `k = 0..=n`, built with `c(n+1, j+1) = c(n, j) + n * c(n, j+1)`.
pub fn stirling1_row(n: usize) -> Vec<BigNat> {
    let mut row = vec![BigNat::one()];
    for len in 0..n {
        let mut next = vec![BigNat::zero(); len + 2];
        for j in 0..=len {
            let carried = if j < len { &row[j + 1] * len } else { BigNat::zero() };
            next[j + 1] = &row[j] + carried;
        }
        row = next;
    }
    row
}

/// Permutations of `n` elements with exactly `k` cycles.
pub fn stirling1_unsigned(n: usize, k: usize) -> BigNat {
    if k > n {
        return BigNat::zero();
    }
    stirling1_row(n).swap_remove(k)
}

/// Ordered Bell numbers `r_0..=r_n` from `r_n = sum_{k>=1} C(n,k) r_{n-k}`.
pub fn ordered_bell_prefix(n: usize) -> Vec<BigNat> {
    let mut values: Vec<BigNat> = Vec::with_capacity(n + 1);
    values.push(BigNat::one());
    for len in 1..=n {
        let mut acc = BigNat::zero();
        let mut choose = BigNat::one();
        for k in 1..=len {
            // choose = C(len, k)
            choose = choose * (len - k + 1) / k;
            acc += &choose * &values[len - k];
        }
        values.push(acc);
    }
    values
}

/// Number of preferential arrangements of `l` elements.
pub fn ordered_bell(l: usize) -> BigNat {
    ordered_bell_prefix(l).swap_remove(l)
}

/// Ordered Bell number through the block sum `sum_k S2(l, k) k!`.
pub fn ordered_bell_by_blocks(l: usize) -> BigNat {
    let row = stirling2_row(l);
    let mut fact = BigNat::one();
    let mut acc = BigNat::zero();
    for (k, s) in row.iter().enumerate() {
        if k > 0 {
            fact *= k;
        }
        acc += s * &fact;
    }
    acc
}

fn exact_div(numerator: BigNat, divisor: &BigNat, formula: &'static str) -> Result<BigNat> {
    let (q, r) = numerator.div_rem(divisor);
    if !r.is_zero() {
        return Err(Error::InexactDivision { formula, numerator: numerator.to_string(), divisor: divisor.to_string() });
    }
    Ok(q)
}

fn to_nat(value: BigInt, formula: &'static str) -> Result<BigNat> {
    match value.sign() {
        Sign::Minus => Err(Error::NegativeCount { formula }),
        _ => Ok(value.magnitude().clone()),
    }
}

/// `r(m, l)` by iterating `2m r(m, l) = r(m-1, l+1) + m r(m-1, l)`.
///
/// Starts from the ordered Bell numbers `r_l..=r_{l+m}` and lowers the window
/// by one per bar; each step checks that the division by `2m` is exact.
pub fn r_via_recurrence(m: usize, l: usize) -> Result<BigNat> {
    let mut window = ordered_bell_prefix(l + m).split_off(l);
    for bars in 1..=m {
        let divisor = BigNat::from(2 * bars);
        let mut next = Vec::with_capacity(window.len() - 1);
        for j in 0..window.len() - 1 {
            let numerator = &window[j + 1] + &window[j] * bars;
            next.push(exact_div(numerator, &divisor, "recurrence")?);
        }
        window = next;
    }
    Ok(window.swap_remove(0))
}

/// `r(m, l) = (1 / (2^m m!)) sum_{i=0..m} c(m+1, i+1) r_{l+i}`.
pub fn r_via_stirling_first(m: usize, l: usize) -> Result<BigNat> {
    let (numerator, divisor) = stirling_first_numerator(m, l);
    exact_div(numerator, &divisor, "stirling-first")
}

/// Numerator and divisor of the Stirling-first-kind formula, exposed for the
/// divisibility check.
pub fn stirling_first_numerator(m: usize, l: usize) -> (BigNat, BigNat) {
    let cycles = stirling1_row(m + 1);
    let bell = ordered_bell_prefix(l + m);
    let numerator = (0..=m).fold(BigNat::zero(), |acc, i| acc + &cycles[i + 1] * &bell[l + i]);
    let divisor = (BigNat::one() << m) * factorial(m);
    (numerator, divisor)
}

/// `r(m, l) = sum_k S2(l, k) k! multichoose(m+1, k)`; equals 1 for `l = 0`.
pub fn r_via_blocks(m: usize, l: usize) -> BigNat {
    let row = stirling2_row(l);
    let mut fact = BigNat::one();
    let mut acc = BigNat::zero();
    for (k, s) in row.iter().enumerate() {
        if k > 0 {
            fact *= k;
        }
        acc += s * &fact * multichoose(m + 1, k);
    }
    acc
}

/// `s(m, l) = sum_{k=1..l} S2(l, k) k! C(k-1, m)`; zero for `l = 0`.
pub fn s_via_blocks(m: usize, l: usize) -> BigNat {
    if l == 0 {
        return BigNat::zero();
    }
    let row = stirling2_row(l);
    let mut fact = BigNat::one();
    let mut acc = BigNat::zero();
    for (k, s) in row.iter().enumerate().skip(1) {
        fact *= k;
        acc += s * &fact * binomial(k - 1, m);
    }
    acc
}

/// `s(m, l) = sum_{i=0..m} (-1)^(m-i) C(m+1, i+1) r(i, l)`; zero for `l = 0`.
pub fn s_via_inclusion_exclusion(m: usize, l: usize) -> Result<BigNat> {
    if l == 0 {
        return Ok(BigNat::zero());
    }
    let mut acc = BigInt::zero();
    for i in 0..=m {
        let term = BigInt::from(binomial(m + 1, i + 1) * r_via_recurrence(i, l)?);
        if (m - i).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    to_nat(acc, "inclusion-exclusion")
}

/// `s(m, l) = (m+1)! sum_{j=0..l} C(l, j) S2(j, m+1) r(m, l-j)`.
pub fn s_via_first_blocks(m: usize, l: usize) -> Result<BigNat> {
    let mut acc = BigNat::zero();
    for j in 0..=l {
        acc += binomial(l, j) * stirling2(j, m + 1) * r_via_recurrence(m, l - j)?;
    }
    Ok(acc * factorial(m + 1))
}

/// Barred arrangements of `l` elements with `m` bars and exactly `k` empty
/// sections, `C(m+1, k) s(m-k, l)`.
pub fn count_k_empty_sections(m: usize, l: usize, k: usize) -> Result<BigNat> {
    if k > m {
        return Err(Error::TooManyEmptySections { m, k });
    }
    Ok(binomial(m + 1, k) * s_via_blocks(m - k, l))
}

/// `r(m, l) = sum_{k=0..m} C(m+1, k+1) s(k, l)`; equals 1 for `l = 0`.
pub fn r_from_s(m: usize, l: usize) -> BigNat {
    if l == 0 {
        return BigNat::one();
    }
    (0..=m).fold(BigNat::zero(), |acc, k| acc + binomial(m + 1, k + 1) * s_via_blocks(k, l))
}
