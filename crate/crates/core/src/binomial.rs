//! Exact binomial PMF/CDF arithmetic for rational success probability `p = k/n`.
//!
//! Every probability is a reduced fraction of big integers. Raw term
//! numerators share the denominator `n^n`, which is what the scans in
//! [`crate::concentration`] compare before reducing.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact probability in `[0, 1]`, always stored in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactProb(Ratio<BigUint>);

impl ExactProb {
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("probability denominator must be positive".into()));
        }
        if num > den {
            return Err(Error::Domain(format!("{num}/{den} exceeds 1")));
        }
        Ok(ExactProb(Ratio::new(num, den)))
    }

    pub fn from_u64(num: u64, den: u64) -> Result<Self> {
        Self::new(BigUint::from(num), BigUint::from(den))
    }

    /// Caller guarantees `num <= den` and `den > 0`.
    pub(crate) fn from_parts_unchecked(num: BigUint, den: BigUint) -> Self {
        debug_assert!(!den.is_zero() && num <= den);
        ExactProb(Ratio::new(num, den))
    }

    pub fn zero() -> Self {
        ExactProb(Ratio::zero())
    }

    pub fn one() -> Self {
        ExactProb(Ratio::one())
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn complement(&self) -> Self {
        ExactProb(Ratio::one() - &self.0)
    }

    pub fn as_ratio(&self) -> &Ratio<BigUint> {
        &self.0
    }

    /// Nearest-ish `f64` (relative error below 2^-60 before the final rounding).
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(self.numer(), self.denom())
    }

    pub fn to_decimal(&self, digits: usize, rounding: Rounding) -> String {
        decimal_string(self.numer(), self.denom(), digits, rounding)
    }
}

impl PartialOrd for ExactProb {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactProb {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// Converts `num/den` to `f64` by integer division of a 64-bit-scaled numerator.
pub(crate) fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift = (den.bits() as i64 - num.bits() as i64 + 64).max(0);
    let scaled = (num << shift as usize) / den;
    let mantissa = scaled.to_f64().unwrap_or(f64::INFINITY);
    // split the exponent so 2^-shift does not underflow prematurely
    let mut value = mantissa;
    let mut remaining = shift;
    while remaining > 0 {
        let step = remaining.min(1000);
        value *= 2f64.powi(-(step as i32));
        remaining -= step;
    }
    value
}

/// How [`to_decimal`] drops digits beyond the requested precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rounding {
    #[default]
    HalfEven,
    Truncate,
}

fn decimal_string(num: &BigUint, den: &BigUint, digits: usize, rounding: Rounding) -> String {
    let scale = BigUint::from(10u32).pow(digits as u32);
    let (mut q, r) = (num * &scale).div_rem(den);
    if rounding == Rounding::HalfEven {
        let twice = &r << 1usize;
        match twice.cmp(den) {
            Ordering::Greater => q += 1u32,
            Ordering::Equal if q.is_odd() => q += 1u32,
            _ => {}
        }
    }
    let (int_part, frac_part) = q.div_rem(&scale);
    if digits == 0 {
        return int_part.to_string();
    }
    format!("{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
}

/// `B(n, k/n)` with `1 <= n` and `0 <= k <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BinomialParams {
    n: u64,
    k: u64,
}

impl BinomialParams {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::NTooSmall { n, min: 1 });
        }
        if k > n {
            return Err(Error::KOutOfRange { n, k });
        }
        Ok(BinomialParams { n, k })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// The shared denominator `n^n` of every term.
    pub fn denominator(&self) -> BigUint {
        BigUint::from(self.n).pow(self.n as u32)
    }

    /// The `k(n-k)/n` variance as (numerator, denominator).
    pub fn variance(&self) -> (u64, u64) {
        (self.k * (self.n - self.k), self.n)
    }
}

/// `C(n, i)` by the multiplicative recurrence.
pub fn binomial_coefficient(n: u64, i: u64) -> BigUint {
    if i > n {
        return BigUint::zero();
    }
    let i = i.min(n - i);
    let mut c = BigUint::one();
    for j in 0..i {
        c *= n - j;
        c /= j + 1;
    }
    c
}

/// Numerators `C(n,i) k^i (n-k)^(n-i)` for `i = lo..=hi`, all over `n^n`.
///
/// The first term is built directly; the rest follow from the exact ratio
/// `t(i+1) = t(i) (n-i) k / ((i+1)(n-k))`.
pub(crate) fn term_numerators(n: u64, k: u64, lo: u64, hi: u64) -> Vec<BigUint> {
    if lo > hi || lo > n {
        return Vec::new();
    }
    let hi = hi.min(n);
    // point masses: all weight on i = k
    if k == 0 || k == n {
        return (lo..=hi)
            .map(|i| if i == k { BigUint::from(n).pow(n as u32) } else { BigUint::zero() })
            .collect();
    }
    let mut terms = Vec::with_capacity((hi - lo + 1) as usize);
    let mut t = binomial_coefficient(n, lo)
        * BigUint::from(k).pow(lo as u32)
        * BigUint::from(n - k).pow((n - lo) as u32);
    for i in lo..=hi {
        if i > lo {
            t *= (n - i + 1) * k;
            t /= i * (n - k);
        }
        terms.push(t.clone());
    }
    terms
}

/// Sum of the term numerators over `[lo, hi]`, clamped to the support.
pub(crate) fn interval_numerator(n: u64, k: u64, lo: i64, hi: i64) -> BigUint {
    let lo = lo.max(0);
    let hi = hi.min(n as i64);
    if lo > hi {
        return BigUint::zero();
    }
    term_numerators(n, k, lo as u64, hi as u64).into_iter().sum()
}

pub fn pmf(params: &BinomialParams, i: i64) -> Result<ExactProb> {
    let n = params.n;
    if i < 0 || i as u64 > n {
        return Err(Error::IndexOutOfRange { n, i });
    }
    let num = interval_numerator(n, params.k, i, i);
    Ok(ExactProb::from_parts_unchecked(num, params.denominator()))
}

/// `P(X <= m)`; `m < 0` gives 0 and `m >= n` gives 1.
pub fn cdf(params: &BinomialParams, m: i64) -> ExactProb {
    interval_prob(params, 0, m)
}

/// `P(lo <= X <= hi)` after clamping to `[0, n]`; empty windows give 0.
pub fn interval_prob(params: &BinomialParams, lo: i64, hi: i64) -> ExactProb {
    let num = interval_numerator(params.n, params.k, lo, hi);
    if num.is_zero() {
        return ExactProb::zero();
    }
    ExactProb::from_parts_unchecked(num, params.denominator())
}

/// Round-half-even decimal with exactly `digits` fractional digits.
pub fn to_decimal(p: &ExactProb, digits: usize) -> String {
    p.to_decimal(digits, Rounding::HalfEven)
}
