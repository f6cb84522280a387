//! `f_n(k)`, Chvátal's `q_m`, and the argmin scans over `k` / `m`.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::binomial::{cdf, interval_numerator, BinomialParams, ExactProb};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// A validated `(n, k)` with its variance `k(n-k)/n` and one-sigma window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConcentrationQuery {
    pub params: BinomialParams,
    pub var_num: u64,
    pub var_den: u64,
    pub window_lo: u64,
    pub window_hi: u64,
}

impl ConcentrationQuery {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        let params = BinomialParams::new(n, k)?;
        let (var_num, var_den) = params.variance();
        let d = max_deviation(n, k);
        Ok(ConcentrationQuery {
            params,
            var_num,
            var_den,
            window_lo: k - d,
            window_hi: (k + d).min(n),
        })
    }

    /// `n (i - k)^2 <= k (n - k)`, the exact one-sigma membership test.
    pub fn contains(&self, i: u64) -> bool {
        let n = self.params.n() as u128;
        let k = self.params.k();
        let d = i.abs_diff(k) as u128;
        n * d * d <= self.var_num as u128
    }

    pub fn probability(&self) -> ExactProb {
        let p = &self.params;
        let num = interval_numerator(p.n(), p.k(), self.window_lo as i64, self.window_hi as i64);
        ExactProb::from_parts_unchecked(num, p.denominator())
    }

    pub(crate) fn numerator(&self) -> BigUint {
        let p = &self.params;
        interval_numerator(p.n(), p.k(), self.window_lo as i64, self.window_hi as i64)
    }
}

/// Largest integer `d >= 0` with `n d^2 <= k (n - k)`.
fn max_deviation(n: u64, k: u64) -> u64 {
    let budget = k as u128 * (n - k) as u128;
    let n = n as u128;
    let fits = |d: u128| n * d * d <= budget;
    let mut d = ((budget as f64) / (n as f64)).sqrt() as u128;
    while d > 0 && !fits(d) {
        d -= 1;
    }
    while fits(d + 1) {
        d += 1;
    }
    d as u64
}

/// Inclusive bounds of `{i in [0, n] : |i - k| <= sqrt(k(n-k)/n)}`.
pub fn window(n: u64, k: u64) -> Result<(u64, u64)> {
    let q = ConcentrationQuery::new(n, k)?;
    Ok((q.window_lo, q.window_hi))
}

/// `f_n(k) = P(|B(n, k/n) - k| <= sqrt(k(n-k)/n))`.
pub fn f(n: u64, k: u64) -> Result<ExactProb> {
    Ok(ConcentrationQuery::new(n, k)?.probability())
}

/// `((n-1)/n)^(n-1)`, the value of `f_n(1)` for `n >= 2`.
pub fn f_one_closed_form(n: u64) -> Result<ExactProb> {
    if n < 2 {
        return Err(Error::NTooSmall { n, min: 2 });
    }
    let e = (n - 1) as u32;
    Ok(ExactProb::from_parts_unchecked(
        BigUint::from(n - 1).pow(e),
        BigUint::from(n).pow(e),
    ))
}

/// Chvátal's `q_m = P(B(n, m/n) <= m)`.
pub fn chvatal_q(n: u64, m: u64) -> Result<ExactProb> {
    if n < 2 {
        return Err(Error::NTooSmall { n, min: 2 });
    }
    let params = BinomialParams::new(n, m)?;
    Ok(cdf(&params, m as i64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgminReport {
    pub n: u64,
    /// `(k, f_n(k))` for `k = 0..=n`.
    pub values: Vec<(u64, ExactProb)>,
    pub minimizers: BTreeSet<u64>,
    pub min_value: ExactProb,
}

/// Exact scan of `f_n(k)` over `k = 0..=n`.
pub fn argmin_f(n: u64) -> Result<ArgminReport> {
    argmin_f_with(n, Exec::default())
}

pub fn argmin_f_with(n: u64, exec: Exec) -> Result<ArgminReport> {
    if n == 0 {
        return Err(Error::NTooSmall { n, min: 1 });
    }
    // every value shares the denominator n^n: compare raw numerators first
    let nums = exec.map_range(0, n, |k| ConcentrationQuery::new(n, k).map(|q| q.numerator()));
    let nums: Vec<BigUint> = nums.into_iter().collect::<Result<_>>()?;
    let den = BinomialParams::new(n, 0)?.denominator();
    let min_num = nums.iter().min().cloned().unwrap_or_default();
    let minimizers = (0..=n).filter(|&k| nums[k as usize] == min_num).collect();
    let values = exec.map(nums.into_iter().enumerate().collect(), |(k, num)| {
        (k as u64, ExactProb::from_parts_unchecked(num, den.clone()))
    });
    let min_value = ExactProb::from_parts_unchecked(min_num, den);
    Ok(ArgminReport { n, values, minimizers, min_value })
}

/// Minimizers of `q_m` over `m = 0..=n`.
pub fn argmin_chvatal(n: u64) -> Result<BTreeSet<u64>> {
    argmin_chvatal_with(n, Exec::default())
}

pub fn argmin_chvatal_with(n: u64, exec: Exec) -> Result<BTreeSet<u64>> {
    if n < 2 {
        return Err(Error::NTooSmall { n, min: 2 });
    }
    // q_m = cdf numerator over the shared n^n
    let nums = exec.map_range(0, n, |m| interval_numerator(n, m, 0, m as i64));
    let min = nums.iter().min().cloned().unwrap_or_default();
    Ok((0..=n).filter(|&m| nums[m as usize] == min).collect())
}

/// The one or two integers in `[0, n]` nearest to `2n/3`.
pub fn nearest_to_two_thirds(n: u64) -> BTreeSet<u64> {
    // distance of m to 2n/3 scaled by 3: |3m - 2n|
    let dist = |m: u64| (3 * m).abs_diff(2 * n);
    let best = (0..=n).map(dist).min().unwrap_or(0);
    (0..=n).filter(|&m| dist(m) == best).collect()
}

/// `f_n(k) == f_n(n-k)` exactly for every `k`.
pub fn symmetry_check(n: u64) -> Result<bool> {
    symmetry_check_with(n, Exec::default())
}

pub fn symmetry_check_with(n: u64, exec: Exec) -> Result<bool> {
    if n == 0 {
        return Err(Error::NTooSmall { n, min: 1 });
    }
    let checks = exec.map_range(0, n / 2, |k| -> Result<bool> {
        let a = ConcentrationQuery::new(n, k)?.numerator();
        let b = ConcentrationQuery::new(n, n - k)?.numerator();
        Ok(a == b)
    });
    checks.into_iter().try_fold(true, |acc, c| Ok(acc && c?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::pmf;

    fn prob(num: u64, den: u64) -> ExactProb {
        ExactProb::from_u64(num, den).unwrap()
    }

    /// Window by scanning every `i` with the integer predicate.
    fn brute_window(n: u64, k: u64) -> (u64, u64) {
        let inside: Vec<u64> =
            (0..=n).filter(|&i| n * i.abs_diff(k).pow(2) <= k * (n - k)).collect();
        (inside[0], *inside.last().unwrap())
    }

    #[test]
    fn window_examples() {
        assert_eq!(window(40, 2).unwrap(), (1, 3));
        assert_eq!(window(40, 5).unwrap(), (3, 7));
        assert_eq!(window(4, 2).unwrap(), (1, 3));
        assert_eq!(window(17, 0).unwrap(), (0, 0));
        assert_eq!(window(17, 17).unwrap(), (17, 17));
        assert_eq!(window(3, 4), Err(Error::KOutOfRange { n: 3, k: 4 }));
    }

    #[test]
    fn window_matches_brute_force() {
        for n in 1..=120 {
            for k in 0..=n {
                assert_eq!(window(n, k).unwrap(), brute_window(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn boundary_atom_is_included() {
        // n = 4, k = 2: sigma = 1 exactly, so i = 1 and i = 3 sit on the boundary
        let q = ConcentrationQuery::new(4, 2).unwrap();
        assert!(q.contains(1) && q.contains(3));
        assert!(!q.contains(0));
        assert_eq!(q.probability(), prob(7, 8));
    }

    #[test]
    fn f_examples() {
        assert_eq!(f(1, 1).unwrap(), ExactProb::one());
        assert_eq!(f(7, 0).unwrap(), ExactProb::one());
        assert_eq!(f(7, 7).unwrap(), ExactProb::one());
        for n in 2..=60 {
            assert_eq!(f(n, 1).unwrap(), f_one_closed_form(n).unwrap());
        }
        let v39 = f(39, 5).unwrap().to_f64();
        assert!((v39 - 0.773351).abs() < 5e-7);
    }

    #[test]
    fn f_equals_sum_of_pmf_terms() {
        for (n, k) in [(10u64, 3u64), (25, 12), (40, 9)] {
            let params = BinomialParams::new(n, k).unwrap();
            let (lo, hi) = window(n, k).unwrap();
            let mut total = num_rational::Ratio::from_integer(BigUint::from(0u32));
            for i in lo..=hi {
                total += pmf(&params, i as i64).unwrap().as_ratio().clone();
            }
            assert_eq!(&total, f(n, k).unwrap().as_ratio());
        }
    }

    #[test]
    fn chvatal_examples() {
        assert_eq!(chvatal_q(3, 2).unwrap(), prob(19, 27));
        assert_eq!(chvatal_q(3, 1).unwrap(), prob(20, 27));
        assert_eq!(chvatal_q(9, 9).unwrap(), ExactProb::one());
        assert!(chvatal_q(1, 0).is_err());
        assert!(chvatal_q(3, 4).is_err());
        assert_eq!(argmin_chvatal(3).unwrap(), BTreeSet::from([2]));
        assert_eq!(argmin_chvatal(2).unwrap(), BTreeSet::from([1]));
        assert_eq!(argmin_chvatal(6).unwrap(), BTreeSet::from([4]));
        assert_eq!(nearest_to_two_thirds(7), BTreeSet::from([5]));
        // numerator scan against the reduced-fraction definition
        for n in 2..=30 {
            let qs: Vec<ExactProb> = (0..=n).map(|m| chvatal_q(n, m).unwrap()).collect();
            let min = qs.iter().min().unwrap();
            let by_definition: BTreeSet<u64> = (0..=n).filter(|&m| &qs[m as usize] == min).collect();
            assert_eq!(argmin_chvatal(n).unwrap(), by_definition);
        }
    }

    #[test]
    fn argmin_examples() {
        let r = argmin_f(39).unwrap();
        assert_eq!(r.minimizers, BTreeSet::from([1, 38]));
        assert!((r.min_value.to_f64() - 0.372668).abs() < 5e-7);
        assert_eq!(r.values.len(), 40);

        let r = argmin_f(1).unwrap();
        assert_eq!(r.minimizers, BTreeSet::from([0, 1]));
        assert!(r.min_value.is_one());

        let r = argmin_f(12).unwrap();
        assert_eq!(r.minimizers, BTreeSet::from([1, 11]));
        assert_eq!(r.min_value.to_decimal(2, crate::Rounding::HalfEven), "0.38");
        assert!(argmin_f(0).is_err());
    }

    #[test]
    fn policies_agree() {
        assert_eq!(
            argmin_f_with(30, Exec::Sequential).unwrap(),
            argmin_f_with(30, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn symmetry_examples() {
        assert!(symmetry_check(17).unwrap());
        assert!(symmetry_check(1).unwrap());
        assert!(symmetry_check(100).unwrap());
    }
}
