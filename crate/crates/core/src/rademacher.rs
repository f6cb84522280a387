//! `P(|sum a_i eps_i| <= t)` for independent Rademacher signs `eps_i`.
//!
//! Exhaustive counts walk the `2^n` sign patterns in reflected Gray-code
//! order so each step changes one sign. The pattern space is split by its
//! top bits into independent chunks; each chunk recomputes its starting sum
//! and re-anchors every [`REANCHOR`] steps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest `n` enumerated exhaustively.
pub const MAX_EXHAUSTIVE: usize = 30;
/// Inclusive slack on the `|S| <= t` test.
pub const BOUNDARY_TOL: f64 = 1e-12;
/// Allowed deviation of `sum a_i^2` from 1.
pub const NORM_TOL: f64 = 1e-12;
const REANCHOR: u64 = 256;
const CHUNK_BITS: usize = 12;
const MC_CHUNK: u64 = 1 << 16;

/// Unit-norm coefficients `a_1..a_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignVector {
    coeffs: Vec<f64>,
}

impl SignVector {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("coefficient vector must be non-empty".into()));
        }
        let sum_sq: f64 = coeffs.iter().map(|a| a * a).sum();
        if !sum_sq.is_finite() || (sum_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotUnitNorm { sum_sq });
        }
        Ok(SignVector { coeffs })
    }

    /// Scales `raw` to unit norm.
    pub fn normalized(raw: Vec<f64>) -> Result<Self> {
        let norm = raw.iter().map(|a| a * a).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Domain("cannot normalize a zero or non-finite vector".into()));
        }
        SignVector::new(raw.into_iter().map(|a| a / norm).collect())
    }

    /// `(1/sqrt(n), ..., 1/sqrt(n))`.
    pub fn uniform(n: usize) -> Result<Self> {
        SignVector::normalized(vec![1.0; n])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Signed sum for the pattern `mask` (bit set = `+a_i`).
fn signed_sum(coeffs: &[f64], mask: u64) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, a)| if mask >> i & 1 == 1 { *a } else { -*a })
        .sum()
}

/// Counts patterns in the chunk whose top bits equal `high`, over `low_bits` free bits.
fn count_chunk(coeffs: &[f64], t: f64, high: u64, low_bits: usize) -> u64 {
    let base = high << low_bits;
    let limit = t + BOUNDARY_TOL;
    let mut mask = base;
    let mut sum = signed_sum(coeffs, mask);
    let mut count = (sum.abs() <= limit) as u64;
    for step in 1..(1u64 << low_bits) {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        if step % REANCHOR == 0 {
            sum = signed_sum(coeffs, mask);
        } else if mask >> bit & 1 == 1 {
            sum += 2.0 * coeffs[bit];
        } else {
            sum -= 2.0 * coeffs[bit];
        }
        count += (sum.abs() <= limit) as u64;
    }
    count
}

/// Number of sign patterns with `|sum s_i a_i| <= t + 1e-12`.
pub fn count_within(a: &SignVector, t: f64, exec: Exec) -> Result<u64> {
    let n = a.len();
    if n > MAX_EXHAUSTIVE {
        return Err(Error::Capacity { n, max: MAX_EXHAUSTIVE });
    }
    let low_bits = n.min(CHUNK_BITS);
    let chunks = 1u64 << (n - low_bits);
    Ok(exec.sum_u64(chunks, |high| count_chunk(&a.coeffs, t, high, low_bits)))
}

/// Exact `P(|X| <= t)` by enumeration of all `2^n` sign patterns (`n <= 30`).
pub fn prob_within(a: &SignVector, t: f64) -> Result<f64> {
    prob_within_with(a, t, Exec::default())
}

pub fn prob_within_with(a: &SignVector, t: f64, exec: Exec) -> Result<f64> {
    let count = count_within(a, t, exec)?;
    Ok(count as f64 / (1u64 << a.len()) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub trials: u64,
}

fn sample_chunk(coeffs: &[f64], t: f64, seed: u64, chunk: u64, trials: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let limit = t + BOUNDARY_TOL;
    let mut hits = 0;
    for _ in 0..trials {
        let s: f64 = coeffs.iter().map(|a| if rng.random::<bool>() { *a } else { -*a }).sum();
        hits += (s.abs() <= limit) as u64;
    }
    hits
}

/// Seeded Monte Carlo estimate of `P(|X| <= t)`.
///
/// Trials are split into fixed-size streams of one ChaCha8 generator, so
/// the estimate depends only on `(a, t, trials, seed)`.
pub fn sample_prob_within(a: &SignVector, t: f64, trials: u64, seed: u64) -> Result<MonteCarloEstimate> {
    sample_prob_within_with(a, t, trials, seed, Exec::default())
}

pub fn sample_prob_within_with(
    a: &SignVector,
    t: f64,
    trials: u64,
    seed: u64,
    exec: Exec,
) -> Result<MonteCarloEstimate> {
    if trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    let chunks = trials.div_ceil(MC_CHUNK);
    let hits = exec.sum_u64(chunks, |c| {
        let len = MC_CHUNK.min(trials - c * MC_CHUNK);
        sample_chunk(&a.coeffs, t, seed, c, len)
    });
    let p = hits as f64 / trials as f64;
    Ok(MonteCarloEstimate {
        estimate: p,
        std_error: (p * (1.0 - p) / trials as f64).sqrt(),
        trials,
    })
}

/// Random unit vectors: length uniform in `[1, max_len]`, direction uniform
/// on the sphere (normalized Gaussian draws).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitVectorSampler {
    pub max_len: usize,
}

impl UnitVectorSampler {
    pub fn new(max_len: usize) -> Result<Self> {
        if max_len == 0 || max_len > 20 {
            return Err(Error::Domain(format!("max_len must be in 1..=20, got {max_len}")));
        }
        Ok(UnitVectorSampler { max_len })
    }

    /// The `index`-th vector of the stream for `seed`.
    pub fn sample(&self, seed: u64, index: u64) -> SignVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let n = rng.random_range(1..=self.max_len);
        loop {
            let raw: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            if let Ok(v) = SignVector::normalized(raw) {
                return v;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TomaszewskiReport {
    pub checked: u64,
    pub min_prob: f64,
    /// The vector attaining `min_prob`.
    pub worst: Vec<f64>,
    pub holds: bool,
}

/// Checks `P(|X| <= 1) >= 1/2 - 1e-12` on `count` sampled unit vectors.
pub fn tomaszewski_property(sampler: &UnitVectorSampler, count: u64, seed: u64) -> Result<TomaszewskiReport> {
    tomaszewski_property_with(sampler, count, seed, Exec::default())
}

pub fn tomaszewski_property_with(
    sampler: &UnitVectorSampler,
    count: u64,
    seed: u64,
    exec: Exec,
) -> Result<TomaszewskiReport> {
    if count == 0 {
        return Err(Error::Domain("count must be at least 1".into()));
    }
    let results = exec.map_range(0, count - 1, |i| {
        let v = sampler.sample(seed, i);
        // inner enumeration stays sequential; the outer scan is the parallel axis
        let p = prob_within_with(&v, 1.0, Exec::Sequential);
        p.map(|p| (p, v))
    });
    let mut min_prob = f64::INFINITY;
    let mut worst = Vec::new();
    for r in results {
        let (p, v) = r?;
        if p < min_prob {
            min_prob = p;
            worst = v.coeffs;
        }
    }
    Ok(TomaszewskiReport { checked: count, min_prob, worst, holds: min_prob >= 0.5 - 1e-12 })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every pattern summed from scratch.
    fn brute_prob(a: &[f64], t: f64) -> f64 {
        let n = a.len();
        let hits = (0..1u64 << n).filter(|&m| signed_sum(a, m).abs() <= t + BOUNDARY_TOL).count();
        hits as f64 / (1u64 << n) as f64
    }

    fn v(coeffs: &[f64]) -> SignVector {
        SignVector::new(coeffs.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(prob_within(&v(&[1.0]), 1.0).unwrap(), 1.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(prob_within(&v(&[h, h]), 1.0).unwrap(), 0.5);
        assert_eq!(prob_within(&SignVector::uniform(3).unwrap(), 1.0).unwrap(), 0.75);
        // atoms at ±0.2 and ±1.4
        assert_eq!(prob_within(&v(&[0.6, 0.8]), 1.0).unwrap(), 0.5);
        assert_eq!(prob_within(&v(&[0.6, 0.8]), 0.2).unwrap(), 0.5);
        assert_eq!(prob_within(&v(&[0.6, 0.8]), 0.19).unwrap(), 0.0);
    }

    #[test]
    fn gray_walk_matches_brute_force() {
        let sampler = UnitVectorSampler::new(16).unwrap();
        for i in 0..40 {
            let a = sampler.sample(3, i);
            for t in [0.3, 1.0, 1.7] {
                for exec in [Exec::Sequential, Exec::Parallel] {
                    let got = prob_within_with(&a, t, exec).unwrap();
                    assert_eq!(got, brute_prob(a.coeffs(), t), "i={i} t={t}");
                }
            }
        }
    }

    #[test]
    fn capacity_and_norm_errors() {
        let big = SignVector::uniform(31).unwrap();
        assert_eq!(prob_within(&big, 1.0), Err(Error::Capacity { n: 31, max: 30 }));
        assert!(matches!(SignVector::new(vec![0.5, 0.5]), Err(Error::NotUnitNorm { .. })));
        assert!(SignVector::new(vec![]).is_err());
        assert!(SignVector::normalized(vec![0.0, 0.0]).is_err());
        assert!(UnitVectorSampler::new(21).is_err());
    }

    #[test]
    fn monte_carlo_agrees_with_enumeration() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let est = sample_prob_within(&v(&[h, h]), 1.0, 1_000_000, 11).unwrap();
        assert!((est.estimate - 0.5).abs() <= 3.0 * est.std_error);

        let a = SignVector::uniform(25).unwrap();
        let exact = prob_within(&a, 1.0).unwrap();
        let est = sample_prob_within(&a, 1.0, 1_000_000, 5).unwrap();
        assert!((est.estimate - exact).abs() <= 3.0 * est.std_error, "{est:?} vs {exact}");

        let est = sample_prob_within(&a, 1e9, 1000, 1).unwrap();
        assert_eq!(est.estimate, 1.0);
        assert!(sample_prob_within(&a, 1.0, 0, 1).is_err());
    }

    #[test]
    fn monte_carlo_is_policy_independent() {
        let a = SignVector::uniform(9).unwrap();
        let s = sample_prob_within_with(&a, 1.0, 200_000, 42, Exec::Sequential).unwrap();
        let p = sample_prob_within_with(&a, 1.0, 200_000, 42, Exec::Parallel).unwrap();
        assert_eq!(s, p);
    }

    #[test]
    fn tomaszewski_small_run() {
        let sampler = UnitVectorSampler::new(12).unwrap();
        let r = tomaszewski_property(&sampler, 500, 9).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.checked, 500);
        for i in 0..4 {
            let mut e = vec![0.0; 4];
            e[i] = 1.0;
            assert_eq!(prob_within(&v(&e), 1.0).unwrap(), 1.0);
        }
    }
}
