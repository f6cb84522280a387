//! Normal-approximation lower bound for `f_n(k)` when `n >= 40`, `10 <= k <= n/2`.
//!
//! `X_{n,k}` is a sum of `n` i.i.d. Bernoulli(`k/n`) summands. The
//! Berry–Esseen inequality with constant `C0` bounds each one-sided
//! discrepancy of the standardized sum by `C0 rho / sqrt(n)`, which gives
//! `f_n(k) > Phi(1) - Phi(-1) - 2 * 0.15014495 = 0.38239958`. Everything
//! involving `rho` or `Phi` is floating point; `f_n(k)` itself is compared
//! exactly.

mod normal;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;

pub use normal::{erf, erfc, normal_cdf};

use crate::binomial::{term_numerators, BinomialParams, ExactProb};
use crate::concentration::{f, f_one_closed_form, ConcentrationQuery};
use crate::error::{Error, Result};

/// Shevtsova's constant for i.i.d. summands.
pub const C0: f64 = 0.4748;
/// Bound on each one-sided discrepancy, `C0/sqrt(10)` rounded up.
pub const SIDE_BOUND: f64 = 0.150_144_95;
/// Sum of the two one-sided bounds, as printed.
pub const TWO_SIDED_BOUND: f64 = 0.300_289_9;
/// Lower decimal bound on `Phi(1) - Phi(-1)`.
pub const PHI_WIDTH_FLOOR: f64 = 0.682_689_48;
/// `PHI_WIDTH_FLOOR - TWO_SIDED_BOUND`.
pub const LOWER_BOUND: f64 = 0.382_399_58;
/// Exact rational form of [`LOWER_BOUND`].
pub const LOWER_BOUND_RATIO: (u64, u64) = (38_239_958, 100_000_000);
/// Printed decimal for `f_40(1)`.
pub const F40_ANCHOR: f64 = 0.363_232_44;
/// Margin required on every strict floating-point comparison against a printed constant.
pub const GUARD: f64 = 1e-9;

fn check_inner(n: u64, k: u64) -> Result<()> {
    BinomialParams::new(n, k)?;
    if k == 0 || k == n {
        return Err(Error::Degenerate { n, k });
    }
    Ok(())
}

/// Mean/scale summary of one Bernoulli(`k/n`) summand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SummandMoments {
    pub n: u64,
    pub k: u64,
    pub sigma: f64,
    pub rho: f64,
}

impl SummandMoments {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        check_inner(n, k)?;
        let sigma = ((k * (n - k)) as f64).sqrt() / n as f64;
        Ok(SummandMoments { n, k, sigma, rho: rho(n, k)? })
    }
}

/// `E|Y - EY|^3 = k(n-k)(n^2 + 2k^2 - 2nk)/n^4`.
pub fn third_abs_moment(n: u64, k: u64) -> Result<f64> {
    let exact = third_abs_moment_exact(n, k)?;
    Ok(exact.numer().to_f64().unwrap_or(f64::NAN) / exact.denom().to_f64().unwrap_or(f64::NAN))
}

pub fn third_abs_moment_exact(n: u64, k: u64) -> Result<Ratio<BigUint>> {
    check_inner(n, k)?;
    let (n, k) = (BigUint::from(n), BigUint::from(k));
    let spread = &n * &n + 2u32 * &k * &k - 2u32 * &n * &k;
    let num = &k * (&n - &k) * spread;
    Ok(Ratio::new(num, n.pow(4)))
}

/// `rho = (n^2 + 2k^2 - 2nk) / (n sqrt(k(n-k)))`.
pub fn rho(n: u64, k: u64) -> Result<f64> {
    check_inner(n, k)?;
    let (nf, kf) = (n as f64, k as f64);
    let spread = (n * n + 2 * k * k - 2 * n * k) as f64;
    Ok(spread / (nf * (kf * (nf - kf)).sqrt()))
}

/// `C0 rho / sqrt(n)`.
pub fn be_bound(n: u64, k: u64, c0: f64) -> Result<f64> {
    if c0 <= 0.0 || !c0.is_finite() {
        return Err(Error::Domain(format!("c0 must be positive, got {c0}")));
    }
    Ok(c0 * rho(n, k)? / (n as f64).sqrt())
}

/// `C0 sqrt((n-k)/(nk))`, which dominates [`be_bound`] when `k <= n/2`.
pub fn simplified_bound(n: u64, k: u64, c0: f64) -> Result<f64> {
    check_inner(n, k)?;
    Ok(c0 * ((n - k) as f64 / (n as f64 * k as f64)).sqrt())
}

/// Cumulative `P(X <= i)` for `i = 0..=n`, each converted from the exact sum.
fn cdf_table(n: u64, k: u64) -> Vec<f64> {
    let den = BinomialParams::new(n, k).map(|p| p.denominator()).unwrap_or_default();
    let shift = den.bits().saturating_sub(64) as usize;
    let den_top = (&den >> shift).to_f64().unwrap_or(f64::NAN);
    let mut acc = BigUint::default();
    term_numerators(n, k, 0, n)
        .into_iter()
        .map(|t| {
            acc += t;
            (&acc >> shift).to_f64().unwrap_or(f64::NAN) / den_top
        })
        .collect()
}

/// `sup_x |P((X - k)/s < x) - Phi(x)|` with `s = sqrt(k(n-k)/n)`.
///
/// The distribution function is a step function and `Phi` is continuous,
/// so the supremum is attained as a one-sided limit at some atom; both
/// sides of every atom are checked.
pub fn sup_discrepancy(n: u64, k: u64) -> Result<f64> {
    check_inner(n, k)?;
    let cdf = cdf_table(n, k);
    let s = ((k * (n - k)) as f64 / n as f64).sqrt();
    let mut worst: f64 = 0.0;
    let mut below = 0.0;
    for (i, &at) in cdf.iter().enumerate() {
        let phi = normal_cdf((i as f64 - k as f64) / s);
        worst = worst.max((below - phi).abs()).max((at - phi).abs());
        below = at;
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BerryEsseenReport {
    pub n: u64,
    pub k: u64,
    pub rho: f64,
    pub bound: f64,
    pub simplified_bound: f64,
    pub phi_width: f64,
    /// `|P(Z < -1) - Phi(-1)|` for the standardized sum `Z`.
    pub left_discrepancy: f64,
    /// `|P(Z <= 1) - Phi(1)|`.
    pub right_discrepancy: f64,
    pub lower_bound: f64,
    pub f_value: f64,
    pub moment_inequality: bool,
    pub bound_chain: bool,
    pub discrepancies_within: bool,
    pub phi_width_ok: bool,
    pub f_exceeds: bool,
    pub holds: bool,
}

pub fn verify_chain(n: u64, k: u64) -> Result<BerryEsseenReport> {
    verify_chain_with(n, k, C0)
}

/// Runs the chain for one `(n, k)` with `n >= 40`, `10 <= k <= n/2`.
pub fn verify_chain_with(n: u64, k: u64, c0: f64) -> Result<BerryEsseenReport> {
    if n < 40 {
        return Err(Error::NTooSmall { n, min: 40 });
    }
    if k < 10 || 2 * k > n {
        return Err(Error::Domain(format!("chain needs 10 <= k <= n/2, got n = {n}, k = {k}")));
    }
    let q = ConcentrationQuery::new(n, k)?;
    let rho = rho(n, k)?;
    let bound = be_bound(n, k, c0)?;
    let simplified = simplified_bound(n, k, c0)?;

    let (n_i, k_i) = (n as i128, k as i128);
    let moment_inequality = n_i * n_i + 2 * k_i * k_i - 2 * n_i * k_i <= n_i * n_i - n_i * k_i;

    let per_k = c0 / (k as f64).sqrt();
    let per_ten = c0 / 10f64.sqrt();
    let bound_chain = bound <= simplified * (1.0 + 1e-12)
        && simplified <= per_k * (1.0 + 1e-12)
        && per_k <= per_ten
        && per_ten < SIDE_BOUND - GUARD;

    // P(Z < -1) = P(X <= lo - 1), P(Z <= 1) = P(X <= hi): the window edges are exact
    let cdf = cdf_table(n, k);
    let below = if q.window_lo == 0 { 0.0 } else { cdf[q.window_lo as usize - 1] };
    let upto = cdf[q.window_hi as usize];
    let phi_lo = normal_cdf(-1.0);
    let phi_hi = normal_cdf(1.0);
    let left = (below - phi_lo).abs();
    let right = (upto - phi_hi).abs();
    let discrepancies_within =
        left <= bound && right <= bound && left + right <= TWO_SIDED_BOUND;

    let phi_width = phi_hi - phi_lo;
    let phi_width_ok = phi_width > PHI_WIDTH_FLOOR + GUARD;

    let f_exact = q.probability();
    let threshold = ExactProb::from_u64(LOWER_BOUND_RATIO.0, LOWER_BOUND_RATIO.1)?;
    let f_exceeds = f_exact > threshold;

    let holds = moment_inequality && bound_chain && discrepancies_within && phi_width_ok && f_exceeds;
    Ok(BerryEsseenReport {
        n,
        k,
        rho,
        bound,
        simplified_bound: simplified,
        phi_width,
        left_discrepancy: left,
        right_discrepancy: right,
        lower_bound: PHI_WIDTH_FLOOR - TWO_SIDED_BOUND,
        f_value: f_exact.to_f64(),
        moment_inequality,
        bound_chain,
        discrepancies_within,
        phi_width_ok,
        f_exceeds,
        holds,
    })
}

/// `n = 40..=200`, then doubling, capped by `10^6`.
pub fn monotonicity_grid() -> Vec<u64> {
    let mut grid: Vec<u64> = (40..=200).collect();
    let mut n = 400;
    while n < 1_000_000 {
        grid.push(n);
        n *= 2;
    }
    grid.push(1_000_000);
    grid
}

/// `((n-1)/n)^(n-1)` in floating point.
pub fn f_one_approx(n: u64) -> f64 {
    let nf = n as f64;
    ((nf - 1.0) * (-1.0 / nf).ln_1p()).exp()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct F40Report {
    /// `f_n(1)` strictly decreasing along [`monotonicity_grid`]; exact for `n <= 200`.
    pub decreasing: bool,
    pub f40: f64,
    /// `|f_40(1) - 0.36323244| <= 5e-9`.
    pub anchor_matches: bool,
    /// `f_40(1) < 0.38239958`, exactly.
    pub below_threshold: bool,
    /// `|f_{10^6}(1) - 1/e| < 1e-5`.
    pub limit_ok: bool,
}

impl F40Report {
    /// All claims, including the printed decimal anchor.
    pub fn holds(&self) -> bool {
        self.decreasing && self.anchor_matches && self.below_threshold && self.limit_ok
    }

    /// The inequalities `f_n(1) <= f_40(1) < 0.38239958` alone.
    pub fn inequality_holds(&self) -> bool {
        self.decreasing && self.below_threshold && self.limit_ok
    }
}

pub fn verify_f40_threshold() -> Result<F40Report> {
    let grid = monotonicity_grid();
    let mut decreasing = true;
    let mut prev_exact = f_one_closed_form(40)?;
    for n in 41..=200 {
        let next = f_one_closed_form(n)?;
        decreasing &= next < prev_exact;
        prev_exact = next;
    }
    let tail: Vec<f64> = grid.iter().filter(|&&n| n >= 200).map(|&n| f_one_approx(n)).collect();
    decreasing &= tail.windows(2).all(|w| w[1] < w[0]);

    let f40_exact = f(40, 1)?;
    let f40 = f40_exact.to_f64();
    let threshold = ExactProb::from_u64(LOWER_BOUND_RATIO.0, LOWER_BOUND_RATIO.1)?;
    Ok(F40Report {
        decreasing,
        f40,
        anchor_matches: (f40 - F40_ANCHOR).abs() <= 5e-9,
        below_threshold: f40_exact < threshold,
        limit_ok: (f_one_approx(1_000_000) - (-1f64).exp()).abs() < 1e-5,
    })
}
