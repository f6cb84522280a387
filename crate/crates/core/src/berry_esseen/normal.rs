//! Standard normal CDF to about 1e-15 absolute.
//!
//! `|y| <= 3`: the positive-term series
//! `erf(y) = 2/sqrt(pi) e^{-y^2} sum_j 2^j y^{2j+1} / (1*3*...*(2j+1))`,
//! which has no cancellation. `|y| > 3`: the Lentz continued fraction for
//! `erfc`. Both are far inside the 1e-12 budget the certificates need.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

const SERIES_LIMIT: f64 = 3.0;

fn erf_series(y: f64) -> f64 {
    let y2 = y * y;
    let mut term = y;
    let mut sum = y;
    let mut j = 0.0;
    loop {
        j += 1.0;
        term *= 2.0 * y2 / (2.0 * j + 1.0);
        sum += term;
        if term.abs() <= sum.abs() * 1e-17 {
            break;
        }
    }
    2.0 / PI.sqrt() * (-y2).exp() * sum
}

/// `erfc(y)` for `y > 0` via modified Lentz on
/// `erfc(y) = e^{-y^2}/sqrt(pi) * 1/(y + (1/2)/(y + 1/(y + (3/2)/(y + ...))))`.
fn erfc_continued_fraction(y: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = y;
    let mut c = y;
    let mut d = 0.0;
    for j in 1..500 {
        let a = j as f64 / 2.0;
        d = y + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        d = 1.0 / d;
        c = y + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-y * y).exp() / PI.sqrt() / f
}

pub fn erf(y: f64) -> f64 {
    if y.abs() <= SERIES_LIMIT {
        erf_series(y)
    } else if y > 0.0 {
        1.0 - erfc_continued_fraction(y)
    } else {
        erfc_continued_fraction(-y) - 1.0
    }
}

pub fn erfc(y: f64) -> f64 {
    if y > SERIES_LIMIT {
        erfc_continued_fraction(y)
    } else if y < -SERIES_LIMIT {
        2.0 - erfc_continued_fraction(-y)
    } else {
        1.0 - erf_series(y)
    }
}

/// `Phi(x) = P(Z <= x)` for a standard normal `Z`.
pub fn normal_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return 1.0;
    }
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    0.5 * erfc(-x * FRAC_1_SQRT_2)
}
