//! Exact binomial concentration probabilities.
//!
//! `f_n(k) = P(|B(n, k/n) - k| <= sqrt(k(n-k)/n))` is computed as an exact
//! rational, scanned over `k` to locate its minimizers, and accompanied by
//! certificate checkers for the normal-approximation bound, the small-`k`
//! case analysis, Chvátal's binomial minimizer and Tomaszewski's Rademacher
//! bound.

pub mod berry_esseen;
pub mod binomial;
pub mod cases;
pub mod certificate;
pub mod cli;
pub mod concentration;
mod error;
pub mod exec;
pub mod rademacher;

pub use binomial::{cdf, interval_prob, pmf, to_decimal, BinomialParams, ExactProb, Rounding};
pub use concentration::{
    argmin_chvatal, argmin_f, chvatal_q, f, symmetry_check, window, ArgminReport,
    ConcentrationQuery,
};
pub use error::{Error, Result};
pub use exec::Exec;
