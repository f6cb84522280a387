//! Certificates for `f_n(k) >= f_n(1)` with `n >= 40` and `2 <= k <= 9`.
//!
//! For these `k` the one-sigma window is `k ± 1` (`k <= 4`) or `k ± 2`
//! (`5 <= k <= 9`), so `f_n(k)` has a short closed form. Each case reduces
//! the comparison with `f_n(1) = ((n-1)/n)^(n-1)` to a sufficient condition
//! of the form "a sum of powers is at least 1". Rational claims are checked
//! exactly; the transcendental sufficient conditions are checked in `f64`
//! with a margin of [`GUARD`].

use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::binomial::{ratio_to_f64, ExactProb};
use crate::certificate::Record;
use crate::concentration::{f, f_one_closed_form};
use crate::error::{Error, Result};
use crate::exec::Exec;

pub use crate::berry_esseen::GUARD;

pub const C5: f64 = 1.80299;
pub const C6: f64 = 1.52806;
pub const C7: f64 = 1.26193;
pub const C8: f64 = 1.01213;
/// `(32/3 + 96/5)(36/39)^38`.
pub const K4_ANCHOR: f64 = 1.42635;
/// `sum_{i=7}^{11} 9^i/i! (1 - 8/99)^98`.
pub const K9_ANCHOR: f64 = 1.25277;
/// `9/2 (37/39)^38 + 63/8 * 38/39 * e^-2`, printed as 1.65.
pub const K3_ANCHOR: f64 = 1.65;
/// `f_n(9)` exceeds this for every `n` in `[40, 99]`.
pub const K9_DIRECT_FLOOR: (u64, u64) = (61, 100);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseId {
    K2,
    K3,
    K4,
    K5to8(u8),
    K9,
}

impl CaseId {
    pub fn for_k(k: u64) -> Option<CaseId> {
        match k {
            2 => Some(CaseId::K2),
            3 => Some(CaseId::K3),
            4 => Some(CaseId::K4),
            5..=8 => Some(CaseId::K5to8(k as u8)),
            9 => Some(CaseId::K9),
            _ => None,
        }
    }

    pub fn k(&self) -> u64 {
        match self {
            CaseId::K2 => 2,
            CaseId::K3 => 3,
            CaseId::K4 => 4,
            CaseId::K5to8(k) => *k as u64,
            CaseId::K9 => 9,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CaseId::K2 => "K2",
            CaseId::K3 => "K3",
            CaseId::K4 => "K4",
            CaseId::K5to8(_) => "K5to8",
            CaseId::K9 => "K9",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseId::K5to8(k) => write!(f, "K5to8({k})"),
            other => f.write_str(other.label()),
        }
    }
}

/// One side of a certified comparison.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(Ratio<BigUint>),
    Real(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => ratio_to_f64(r.numer(), r.denom()),
            Value::Real(x) => *x,
        }
    }
}

impl From<ExactProb> for Value {
    fn from(p: ExactProb) -> Self {
        Value::Exact(p.as_ratio().clone())
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Real(x)
    }
}

fn exact_int(x: u64) -> Value {
    Value::Exact(Ratio::from_integer(BigUint::from(x)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Ge,
    Gt,
    Lt,
    Eq,
}

impl Relation {
    fn symbol(&self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Lt => "<",
            Relation::Eq => "==",
        }
    }
}

/// Compares exactly when both sides are rational, else in `f64` with [`GUARD`].
fn compare(lhs: &Value, rel: Relation, rhs: &Value) -> bool {
    match (lhs, rhs) {
        (Value::Exact(a), Value::Exact(b)) => match rel {
            Relation::Ge => a >= b,
            Relation::Gt => a > b,
            Relation::Lt => a < b,
            Relation::Eq => a == b,
        },
        _ => {
            let (a, b) = (lhs.to_f64(), rhs.to_f64());
            match rel {
                Relation::Ge | Relation::Gt => a - b > GUARD,
                Relation::Lt => b - a > GUARD,
                Relation::Eq => (a - b).abs() <= GUARD,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseCertificate {
    pub case_id: CaseId,
    /// Inclusive range of `n`; `None` as the upper end means unbounded.
    pub n_range: (u64, Option<u64>),
    pub lhs: Value,
    pub relation: Relation,
    pub rhs: Value,
    pub verdict: bool,
    pub detail: String,
}

impl CaseCertificate {
    fn check(
        case_id: CaseId,
        n_range: (u64, Option<u64>),
        lhs: Value,
        relation: Relation,
        rhs: Value,
        detail: impl Into<String>,
    ) -> Self {
        let verdict = compare(&lhs, relation, &rhs);
        CaseCertificate { case_id, n_range, lhs, relation, rhs, verdict, detail: detail.into() }
    }

    fn at(case_id: CaseId, n: u64, lhs: Value, rel: Relation, rhs: Value, detail: impl Into<String>) -> Self {
        Self::check(case_id, (n, Some(n)), lhs, rel, rhs, detail)
    }

    /// The single `n` this certificate is about, if any.
    pub fn n(&self) -> Option<u64> {
        match self.n_range {
            (lo, Some(hi)) if lo == hi => Some(lo),
            _ => None,
        }
    }

    pub fn to_record(&self) -> Record {
        let mut r = Record::new("cases", self.case_id.label(), self.lhs.to_f64(), self.rhs.to_f64(), self.verdict);
        r.n = self.n();
        r.k = Some(self.case_id.k());
        let range = match self.n_range {
            (lo, Some(hi)) if lo == hi => String::new(),
            (lo, Some(hi)) => format!(" [n in {lo}..={hi}]"),
            (lo, None) => format!(" [n >= {lo}]"),
        };
        r.detail(format!("{} ({} {} rhs){range}", self.detail, "lhs", self.relation.symbol()))
    }
}

fn require_case_n(n: u64) -> Result<()> {
    if n < 40 {
        return Err(Error::NTooSmall { n, min: 40 });
    }
    Ok(())
}

fn pow_ratio(base: u64, exp: u64) -> Ratio<BigUint> {
    Ratio::from_integer(BigUint::from(base).pow(exp as u32))
}

fn frac(num: u64, den: u64) -> Ratio<BigUint> {
    Ratio::new(BigUint::from(num), BigUint::from(den))
}

/// Closed forms of `f_n(k)` for `k = 2, 3, 4`, valid for `n >= 40`:
///
/// - `k = 2`: `[2(n-2)^(n-1) + 10/3 (n-1)(n-2)^(n-2)] / n^(n-1)`
/// - `k = 3`: `[9/2 (n-1)(n-3)^(n-2) + 63/8 (n-1)(n-2)(n-3)^(n-3)] / n^(n-1)`
/// - `k = 4`: `[32/3 (n-1)(n-2)(n-4)^(n-3) + 96/5 (n-1)(n-2)(n-3)(n-4)^(n-4)] / n^(n-1)`
pub fn closed_form_f(n: u64, k: u64) -> Result<ExactProb> {
    require_case_n(n)?;
    let bracket = match k {
        2 => frac(2, 1) * pow_ratio(n - 2, n - 1) + frac(10, 3) * pow_ratio(n - 1, 1) * pow_ratio(n - 2, n - 2),
        3 => {
            frac(9, 2) * pow_ratio(n - 1, 1) * pow_ratio(n - 3, n - 2)
                + frac(63, 8) * pow_ratio((n - 1) * (n - 2), 1) * pow_ratio(n - 3, n - 3)
        }
        4 => {
            frac(32, 3) * pow_ratio((n - 1) * (n - 2), 1) * pow_ratio(n - 4, n - 3)
                + frac(96, 5) * pow_ratio((n - 1) * (n - 2) * (n - 3), 1) * pow_ratio(n - 4, n - 4)
        }
        _ => return Err(Error::Domain(format!("closed form exists only for k in {{2, 3, 4}}, got {k}"))),
    };
    let value = bracket / pow_ratio(n, n - 1);
    ExactProb::new(value.numer().clone(), value.denom().clone())
}

/// `(1 - c/(x-1))^(x-2 - extra)` in `f64`.
pub fn shrink_power(c: f64, x: f64, extra: f64) -> f64 {
    ((x - 2.0 - extra) * (-c / (x - 1.0)).ln_1p()).exp()
}

fn poisson_weights(k: u64, lo: u64, hi: u64) -> f64 {
    (lo..=hi)
        .map(|i| {
            let fact: f64 = (1..=i).map(|j| j as f64).product();
            (k as f64).powi(i as i32) / fact
        })
        .sum()
}

/// `10/3 (1 - 1/(n-1))^(n-2)`.
pub fn k2_sufficient(n: u64) -> f64 {
    10.0 / 3.0 * shrink_power(1.0, n as f64, 0.0)
}

/// `9/2 (1 - 2/(n-1))^(n-2) + 63/8 (1 - 1/(n-1)) (1 - 2/(n-1))^(n-3)`.
pub fn k3_sufficient(n: u64) -> f64 {
    let x = n as f64;
    4.5 * shrink_power(2.0, x, 0.0) + 63.0 / 8.0 * (1.0 - 1.0 / (x - 1.0)) * shrink_power(2.0, x, 1.0)
}

/// Lower bound of [`k3_sufficient`] on `n >= 40` from its monotone pieces.
pub fn k3_floor() -> f64 {
    4.5 * (37f64 / 39.0).powi(38) + 63.0 / 8.0 * 38.0 / 39.0 * (-2f64).exp()
}

/// `(32/3 + 96/5) (1 - 3/(n-1))^(n-2)`.
pub fn k4_sufficient(n: u64) -> f64 {
    (32.0 / 3.0 + 96.0 / 5.0) * shrink_power(3.0, n as f64, 0.0)
}

/// `sum_{i=k-2}^{k+2} k^i/i! (1 - (k-1)/(n-1))^(n-2)` for `k = 5..=8`.
pub fn k5to8_sufficient(k: u64, n: u64) -> f64 {
    poisson_weights(k, k - 2, k + 2) * shrink_power((k - 1) as f64, n as f64, 0.0)
}

/// `C_k`: [`k5to8_sufficient`] at `n = 40`.
pub fn ck_constant(k: u64) -> Result<f64> {
    if !(5..=8).contains(&k) {
        return Err(Error::Domain(format!("C_k is defined for k in 5..=8, got {k}")));
    }
    Ok(k5to8_sufficient(k, 40))
}

/// `sum_{i=7}^{11} 9^i/i! (1 - 8/(n-1))^(n-2)`.
pub fn k9_sufficient(n: u64) -> f64 {
    poisson_weights(9, 7, 11) * shrink_power(8.0, n as f64, 0.0)
}

/// `(n-2)(n-3)...(n-i+1) >= (n-k)^(i-2)`, exactly.
///
/// This is the factor dropped when the exact ratio `f_n(k)/f_n(1)` is
/// bounded below by the power form of the sufficient condition.
pub fn falling_ratio_holds(n: u64, k: u64, i: u64) -> bool {
    falling_product(n, i) >= BigUint::from(n - k).pow((i - 2) as u32)
}

fn falling_product(n: u64, i: u64) -> BigUint {
    (2..i).fold(BigUint::one(), |acc, j| acc * (n - j))
}

/// `f_n(k)/f_n(1)` expanded termwise:
/// `sum_i k^i/i! (n-2)...(n-i+1) (n-k)^(n-i) / (n-1)^(n-2)` over the window.
pub fn normalized_window_sum(n: u64, k: u64, lo: u64, hi: u64) -> Ratio<BigUint> {
    let mut total = Ratio::zero();
    let mut fact = BigUint::one();
    for i in 1..lo {
        fact *= i;
    }
    for i in lo..=hi {
        if i > 0 {
            fact *= i;
        }
        let num = BigUint::from(k).pow(i as u32) * falling_product(n, i) * BigUint::from(n - k).pow((n - i) as u32);
        let den = &fact * BigUint::from(n - 1).pow((n - 2) as u32);
        total += Ratio::new(num, den);
    }
    total
}

/// The `k = 9` chain at one `n`: falling-product ratios for `i = 7..=11`
/// (with the `i = 11` reduction `6n >= 61`), then either the power-sum
/// sufficient condition (`n >= 100`) or the direct `f_n(9) > 0.61` (`n < 100`).
pub fn case5_chain(n: u64) -> Result<CaseCertificate> {
    require_case_n(n)?;
    let ratios_ok = (7..=11).all(|i| falling_ratio_holds(n, 9, i));
    // (n-2)(n-10) >= (n-9)^2  <=>  6n >= 61
    let reduction_ok = (n - 2) * (n - 10) >= (n - 9) * (n - 9) && 6 * n >= 61;
    let mut cert = if n >= 100 {
        CaseCertificate::at(
            CaseId::K9,
            n,
            k9_sufficient(n).into(),
            Relation::Ge,
            1.0.into(),
            "sum_{i=7}^{11} 9^i/i! (1-8/(n-1))^(n-2) >= 1",
        )
    } else {
        let floor = ExactProb::from_u64(K9_DIRECT_FLOOR.0, K9_DIRECT_FLOOR.1)?;
        CaseCertificate::at(CaseId::K9, n, f(n, 9)?.into(), Relation::Gt, floor.into(), "f_n(9) > 0.61")
    };
    cert.verdict &= ratios_ok && reduction_ok;
    if !(ratios_ok && reduction_ok) {
        cert.detail.push_str("; falling-product ratio check failed");
    }
    Ok(cert)
}

/// `1 < sigma^2 < 4` for `k <= 4` and `4 < sigma^2 < 9` for `5 <= k <= 9`,
/// as the integer inequalities on `k(n-k)` against multiples of `n`.
pub fn window_claims(n: u64, k: u64) -> Result<Vec<CaseCertificate>> {
    require_case_n(n)?;
    let id = CaseId::for_k(k).ok_or_else(|| Error::Domain(format!("no case for k = {k}")))?;
    let (lo, hi) = if k <= 4 { (1, 4) } else { (4, 9) };
    let spread = k * (n - k);
    Ok(vec![
        CaseCertificate::at(id, n, exact_int(spread), Relation::Gt, exact_int(lo * n), format!("k(n-k) > {lo}n")),
        CaseCertificate::at(id, n, exact_int(spread), Relation::Lt, exact_int(hi * n), format!("k(n-k) < {hi}n")),
    ])
}

/// All certificates for one `n >= 40`.
pub fn certificates_for_n(n: u64) -> Result<Vec<CaseCertificate>> {
    require_case_n(n)?;
    let f1 = f_one_closed_form(n)?;
    let mut out = Vec::new();
    for k in 2..=9 {
        let id = CaseId::for_k(k).expect("k in 2..=9");
        let fk = f(n, k)?;
        out.extend(window_claims(n, k)?);
        out.push(CaseCertificate::at(id, n, fk.clone().into(), Relation::Ge, f1.clone().into(), "f_n(k) >= f_n(1)"));
        match id {
            CaseId::K2 | CaseId::K3 | CaseId::K4 => {
                out.push(CaseCertificate::at(
                    id,
                    n,
                    closed_form_f(n, k)?.into(),
                    Relation::Eq,
                    fk.into(),
                    "closed form == window sum",
                ));
                let (value, label) = match id {
                    CaseId::K2 => (k2_sufficient(n), "10/3 (1-1/(n-1))^(n-2) > 1"),
                    CaseId::K3 => (k3_sufficient(n), "9/2 (1-2/(n-1))^(n-2) + 63/8 (1-1/(n-1))(1-2/(n-1))^(n-3) > 1"),
                    _ => (k4_sufficient(n), "(32/3+96/5)(1-3/(n-1))^(n-2) > 1"),
                };
                out.push(CaseCertificate::at(id, n, value.into(), Relation::Gt, 1.0.into(), label));
            }
            CaseId::K5to8(_) | CaseId::K9 => {
                let (lo, hi) = (k - 2, k + 2);
                let ratio = fk.as_ratio() / f1.as_ratio();
                out.push(CaseCertificate::at(
                    id,
                    n,
                    Value::Exact(normalized_window_sum(n, k, lo, hi)),
                    Relation::Eq,
                    Value::Exact(ratio),
                    "termwise sum == f_n(k)/f_n(1)",
                ));
                let ratios = (lo..=hi).filter(|&i| i >= 2).all(|i| falling_ratio_holds(n, k, i));
                out.push(CaseCertificate::at(
                    id,
                    n,
                    exact_int(ratios as u64),
                    Relation::Eq,
                    exact_int(1),
                    format!("(n-2)...(n-i+1) >= (n-{k})^(i-2) for i in {lo}..={hi}"),
                ));
                if id == CaseId::K9 {
                    out.push(case5_chain(n)?);
                } else {
                    out.push(CaseCertificate::at(
                        id,
                        n,
                        k5to8_sufficient(k, n).into(),
                        Relation::Ge,
                        1.0.into(),
                        "sum k^i/i! (1-(k-1)/(n-1))^(n-2) >= 1",
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn grid_values(grid: &[u64], g: impl Fn(f64) -> f64) -> Vec<f64> {
    grid.iter().map(|&x| g(x as f64)).collect()
}

/// Sampled monotonicity of the power functions behind each case, plus the
/// constants and anchors they are compared against.
pub fn global_certificates() -> Vec<CaseCertificate> {
    let grid = crate::berry_esseen::monotonicity_grid();
    let from_100: Vec<u64> = grid.iter().copied().filter(|&x| x >= 100).collect();
    let increasing = |v: &[f64]| v.windows(2).all(|w| w[1] > w[0]);
    let decreasing = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    let flag = |b: bool| exact_int(b as u64);
    let unbounded = |lo: u64| (lo, None);
    let mut out = Vec::new();

    let mono = |id, lo, ok: bool, label: String| {
        CaseCertificate::check(id, unbounded(lo), flag(ok), Relation::Eq, exact_int(1), label)
    };
    out.push(mono(
        CaseId::K2,
        40,
        decreasing(&grid_values(&grid, |x| shrink_power(1.0, x, 0.0))),
        "((x-2)/(x-1))^(x-2) decreasing on sampled grid".into(),
    ));
    out.push(CaseCertificate::check(
        CaseId::K2,
        unbounded(40),
        (10.0 / (3.0 * std::f64::consts::E)).into(),
        Relation::Gt,
        1.0.into(),
        "10/(3e) > 1",
    ));
    out.push(mono(
        CaseId::K3,
        40,
        increasing(&grid_values(&grid, |x| shrink_power(2.0, x, 0.0)))
            && decreasing(&grid_values(&grid, |x| shrink_power(2.0, x, 1.0))),
        "(1-2/(x-1))^(x-2) increasing and (1-2/(x-1))^(x-3) decreasing on sampled grid".into(),
    ));
    out.push(CaseCertificate::check(CaseId::K3, unbounded(40), k3_floor().into(), Relation::Gt, 1.0.into(), "9/2 (37/39)^38 + 63/8 (38/39) e^-2 > 1"));
    out.push(mono(
        CaseId::K4,
        40,
        increasing(&grid_values(&grid, |x| shrink_power(3.0, x, 0.0))),
        "(1-3/(x-1))^(x-2) increasing on sampled grid".into(),
    ));
    out.push(CaseCertificate::check(CaseId::K4, unbounded(40), k4_sufficient(40).into(), Relation::Gt, 1.0.into(), "(32/3+96/5)(36/39)^38 > 1"));
    for k in 5..=8u64 {
        let id = CaseId::K5to8(k as u8);
        out.push(mono(
            id,
            40,
            increasing(&grid_values(&grid, |x| shrink_power((k - 1) as f64, x, 0.0))),
            format!("(1-{}/(x-1))^(x-2) increasing on sampled grid", k - 1),
        ));
        let ck = ck_constant(k).expect("k in 5..=8");
        out.push(CaseCertificate::check(id, unbounded(40), ck.into(), Relation::Ge, 1.0.into(), format!("C_{k} >= 1")));
    }
    out.push(mono(
        CaseId::K9,
        100,
        increasing(&grid_values(&from_100, |x| shrink_power(8.0, x, 0.0))),
        "(1-8/(x-1))^(x-2) increasing on sampled grid".into(),
    ));
    out.push(CaseCertificate::check(CaseId::K9, unbounded(100), k9_sufficient(100).into(), Relation::Ge, 1.0.into(), "sum_{i=7}^{11} 9^i/i! (1-8/99)^98 >= 1"));
    out
}

/// Every certificate for `n` in `[40, n_max]`, followed by the global ones.
pub fn verify_all_cases(n_max: u64) -> Result<Vec<CaseCertificate>> {
    verify_all_cases_with(n_max, Exec::default())
}

pub fn verify_all_cases_with(n_max: u64, exec: Exec) -> Result<Vec<CaseCertificate>> {
    require_case_n(n_max)?;
    let per_n = exec.map_range(40, n_max, certificates_for_n);
    let mut out = Vec::new();
    for certs in per_n {
        out.extend(certs?);
    }
    out.extend(global_certificates());
    Ok(out)
}

impl Value {
    /// Exact value as `f64` only if it is an integer that fits.
    pub fn as_integer(&self) -> Option<u64> {
        match self {
            Value::Exact(r) if r.is_integer() => r.to_integer().to_u64(),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_match_window_sum() {
        for (n, k) in [(40, 2), (40, 3), (100, 4), (41, 4), (73, 2)] {
            assert_eq!(closed_form_f(n, k).unwrap(), f(n, k).unwrap(), "n={n} k={k}");
        }
        assert!(closed_form_f(39, 2).is_err());
        assert!(closed_form_f(40, 5).is_err());
    }

    #[test]
    fn ck_constants_match_printed_values() {
        for (k, printed) in [(5, C5), (6, C6), (7, C7), (8, C8)] {
            assert!((ck_constant(k).unwrap() - printed).abs() < 5e-6, "k={k}");
        }
        assert!(ck_constant(4).is_err());
        assert!(ck_constant(9).is_err());
    }

    #[test]
    fn anchors() {
        assert!((k4_sufficient(40) - K4_ANCHOR).abs() < 5e-6);
        assert!((k9_sufficient(100) - K9_ANCHOR).abs() < 5e-6);
        assert!((k3_floor() - K3_ANCHOR).abs() < 5e-3);
        assert!((10.0 / (3.0 * std::f64::consts::E) - 1.2263).abs() < 5e-5);
    }

    #[test]
    fn case5_chain_examples() {
        let c = case5_chain(100).unwrap();
        assert!(c.verdict);
        assert!((c.lhs.to_f64() - 1.252_77).abs() < 5e-6);
        let c = case5_chain(40).unwrap();
        assert!(c.verdict);
        assert_eq!(c.relation, Relation::Gt);
        assert!(c.lhs.to_f64() > 0.61);
        assert!(case5_chain(39).is_err());
    }

    #[test]
    fn falling_ratios() {
        for n in 40..=200 {
            for i in 7..=11 {
                assert!(falling_ratio_holds(n, 9, i), "n={n} i={i}");
            }
        }
        // n = 10: the product (n-2)...(n-10) vanishes
        assert!(!falling_ratio_holds(10, 9, 11));
    }

    #[test]
    fn window_claim_examples() {
        let c = window_claims(40, 2).unwrap();
        assert!(c.iter().all(|c| c.verdict));
        assert_eq!(c[0].lhs.as_integer(), Some(76));
        let c = window_claims(40, 9).unwrap();
        assert_eq!(c[0].lhs.as_integer(), Some(279));
        assert_eq!(c[0].rhs.as_integer(), Some(160));
        assert_eq!(c[1].rhs.as_integer(), Some(360));
        assert!(c.iter().all(|c| c.verdict));
    }

    #[test]
    fn normalized_sum_is_ratio_to_f1() {
        for (n, k) in [(40u64, 5u64), (57, 8), (99, 9)] {
            let direct = f(n, k).unwrap().as_ratio() / f_one_closed_form(n).unwrap().as_ratio();
            assert_eq!(normalized_window_sum(n, k, k - 2, k + 2), direct);
        }
    }

    #[test]
    fn all_cases_to_100() {
        let certs = verify_all_cases(100).unwrap();
        let failed: Vec<_> = certs.iter().filter(|c| !c.verdict).collect();
        assert!(failed.is_empty(), "{failed:?}");
        let record = certs[0].to_record();
        assert_eq!(record.suite, "cases");
        assert_eq!(record.n, Some(40));
    }

    #[test]
    fn float_comparisons_use_guard() {
        assert!(!compare(&Value::Real(1.0 + 1e-12), Relation::Ge, &Value::Real(1.0)));
        assert!(compare(&exact_int(1), Relation::Ge, &exact_int(1)));
        assert!(!compare(&exact_int(1), Relation::Gt, &exact_int(1)));
    }
}
