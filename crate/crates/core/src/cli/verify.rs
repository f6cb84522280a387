//! Verification suites behind `verify --suite …`.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_1_SQRT_2;

use clap::ValueEnum;

use crate::berry_esseen::{
    be_bound, normal_cdf, sup_discrepancy, verify_chain, verify_f40_threshold, C0, LOWER_BOUND,
    PHI_WIDTH_FLOOR,
};
use crate::cases::{self, C5, C6, C7, C8, K4_ANCHOR, K9_ANCHOR};
use crate::certificate::Record;
use crate::concentration::{argmin_chvatal_with, argmin_f_with, f_one_closed_form, nearest_to_two_thirds};
use crate::error::Result;
use crate::exec::Exec;
use crate::rademacher::{prob_within_with, tomaszewski_property_with, SignVector, UnitVectorSampler};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Theorem,
    Chvatal,
    Be,
    Cases,
    Rademacher,
    All,
}

impl Suite {
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Theorem, Suite::Chvatal, Suite::Be, Suite::Cases, Suite::Rademacher],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem => "theorem",
            Suite::Chvatal => "chvatal",
            Suite::Be => "be",
            Suite::Cases => "cases",
            Suite::Rademacher => "rademacher",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub n_max: u64,
    pub count: u64,
    pub seed: u64,
    pub max_len: usize,
    pub exec: Exec,
}

fn flag(b: bool) -> f64 {
    b as u8 as f64
}

fn set_string(s: &BTreeSet<u64>) -> String {
    let items: Vec<String> = s.iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

/// `argmin_k f_n(k) = {1, n-1}` with value `((n-1)/n)^(n-1)`, and `f_n(k) = f_n(n-k)`, for `n = 1..=n_max`.
pub fn theorem(opts: &VerifyOptions) -> Result<Vec<Record>> {
    let per_n = opts.exec.map_range(1, opts.n_max, |n| -> Result<Vec<Record>> {
        let report = argmin_f_with(n, Exec::Sequential)?;
        let (expected_set, expected_min) = if n == 1 {
            (BTreeSet::from([0, 1]), crate::ExactProb::one())
        } else {
            (BTreeSet::from([1, n - 1]), f_one_closed_form(n)?)
        };
        let ok = report.minimizers == expected_set && report.min_value == expected_min;
        let argmin = Record::new("theorem", "argmin", report.min_value.to_f64(), expected_min.to_f64(), ok)
            .at(n, None)
            .detail(format!("minimizers = {}", set_string(&report.minimizers)));
        let symmetric = report.values.iter().all(|(k, v)| *v == report.values[(n - k) as usize].1);
        let symmetry = Record::new("theorem", "symmetry", flag(symmetric), 1.0, symmetric).at(n, None);
        Ok(vec![argmin, symmetry])
    });
    per_n.into_iter().try_fold(Vec::new(), |mut acc, r| {
        acc.extend(r?);
        Ok(acc)
    })
}

/// `argmin_m q_m` lies in the nearest integers to `2n/3`, for `n = 2..=n_max`.
pub fn chvatal(opts: &VerifyOptions) -> Result<Vec<Record>> {
    let per_n = opts.exec.map_range(2, opts.n_max.max(2), |n| -> Result<Record> {
        let found = argmin_chvatal_with(n, Exec::Sequential)?;
        let nearest = nearest_to_two_thirds(n);
        let ok = !found.is_empty() && found.is_subset(&nearest);
        let first = |s: &BTreeSet<u64>| s.iter().next().copied().unwrap_or_default() as f64;
        Ok(Record::new("chvatal", "argmin", first(&found), first(&nearest), ok)
            .at(n, None)
            .detail(format!("minimizers = {}, nearest to 2n/3 = {}", set_string(&found), set_string(&nearest))))
    });
    per_n.into_iter().collect()
}

/// The normal-approximation chain for `n = 40..=n_max`, `k = 10..=n/2`.
pub fn berry_esseen(opts: &VerifyOptions) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let phi_width = normal_cdf(1.0) - normal_cdf(-1.0);
    out.push(
        Record::new("be", "phi_width", phi_width, PHI_WIDTH_FLOOR, phi_width > PHI_WIDTH_FLOOR && phi_width < 0.682_689_50)
            .detail(format!("phi_width={phi_width:.8}")),
    );
    let f40 = verify_f40_threshold()?;
    out.push(
        Record::new("be", "f40_threshold", f40.f40, LOWER_BOUND, f40.inequality_holds())
            .at(40, Some(1))
            .detail(format!(
                "f_n(1) decreasing on grid: {}; f_40(1) < 0.38239958: {}; f_40(1)={:.8}",
                f40.decreasing, f40.below_threshold, f40.f40
            )),
    );
    if opts.n_max >= 40 {
        let pairs: Vec<(u64, u64)> =
            (40..=opts.n_max).flat_map(|n| (10..=n / 2).map(move |k| (n, k))).collect();
        let per_pair = opts.exec.map(pairs, |(n, k)| -> Result<[Record; 2]> {
            let r = verify_chain(n, k)?;
            let chain = Record::new("be", "chain", r.f_value, r.lower_bound, r.holds)
                .at(n, Some(k))
                .detail(format!("bound={:.9} left={:.9} right={:.9}", r.bound, r.left_discrepancy, r.right_discrepancy));
            let sup = sup_discrepancy(n, k)?;
            let bound = be_bound(n, k, C0)?;
            let sup_rec = Record::new("be", "sup_discrepancy", sup, bound, sup <= bound).at(n, Some(k));
            Ok([chain, sup_rec])
        });
        for pair in per_pair {
            out.extend(pair?);
        }
    }
    Ok(out)
}

/// Case certificates for `n = 40..=n_max` plus the constants they rest on.
pub fn case_suite(opts: &VerifyOptions) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (k, printed) in [(5u64, C5), (6, C6), (7, C7), (8, C8)] {
        let ck = cases::ck_constant(k)?;
        out.push(Record::new("cases", format!("C{k}"), ck, printed, (ck - printed).abs() <= 5e-6).detail(format!("C_{k}={ck:.6}")));
    }
    let k4 = cases::k4_sufficient(40);
    out.push(Record::new("cases", "K4_anchor", k4, K4_ANCHOR, (k4 - K4_ANCHOR).abs() <= 5e-6).at(40, Some(4)));
    let k9 = cases::k9_sufficient(100);
    out.push(Record::new("cases", "K9_anchor", k9, K9_ANCHOR, (k9 - K9_ANCHOR).abs() <= 5e-6).at(100, Some(9)));
    let certs = if opts.n_max >= 40 {
        cases::verify_all_cases_with(opts.n_max, opts.exec)?
    } else {
        cases::global_certificates()
    };
    out.extend(certs.iter().map(|c| c.to_record()));
    Ok(out)
}

/// Extremal and basis vectors exactly, then the sampled lower bound `1/2`.
pub fn rademacher(opts: &VerifyOptions) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let extremal = SignVector::new(vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2])?;
    let p = prob_within_with(&extremal, 1.0, opts.exec)?;
    out.push(Record::new("rademacher", "extremal", p, 0.5, p == 0.5).detail("a = (1/sqrt2, 1/sqrt2)"));
    for n in 1..=4usize {
        let mut e = vec![0.0; n];
        e[n - 1] = 1.0;
        let p = prob_within_with(&SignVector::new(e)?, 1.0, opts.exec)?;
        out.push(Record::new("rademacher", "basis", p, 1.0, p == 1.0).detail(format!("a = e_{n} in R^{n}")));
    }
    let sampler = UnitVectorSampler::new(opts.max_len)?;
    let report = tomaszewski_property_with(&sampler, opts.count, opts.seed, opts.exec)?;
    out.push(
        Record::new("rademacher", "random", report.min_prob, 0.5, report.holds)
            .detail(format!("{} vectors, n <= {}, seed {}", report.checked, opts.max_len, opts.seed)),
    );
    Ok(out)
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Vec<Record>> {
    match suite {
        Suite::Theorem => theorem(opts),
        Suite::Chvatal => chvatal(opts),
        Suite::Be => berry_esseen(opts),
        Suite::Cases => case_suite(opts),
        Suite::Rademacher => rademacher(opts),
        Suite::All => {
            let mut out = Vec::new();
            for s in suite.expand() {
                out.extend(run_suite(s, opts)?);
            }
            Ok(out)
        }
    }
}
