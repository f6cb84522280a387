use std::collections::BTreeSet;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use crate::binomial::{ExactProb, Rounding};
use crate::concentration::f;
use crate::error::{Error, Result};
use crate::exec::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KPolicy {
    /// k = 1..=floor(n/2)
    Half,
    /// k = 0..=n
    Full,
}

impl KPolicy {
    pub fn ks(&self, n: u64) -> Vec<u64> {
        match self {
            KPolicy::Half => (1..=n / 2).collect(),
            KPolicy::Full => (0..=n).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Markdown,
    Latex,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableSpec {
    pub n_min: u64,
    pub n_max: u64,
    pub k_policy: KPolicy,
    pub digits: usize,
    pub format: TableFormat,
    pub rounding: Rounding,
}

impl TableSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_min < 1 {
            return Err(Error::Domain("n_min must be at least 1".into()));
        }
        if self.n_min > self.n_max {
            return Err(Error::Domain(format!("n_min = {} exceeds n_max = {}", self.n_min, self.n_max)));
        }
        if !(1..=50).contains(&self.digits) {
            return Err(Error::Domain(format!("digits must be in 1..=50, got {}", self.digits)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub n: u64,
    pub k: u64,
    pub value: ExactProb,
    pub decimal: String,
}

#[derive(Serialize)]
struct JsonEntry<'a> {
    n: u64,
    k: u64,
    f_exact_num: String,
    f_exact_den: String,
    f_decimal: &'a str,
}

/// All entries ordered by `n`, then `k`.
pub fn compute(spec: &TableSpec, exec: Exec) -> Result<Vec<Entry>> {
    spec.validate()?;
    let per_n = exec.map_range(spec.n_min, spec.n_max, |n| -> Result<Vec<Entry>> {
        spec.k_policy
            .ks(n)
            .into_iter()
            .map(|k| {
                let value = f(n, k)?;
                let decimal = value.to_decimal(spec.digits, spec.rounding);
                Ok(Entry { n, k, value, decimal })
            })
            .collect()
    });
    let mut out = Vec::new();
    for entries in per_n {
        out.extend(entries?);
    }
    Ok(out)
}

pub fn render(spec: &TableSpec, entries: &[Entry]) -> String {
    match spec.format {
        TableFormat::Csv => render_csv(entries),
        TableFormat::Json => render_json(entries),
        TableFormat::Markdown => render_grid(spec, entries, GridStyle::Markdown),
        TableFormat::Latex => render_grid(spec, entries, GridStyle::Latex),
    }
}

fn render_csv(entries: &[Entry]) -> String {
    let mut s = String::from("n,k,f_exact_num,f_exact_den,f_decimal\n");
    for e in entries {
        let _ = writeln!(s, "{},{},{},{},{}", e.n, e.k, e.value.numer(), e.value.denom(), e.decimal);
    }
    s
}

fn render_json(entries: &[Entry]) -> String {
    let mut s = String::new();
    for e in entries {
        let row = JsonEntry {
            n: e.n,
            k: e.k,
            f_exact_num: e.value.numer().to_string(),
            f_exact_den: e.value.denom().to_string(),
            f_decimal: &e.decimal,
        };
        s.push_str(&serde_json::to_string(&row).expect("entry serializes"));
        s.push('\n');
    }
    s
}

#[derive(Clone, Copy)]
enum GridStyle {
    Markdown,
    Latex,
}

/// Rows `k`, columns `n`; blank cells where `k` is not tabulated for that `n`.
fn render_grid(spec: &TableSpec, entries: &[Entry], style: GridStyle) -> String {
    let ns: Vec<u64> = (spec.n_min..=spec.n_max).collect();
    let ks: BTreeSet<u64> = entries.iter().map(|e| e.k).collect();
    let cell = |n: u64, k: u64| -> &str {
        entries.iter().find(|e| e.n == n && e.k == k).map(|e| e.decimal.as_str()).unwrap_or("")
    };
    let mut s = String::new();
    match style {
        GridStyle::Markdown => {
            let header: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
            let _ = writeln!(s, "| k \\ n | {} |", header.join(" | "));
            let _ = writeln!(s, "|---|{}", "---|".repeat(ns.len()));
            for &k in &ks {
                let cells: Vec<&str> = ns.iter().map(|&n| cell(n, k)).collect();
                let _ = writeln!(s, "| {k} | {} |", cells.join(" | "));
            }
        }
        GridStyle::Latex => {
            let _ = writeln!(s, "\\begin{{tabular}}{{|l|{}}}", "l|".repeat(ns.len()));
            s.push_str("\\hline\n");
            let header: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
            let _ = writeln!(s, "$k \\backslash n$ & {} \\\\", header.join(" & "));
            s.push_str("\\hline\n");
            for &k in &ks {
                let cells: Vec<&str> = ns.iter().map(|&n| cell(n, k)).collect();
                let _ = writeln!(s, "{k} & {} \\\\", cells.join(" & "));
                s.push_str("\\hline\n");
            }
            s.push_str("\\end{tabular}\n");
        }
    }
    s
}
