//! Command-line front end.
//!
//! Standard output carries data (values, tables, JSON-lines certificates);
//! standard error carries summaries and diagnostics. Exit codes: 0 success,
//! 1 verification failure, 2 usage error.

pub mod table;
pub mod verify;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};

use crate::binomial::Rounding;
use crate::concentration::{argmin_chvatal_with, f, nearest_to_two_thirds};
use crate::error::Error;
use crate::exec::Exec;
use crate::rademacher::{prob_within_with, tomaszewski_property_with, SignVector, UnitVectorSampler};

pub use table::{KPolicy, TableFormat, TableSpec};
pub use verify::{Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Allowed `| ||a|| - 1 |` for `--coeffs`; accepted input is renormalized.
pub const COEFF_NORM_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "binconc", version, about = "Exact binomial concentration probabilities and proof certificates")]
pub struct Cli {
    /// Run every scan on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print f_n(k) = P(|B(n,k/n) - k| <= sqrt(k(n-k)/n)).
    F(FArgs),
    /// Tabulate f_n(k) over a range of n.
    Table(TableArgs),
    /// Run verification suites; JSON lines on stdout.
    Verify(VerifyArgs),
    /// Minimizers of q_m = P(B(n,m/n) <= m).
    Chvatal(ChvatalArgs),
    /// P(|sum a_i eps_i| <= t) for Rademacher signs.
    Rademacher(RademacherArgs),
}

#[derive(Debug, Args)]
pub struct FArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
    #[arg(long, default_value_t = 6)]
    pub digits: usize,
    /// Print num/den instead of a decimal.
    #[arg(long)]
    pub exact: bool,
    /// Truncate instead of rounding half-even.
    #[arg(long)]
    pub truncate: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub n_min: u64,
    #[arg(long)]
    pub n_max: u64,
    #[arg(long, value_enum, default_value_t = KPolicy::Half)]
    pub k_policy: KPolicy,
    #[arg(long, default_value_t = 2)]
    pub digits: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    #[arg(long)]
    pub truncate: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = 500)]
    pub n_max: u64,
    /// Random unit vectors for the rademacher suite.
    #[arg(long, default_value_t = 10_000)]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 15)]
    pub max_len: usize,
}

#[derive(Debug, Args)]
pub struct ChvatalArgs {
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["coeffs", "random"])))]
pub struct RademacherArgs {
    /// Comma-separated unit-norm coefficients.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<f64>>,
    /// Number of random unit vectors to check against the 1/2 bound.
    #[arg(long)]
    pub random: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = 15)]
    pub max_len: usize,
}

fn rounding(truncate: bool) -> Rounding {
    if truncate {
        Rounding::Truncate
    } else {
        Rounding::HalfEven
    }
}

fn usage(err: &mut dyn Write, e: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_USAGE
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    match cli.command {
        Command::F(a) => cmd_f(&a, out, err),
        Command::Table(a) => cmd_table(&a, exec, out, err),
        Command::Verify(a) => cmd_verify(&a, exec, out, err),
        Command::Chvatal(a) => cmd_chvatal(&a, exec, out, err),
        Command::Rademacher(a) => cmd_rademacher(&a, exec, out, err),
    }
}

fn cmd_f(a: &FArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if a.digits == 0 {
        return usage(err, "digits must be at least 1");
    }
    let value = match f(a.n, a.k) {
        Ok(v) => v,
        Err(e) => return usage(err, e),
    };
    let text = if a.exact { value.to_string() } else { value.to_decimal(a.digits, rounding(a.truncate)) };
    let _ = writeln!(out, "{text}");
    EXIT_OK
}

fn cmd_table(a: &TableArgs, exec: Exec, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let spec = TableSpec {
        n_min: a.n_min,
        n_max: a.n_max,
        k_policy: a.k_policy,
        digits: a.digits,
        format: a.format,
        rounding: rounding(a.truncate),
    };
    match table::compute(&spec, exec) {
        Ok(entries) => {
            let _ = write!(out, "{}", table::render(&spec, &entries));
            EXIT_OK
        }
        Err(e) => usage(err, e),
    }
}

fn cmd_verify(a: &VerifyArgs, exec: Exec, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if a.n_max < 2 && matches!(a.suite, Suite::Theorem | Suite::Chvatal | Suite::All) {
        return usage(err, "--n-max must be at least 2");
    }
    let opts = VerifyOptions { n_max: a.n_max, count: a.count, seed: a.seed, max_len: a.max_len, exec };
    let mut failed = false;
    for suite in a.suite.expand() {
        let records = match verify::run_suite(suite, &opts) {
            Ok(r) => r,
            Err(e @ (Error::Domain(_) | Error::NTooSmall { .. })) => return usage(err, e),
            Err(e) => {
                let _ = writeln!(err, "suite {}: {e}", suite.name());
                return EXIT_FAILED;
            }
        };
        for r in &records {
            let _ = writeln!(out, "{}", r.to_json_line());
        }
        let bad = records.iter().filter(|r| !r.ok).count();
        let _ = writeln!(err, "suite {}: {} certificates, {} failed", suite.name(), records.len(), bad);
        for r in records.iter().filter(|r| r.detail.as_deref().is_some_and(|d| d.starts_with("phi_width="))) {
            let _ = writeln!(err, "  {}", r.detail.as_deref().unwrap_or_default());
        }
        if let Some(first) = records.iter().find(|r| !r.ok) {
            let _ = writeln!(err, "  first counterexample: {}", first.to_json_line());
            failed = true;
        }
    }
    if failed {
        EXIT_FAILED
    } else {
        EXIT_OK
    }
}

fn two_thirds(n: u64) -> String {
    let g = num_integer::gcd(2 * n, 3);
    if g == 3 {
        format!("{}", 2 * n / 3)
    } else {
        format!("{}/3", 2 * n)
    }
}

fn set_string(s: &BTreeSet<u64>) -> String {
    let items: Vec<String> = s.iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn cmd_chvatal(a: &ChvatalArgs, exec: Exec, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let found = match argmin_chvatal_with(a.n, exec) {
        Ok(s) => s,
        Err(e) => return usage(err, e),
    };
    let _ = writeln!(out, "minimizers: {} (2n/3 = {})", set_string(&found), two_thirds(a.n));
    if found.is_subset(&nearest_to_two_thirds(a.n)) {
        EXIT_OK
    } else {
        let _ = writeln!(err, "minimizers are not nearest to 2n/3");
        EXIT_FAILED
    }
}

fn cmd_rademacher(a: &RademacherArgs, exec: Exec, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Some(coeffs) = &a.coeffs {
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > COEFF_NORM_TOL {
            return usage(err, format!("coefficients must have unit norm, got norm {norm}"));
        }
        let result = SignVector::normalized(coeffs.clone()).and_then(|v| prob_within_with(&v, a.t, exec));
        return match result {
            Ok(p) => {
                let _ = writeln!(out, "P(|X|<={}) = {p}", a.t);
                EXIT_OK
            }
            Err(e) => usage(err, e),
        };
    }
    let count = a.random.unwrap_or_default();
    let sampler = match UnitVectorSampler::new(a.max_len) {
        Ok(s) => s,
        Err(e) => return usage(err, e),
    };
    match tomaszewski_property_with(&sampler, count, a.seed, exec) {
        Ok(r) => {
            let _ = writeln!(out, "checked: {} vectors (n <= {}), min P(|X|<=1) = {}", r.checked, a.max_len, r.min_prob);
            let _ = writeln!(out, "all >= 0.5: {}", r.holds);
            if r.holds {
                EXIT_OK
            } else {
                let _ = writeln!(err, "counterexample: {:?}", r.worst);
                EXIT_FAILED
            }
        }
        Err(e) => usage(err, e),
    }
}
