use binconc::cli::{run, EXIT_OK, EXIT_USAGE};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("binconc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn f_decimal_and_exact() {
    assert_eq!(invoke(&["f", "--n", "40", "--k", "1", "--digits", "8"]), (EXIT_OK, "0.37254609\n".into(), String::new()));
    assert_eq!(invoke(&["f", "--n", "1", "--k", "1"]).1, "1.000000\n");
    assert_eq!(invoke(&["f", "--n", "4", "--k", "2", "--exact"]).1, "7/8\n");
    assert_eq!(invoke(&["f", "--n", "3", "--k", "1", "--exact"]).1, "4/9\n");
    assert_eq!(invoke(&["f", "--n", "3", "--k", "0"]).1, "1.000000\n");
}

#[test]
fn f_rejects_bad_input() {
    let (code, out, err) = invoke(&["f", "--n", "3", "--k", "5"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("k = 5"));
    assert_eq!(invoke(&["f", "--n", "0", "--k", "0"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["f", "--n", "5"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["nonsense"]).0, EXIT_USAGE);
}

#[test]
fn table_csv_matches_printed_entries() {
    let (code, out, _) = invoke(&["table", "--n-min", "3", "--n-max", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "n,k,f_exact_num,f_exact_den,f_decimal\n3,1,4,9,0.44\n4,1,27,64,0.42\n4,2,7,8,0.88\n");
    let (_, out, _) = invoke(&["table", "--n-min", "39", "--n-max", "39", "--digits", "6"]);
    let row = out.lines().find(|l| l.starts_with("39,5,")).unwrap();
    assert!(row.ends_with(",0.773351"));
}

#[test]
fn table_formats() {
    let (_, md, _) = invoke(&["table", "--n-min", "3", "--n-max", "4", "--format", "markdown"]);
    assert!(md.starts_with("| k \\ n | 3 | 4 |"));
    let (_, tex, _) = invoke(&["table", "--n-min", "3", "--n-max", "4", "--format", "latex"]);
    assert!(tex.contains("\\begin{tabular}") && tex.contains("0.88"));
    let (_, json, _) = invoke(&["table", "--n-min", "4", "--n-max", "4", "--format", "json", "--k-policy", "full"]);
    let rows: Vec<serde_json::Value> = json.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[2]["f_exact_num"], "7");
    assert_eq!(rows[2]["f_decimal"], "0.88");
    assert_eq!(invoke(&["table", "--n-min", "5", "--n-max", "3"]).0, EXIT_USAGE);
}

#[test]
fn verify_emits_json_lines() {
    let (code, out, err) = invoke(&["verify", "--suite", "be", "--n-max", "45"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(err.contains("phi_width=0.68268949"));
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["suite"], "be");
        assert_eq!(v["ok"], true);
    }
    let (code, out, _) = invoke(&["verify", "--suite", "theorem", "--n-max", "30"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 60);
}

#[test]
fn verify_all_small() {
    let (code, _, err) = invoke(&["verify", "--n-max", "42", "--count", "200", "--max-len", "10"]);
    assert_eq!(code, EXIT_OK, "{err}");
    for suite in ["theorem", "chvatal", "be", "cases", "rademacher"] {
        assert!(err.contains(&format!("suite {suite}:")), "{err}");
    }
    assert!(!err.contains("counterexample"));
}

#[test]
fn chvatal_minimizers() {
    assert_eq!(invoke(&["chvatal", "--n", "3"]).1, "minimizers: {2} (2n/3 = 2)\n");
    assert_eq!(invoke(&["chvatal", "--n", "7"]).1, "minimizers: {5} (2n/3 = 14/3)\n");
    assert_eq!(invoke(&["chvatal", "--n", "1"]).0, EXIT_USAGE);
}

#[test]
fn rademacher_coeffs() {
    assert_eq!(invoke(&["rademacher", "--coeffs", "0.70710678,0.70710678"]).1, "P(|X|<=1) = 0.5\n");
    assert_eq!(invoke(&["rademacher", "--coeffs", "0.6,0.8"]).1, "P(|X|<=1) = 0.5\n");
    assert_eq!(invoke(&["rademacher", "--coeffs", "1"]).1, "P(|X|<=1) = 1\n");
    let (code, _, err) = invoke(&["rademacher", "--coeffs", "0.5,0.5"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("unit norm"));
    assert_eq!(invoke(&["rademacher"]).0, EXIT_USAGE);
}

#[test]
fn rademacher_random_is_deterministic() {
    let first = invoke(&["rademacher", "--random", "1000", "--seed", "7"]);
    assert_eq!(first.0, EXIT_OK);
    assert!(first.1.ends_with("all >= 0.5: true\n"));
    assert_eq!(first, invoke(&["--sequential", "rademacher", "--random", "1000", "--seed", "7"]));
}

#[test]
fn sequential_flag_gives_identical_output() {
    let args = ["verify", "--suite", "cases", "--n-max", "60"];
    let parallel = invoke(&args);
    let mut seq = vec!["--sequential"];
    seq.extend(args);
    assert_eq!(parallel, invoke(&seq));
}
