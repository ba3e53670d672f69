use halphen::cli::run;
use serde_json::Value;

fn ok_json(args: &[&str]) -> Value {
    let out = run(std::iter::once("halphen").chain(args.iter().copied()));
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn fraction(v: &Value) -> (String, String) {
    assert_eq!(v["exact"], Value::Bool(true), "{v}");
    (v["num"].as_str().unwrap().to_string(), v["den"].as_str().unwrap().to_string())
}

fn frac(n: &str, d: &str) -> (String, String) {
    (n.to_string(), d.to_string())
}

/// Every number in the document sits in an object that carries an "exact" flag, except
/// integer counts and indices.
fn numbers_are_flagged(v: &Value, parent_flagged: bool) -> bool {
    match v {
        Value::Number(n) => parent_flagged || n.is_u64() || n.is_i64(),
        Value::Array(xs) => xs.iter().all(|x| numbers_are_flagged(x, false)),
        Value::Object(m) => {
            let flagged = m.contains_key("exact");
            m.values().all(|x| numbers_are_flagged(x, flagged))
        }
        _ => true,
    }
}

#[test]
fn lemniscatic_roots() {
    let v = ok_json(&["roots", "--g2", "1", "--g3", "0", "--format", "json"]);
    let re: Vec<_> = v["roots"].as_array().unwrap().iter().map(|r| fraction(&r["re"])).collect();
    assert_eq!(re, vec![frac("1", "2"), frac("0", "1"), frac("-1", "2")]);
    assert_eq!(v["ordering"], "descending-real");
    assert!(numbers_are_flagged(&v, false));
}

#[test]
fn triple_zero_root() {
    let v = ok_json(&["roots", "--g2", "0", "--g3", "0"]);
    for r in v["roots"].as_array().unwrap() {
        assert_eq!(fraction(&r["re"]), frac("0", "1"));
    }
}

#[test]
fn malformed_rational_exits_two() {
    let out = run(["halphen", "roots", "--g2", "one", "--g3", "0"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    assert!(run(["halphen", "frobnicate"]).code == 2);
}

#[test]
fn decimal_and_fraction_inputs_are_exact() {
    let v = ok_json(&["roots", "--g2", "0.75", "--g3", "-1/4"]);
    assert_eq!(fraction(&v["g2"]), frac("3", "4"));
    assert_eq!(fraction(&v["g3"]), frac("-1", "4"));
}

#[test]
fn small_spectra() {
    let v = ok_json(&["spectrum", "--n", "0", "--g2", "1", "--g3", "0"]);
    let b: Vec<_> = v["B_values"].as_array().unwrap().iter().map(|z| fraction(&z["re"])).collect();
    assert_eq!(b, vec![frac("0", "1")]);
    let v = ok_json(&["spectrum", "--n", "1", "--g2", "1", "--g3", "0"]);
    assert_eq!(v["B_values"].as_array().unwrap().len(), 2);
    assert!(v["B_values"].as_array().unwrap().iter().all(|z| fraction(&z["re"]) == frac("0", "1")));
    assert!(!v["discrepancies"].as_array().unwrap().is_empty());
    assert!(numbers_are_flagged(&v, false));
}

#[test]
fn quadratic_spectrum_has_three_values() {
    let v = ok_json(&["spectrum", "--n", "2", "--g2", "1", "--g3", "0"]);
    let sols = v["solutions"].as_array().unwrap();
    let total: u64 = sols.iter().map(|s| s["multiplicity"].as_u64().unwrap()).sum();
    assert_eq!(total, 3);
    for s in sols {
        assert_eq!(s["coeffs"].as_array().unwrap().len(), 3);
        assert_eq!(s["eta"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn potential_grid_has_decreasing_w() {
    let out = run(["halphen", "potential", "--n", "2", "--g2", "1", "--g3", "0", "--r-min", "0.6", "--r-max", "5", "--samples", "10"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("r,w,V_general,V_paper,diff"));
    let w: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(w.len(), 10);
    assert!(w.windows(2).all(|p| p[1] < p[0]));
}

#[test]
fn potential_inside_the_roots_is_a_domain_error() {
    let out = run(["halphen", "potential", "--n", "2", "--g2", "1", "--g3", "0", "--r-min", "0.2", "--r-max", "5"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("largest root"));
}

#[test]
fn exact_defaults_render_csv() {
    let out = run(["halphen", "exact"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("r,w_plus,R,residual"));
    assert_eq!(lines.count(), 20);
}

#[test]
fn zero_k_branch_exits_three() {
    let out = run(["halphen", "exact", "--b", "0", "--branch", "plus"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("degenerate branch"));
}

#[test]
fn dist_single_term_coefficients() {
    let out = run(["halphen", "dist", "--s", "1", "--q", "0", "--k2", "1/2", "--kmax", "12"]);
    assert_eq!(out.code, 0);
    let rows: Vec<Vec<&str>> = out.stdout.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 13);
    assert_eq!(&rows[0][..4], &["0", "0", "1", "1"]);
    assert_eq!(&rows[1][..4], &["1", "0", "25", "32"]);
    let v = ok_json(&["dist", "--s", "1", "--format", "json"]);
    assert_eq!(v["fourier"]["all_interior_zero"], Value::Bool(true));
    assert!(numbers_are_flagged(&v, false));
}

#[test]
fn verify_is_reproducible_and_passes() {
    let a = run(["halphen", "verify", "--suite", "dist", "--seed", "3"]);
    let b = run(["halphen", "verify", "--suite", "dist", "--seed", "3"]);
    assert_eq!(a, b);
    assert_eq!(a.code, 0);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    assert!(!v["discrepancies"].as_array().unwrap().is_empty());
}

#[test]
fn out_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("halphen-cli-{}.csv", std::process::id()));
    let out = run(["halphen", "roots", "--g2", "1", "--g3", "0", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("index,re,im,exact\n1,1/2,0,true\n"));
}

#[test]
fn table_format_aligns_columns() {
    let out = run(["halphen", "roots", "--g2", "1", "--g3", "0", "--format", "table"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert!(lines[1].chars().all(|c| c == '-' || c == ' '));
    assert_eq!(lines.len(), 5);
}
