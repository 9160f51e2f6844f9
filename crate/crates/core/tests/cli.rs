use nekrasov_blowup::report::{run_cli, RelationReport, Status};

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run_cli(std::iter::once("nekrasov-verify").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn derive_beta_prints_the_closed_form() {
    let (code, out) = run(&["derive-beta", "--l", "0", "--j", "0", "--d", "2", "--order", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("1 - q1 q2 z"));
}

#[test]
fn verify_ny_exits_zero() {
    let (code, out) = run(&["verify-ny", "--l", "0", "--d", "0", "--j", "0", "--order", "4", "--q1-root", "2/3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("exact_zero"));
}

#[test]
fn order_zero_series_is_one() {
    let (code, out) = run(&["series", "--l", "0", "--order", "0"]);
    assert_eq!((code, out.trim()), (0, "1"));
}

#[test]
fn nonzero_residual_exits_one_and_names_the_term() {
    let (code, out) = run(&["verify-bilinear", "--relation", "RCS1-printed", "--output", "json", "--order", "1"]);
    assert_eq!(code, 1);
    for line in out.lines() {
        let r: RelationReport = serde_json::from_str(line).unwrap();
        assert_eq!(r.status, Status::Nonzero);
        let f = r.first_nonzero.expect("nonzero reports carry the offending term");
        assert_eq!(f.exponent, "1/2");
        assert!(!f.coefficient.is_empty());
    }
}

#[test]
fn json_schema_is_stable() {
    let (_, out) = run(&["verify-ny", "--l", "1", "--d", "0", "--j", "1", "--order", "1", "--output", "json"]);
    assert_eq!(out.lines().count(), 3);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        let mut keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(keys, ["backend", "cache_hits", "order", "params", "relation", "seconds", "status"]);
        assert_eq!(v["status"], "exact_zero");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["verify-ny", "--l", "0"]).0, 2);
    assert_eq!(run(&["verify-ny", "--l", "0", "--d", "0", "--j", "0", "--grid", "12"]).0, 2);
    assert_eq!(run(&["verify-ny", "--l", "0", "--d", "0", "--j", "0", "--order", "x"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn computation_errors_are_reported() {
    // level 3 is outside the supported range
    let (code, out) = run(&["verify-ny", "--l", "3", "--d", "0", "--j", "0", "--order", "1"]);
    assert_eq!(code, 1);
    assert!(out.contains("error"), "{out}");
}

#[test]
fn symbolic_backend_and_probe() {
    let (code, out) = run(&["verify-ny", "--l", "0", "--d", "1", "--j", "1", "--order", "1", "--backend", "symbolic"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("symbolic"));
    let (code, out) = run(&["probe-convergence", "--kmax", "4"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("bound_satisfied"));
}

#[test]
fn convolution_replay_flags_the_misprinted_entry() {
    let (code, out) = run(&["replay-convolution", "--d1", "-1", "--d2", "1", "--j", "1", "--eps", "-1", "--order", "1", "--q1-root", "2/3"]);
    assert_eq!(code, 1);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("exact_zero") && lines[0].contains("convolution "));
    assert!(lines[1].starts_with("nonzero") && lines[1].contains("convolution-listed"));
    let (code, _) = run(&["replay-convolution", "--cs", "--order", "1"]);
    assert_eq!(code, 0);
}
