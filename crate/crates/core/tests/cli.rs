use nawelch_core::cli::config::ConfigFile;
use nawelch_core::cli::run;
use serde_json::Value;
use std::path::Path;
use std::process::Command;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nawelch").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

const ORTHONORMAL2: &str = r#"{"field":"na","dimension":2,"vectors":[["1","0"],["0","1"]]}"#;

#[test]
fn bounds_n4_d2_complex() {
    let (code, out, _) = call(&["bounds", "--n", "4", "--d", "2", "--field", "c"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["gerzon"], 4);
    let w = v["result"]["welch_max"][0]["value"].as_f64().unwrap();
    assert!((w - 1.0 / 3.0).abs() < 1e-15);
    assert!(out.contains("0.333333"));
}

#[test]
fn verify_na_orthonormal_basis() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "orthonormal2.json", ORTHONORMAL2);
    let (code, out, _) = call(&["verify-na", "--config", &f, "--order", "1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["holds"], true);
    assert_eq!(v["result"]["tight"], true);
    assert_eq!(v["verdict"], "holds");
}

#[test]
fn ragged_rows_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "ragged.json",
        r#"{"field":"na","dimension":2,"vectors":[["1","0"],["1"]]}"#,
    );
    let (code, out, err) = call(&["verify-na", "--config", &f, "--order", "1"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("vectors[1]"), "{err}");
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = write(dir.path(), "bad.json", "{\n \"field\": \"na\",\n ]");
    let (code, _, err) = call(&["verify-na", "--config", &bad_json]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    let bad_scalar = write(
        dir.path(),
        "scalar.json",
        r#"{"field":"na","dimension":1,"vectors":[["1/0"]]}"#,
    );
    let (code, _, err) = call(&["verify-na", "--config", &bad_scalar]);
    assert_eq!(code, 2);
    assert!(err.contains("column"), "{err}");

    let (code, _, _) = call(&["verify-na", "--config", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = call(&["no-such-command"]);
    assert_eq!(code, 2);
    let (code, _, _) = call(&["bounds", "--n", "4", "--d", "2", "--field", "q"]);
    assert_eq!(code, 2);

    // Wrong certificate size for order 2 (needs 3x3).
    let cert = write(
        dir.path(),
        "cert.json",
        r#"{"field":"na","dimension":2,"vectors":[["1","0"],["0","1"]],
            "certificate":{"P":[["1","0"],["0","1"]],"D":["1","1"]}}"#,
    );
    let (code, _, _) = call(&["verify-na", "--config", &cert, "--order", "1"]);
    assert_eq!(code, 0);
    let (code, _, err) = call(&["verify-na", "--config", &cert, "--order", "2"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn failing_checks_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    // Two parallel unit vectors are not equiangular at valuation 2.
    let f = write(dir.path(), "par.json", ORTHONORMAL2);
    let (code, out, _) = call(&[
        "equiangular-na",
        "--config",
        &f,
        "--norm",
        "1",
        "--gamma-val",
        "2",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("not-equiangular"));
    let (code, out, _) = call(&[
        "equiangular-na",
        "--config",
        &f,
        "--norm",
        "1",
        "--gamma-val",
        "inf",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("\"gamma_is_zero\": true"));

    // Two vectors in dimension 2 are not d^2 of them.
    let (code, _, _) = call(&["zauner-na", "--config", &f]);
    assert_eq!(code, 2);

    let gens = write(dir.path(), "gens.json", r#"["0"]"#);
    let (code, _, _) = call(&[
        "search-na",
        "--d",
        "2",
        "--nmax",
        "2",
        "--gens",
        &gens,
        "--norm",
        "1",
        "--gamma-val",
        "0",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn search_na_finds_pythagorean_pair() {
    let dir = tempfile::tempdir().unwrap();
    let gens = write(dir.path(), "gens.json", r#"["0", "1/2"]"#);
    let (code, out, _) = call(&[
        "search-na",
        "--d",
        "2",
        "--nmax",
        "2",
        "--gens",
        &gens,
        "--norm",
        "1",
        "--gamma-val",
        "0",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let hits = v["result"]["hits"].as_array().unwrap();
    assert!(hits
        .iter()
        .any(|h| h["vectors"] == serde_json::json!([["1", "0"], ["3/5", "4/5"]])));
}

#[test]
fn zauner_base_case() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "one.json",
        r#"{"field":"na","dimension":1,"vectors":[["1"]]}"#,
    );
    let (code, out, _) = call(&["zauner-na", "--config", &f]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"satisfied\": true"));
}

#[test]
fn verify_classical_sic() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "sic.json",
        r#"{"field":"c","dimension":2,"vectors":[
            ["1","0"],
            ["0.57735026918962576","0.81649658092772603"],
            ["0.57735026918962576","-0.40824829046386302+0.70710678118654752i"],
            ["0.57735026918962576","-0.40824829046386302-0.70710678118654752i"]]}"#,
    );
    let (code, out, err) = call(&["verify-classical", "--config", &f, "--order", "1"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!((v["result"]["welch_sum_lhs"].as_f64().unwrap() - 8.0).abs() < 1e-9);
    assert!((v["result"]["coherence"].as_f64().unwrap().powi(2) - 1.0 / 3.0).abs() < 1e-9);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "o.json", ORTHONORMAL2);
    let args = [
        "search-classical",
        "--n",
        "3",
        "--d",
        "2",
        "--field",
        "r",
        "--trials",
        "4",
        "--seed",
        "11",
        "--steps",
        "200",
    ];
    let bin = env!("CARGO_BIN_EXE_nawelch");
    let a = Command::new(bin).args(args).output().unwrap();
    let b = Command::new(bin).args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let x = call(&["verify-na", "--config", &f, "--order", "2", "--general"]);
    let y = call(&["verify-na", "--config", &f, "--order", "2", "--general"]);
    assert_eq!(x, y);
    assert_eq!(x.0, 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_nawelch");
    let ok = Command::new(bin)
        .args(["bounds", "--n", "3", "--d", "2", "--field", "r"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin)
        .args(["bounds", "--n", "x"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn config_round_trip() {
    let text = r#"{"field":"na","dimension":2,"vectors":[["1","0"],["3/5","4/5"]],
                  "certificate":{"P":[["1","0"],["0","1"]],"D":["2","2"]}}"#;
    let canon = ConfigFile::from_json(text).unwrap().canonicalize().unwrap();
    let again = ConfigFile::from_json(&canon.to_json()).unwrap();
    assert_eq!(again, canon);
    let classical = r#"{"field":"c","dimension":1,"vectors":[["0.6+0.8i"],["1"]]}"#;
    let canon = ConfigFile::from_json(classical)
        .unwrap()
        .canonicalize()
        .unwrap();
    assert_eq!(ConfigFile::from_json(&canon.to_json()).unwrap(), canon);
}
