use extpow::cli::run;
use serde_json::Value;

fn ok(args: &[&str]) -> Value {
    let (code, out) = run(std::iter::once("extpow").chain(args.iter().copied()));
    assert_eq!(code, 0, "{args:?}: {out}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}: {out}"))
}

fn code(args: &[&str]) -> (i32, String) {
    run(std::iter::once("extpow").chain(args.iter().copied()))
}

#[test]
fn power_of_identity() {
    let dir = std::env::temp_dir().join(format!("extpow-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("id.json");
    std::fs::write(&path, "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]").unwrap();
    let v = ok(&[
        "power",
        "--ring",
        "fp:7",
        "--n",
        "4",
        "--m",
        "2",
        "--matrix",
        path.to_str().unwrap(),
    ]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for (r, row) in rows.iter().enumerate() {
        for (c, x) in row.as_array().unwrap().iter().enumerate() {
            assert_eq!(x.as_i64().unwrap(), (r == c) as i64);
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn commutator_of_the_third_power() {
    let v = ok(&[
        "commutator",
        "--ring",
        "poly",
        "--n",
        "6",
        "--m",
        "3",
        "--I",
        "1,3,5",
        "--J",
        "1,2,4",
        "--i",
        "4",
        "--j",
        "3",
    ]);
    assert_eq!(v["kind"], "triple");
    let mut factors: Vec<String> = v["word"]
        .as_str()
        .unwrap()
        .split('·')
        .map(str::to_string)
        .collect();
    factors.sort();
    assert_eq!(
        factors,
        [
            "t_{135,123}(xi*zeta)",
            "t_{145,123}(xi*zeta^2)",
            "t_{145,124}(-xi*zeta)"
        ]
    );
    assert_eq!(v["factors"][0]["I"], "1,4,5");
}

#[test]
fn level_and_its_errors() {
    assert_eq!(
        ok(&["level", "--n", "6", "--m", "2", "--gen", "12:34:4", "--gen", "13:15:6"])["level"],
        "(2)"
    );
    let (c, out) = code(&["level", "--n", "5", "--m", "2", "--gen", "12:34:4"]);
    assert_eq!(c, 1);
    assert!(out.contains("net of ideals"), "{out}");
}

#[test]
fn witnesses_report_validity() {
    let v = ok(&[
        "witness", "equalize", "--ring", "fp:7", "--n", "4", "--m", "2", "--from", "12:34", "--to",
        "34:12",
    ]);
    assert_eq!(v["valid"], true);
    let v = ok(&[
        "witness", "perfect", "--ring", "zmod:9", "--n", "6", "--m", "2", "--I", "12", "--J", "34",
        "--arg", "3",
    ]);
    assert_eq!(v["verified"], true);
    let (c, out) = code(&[
        "witness", "equalize", "--ring", "z", "--n", "4", "--m", "2", "--from", "12:34", "--to",
        "34:12",
    ]);
    assert_eq!((c, out.as_str()), (1, "error: 2 not invertible"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["bogus"]).0, 2);
    assert_eq!(code(&["form", "--n", "4"]).0, 2);
    assert_eq!(code(&["--help"]).0, 0);
    assert_eq!(code(&["form", "--n", "5", "--m", "2"]).0, 1);
    assert_eq!(code(&["form", "--n", "4", "--m", "2", "--ring", "q"]).0, 1);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--suite", "commutators", "--seed", "3"][..],
        &["pluecker", "--n", "5", "--m", "2"][..],
        &[
            "commutator",
            "--ring",
            "poly",
            "--n",
            "5",
            "--m",
            "2",
            "--I",
            "13",
            "--J",
            "24",
            "--i",
            "2",
            "--j",
            "3",
            "--pretty",
        ][..],
    ] {
        assert_eq!(code(args), code(args), "{args:?}");
    }
}
