//! One line per acceptance criterion. Every check runs with exact
//! arithmetic, so the only tolerances are the time limits below.

use std::time::{Duration, Instant};

use extpow::cli::{check_criterion, run, CheckResult};

const SEED: u64 = 42;
const FUNCTORIALITY_LIMIT: Duration = Duration::from_secs(30);
const SUITE_LIMIT: Duration = Duration::from_secs(300);

const TITLES: [&str; 10] = [
    "functoriality of the exterior power",
    "formula (m) and the displayed commutators",
    "commutator classifier and second-power steps",
    "level witnesses",
    "z-factorization",
    "level computation",
    "stabilizer characterization",
    "congruence membership",
    "perfectness witnesses",
    "Hall–Witt and Chevalley self-tests",
];

fn report(k: u8, checks: &[CheckResult], extra: Option<String>) -> bool {
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .chain(extra)
        .collect();
    let cases: usize = checks.iter().map(|c| c.cases).sum();
    let ms: u128 = checks.iter().map(|c| c.millis).sum();
    let status = if failed.is_empty() && !checks.is_empty() {
        "PASS"
    } else {
        "FAIL"
    };
    println!(
        "criterion {k}: {status}  {} ({} checks, {cases} cases, {ms} ms)",
        TITLES[k as usize - 1],
        checks.len()
    );
    for c in checks {
        println!(
            "    {:<4} {} [{} ms]",
            if c.passed { "ok" } else { "FAIL" },
            c.name,
            c.millis
        );
    }
    for f in &failed {
        println!("    -> {f}");
    }
    status == "PASS"
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for k in 1..=10u8 {
        let t = Instant::now();
        let checks = check_criterion(k, SEED);
        let elapsed = t.elapsed();
        let extra = match k {
            1 if elapsed > FUNCTORIALITY_LIMIT => {
                Some(format!("took {elapsed:?}, limit {FUNCTORIALITY_LIMIT:?}"))
            }
            10 if start.elapsed() > SUITE_LIMIT => Some(format!(
                "all criteria took {:?}, limit {SUITE_LIMIT:?}",
                start.elapsed()
            )),
            _ => None,
        };
        if !report(k, &checks, extra) {
            failures.push(k);
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}

#[test]
fn verify_all_reports_zero_failures_and_full_coverage() {
    let (code, out) = run(["extpow", "verify", "--suite", "all", "--seed", "7"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["failures"], 0);
    assert_eq!(
        v["covered"].as_array().unwrap().len(),
        extpow::cli::COVERAGE.len()
    );
}
