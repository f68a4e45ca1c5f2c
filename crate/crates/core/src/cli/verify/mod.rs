//! Self-verification suites. Each check is tagged with the acceptance
//! criterion it backs and records the public operations it exercised.

mod algebra;
mod level;
mod stab;

use std::collections::BTreeSet;
use std::time::Instant;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

/// Every public operation; `verify --suite all` must touch each of them.
pub const COVERAGE: &[&str] = &[
    "ideal_generate",
    "ideal_membership",
    "solve_linear",
    "is_unit",
    "det",
    "minor",
    "mat_inverse",
    "word_evaluate",
    "chevalley_commutator",
    "hall_witt_check",
    "weight_sign",
    "exterior_power",
    "ext_transvection_decomposition",
    "height",
    "classify_commutator",
    "compute_level",
    "equalize_witness",
    "lower_height_witness",
    "raise_height_witness",
    "relative_generator_factorization",
    "perfectness_witness",
    "validate_derivation",
    "build_form",
    "build_partition_ideal",
    "build_pluecker",
    "substitute_linear",
    "span_membership",
    "stabilizer_check",
    "congruence_membership",
    "run",
];

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Functorial,
    FormulaM,
    Commutators,
    Level,
    Stabilizer,
    All,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
    pub millis: u128,
}

impl CheckResult {
    fn to_json(&self) -> Json {
        json!({
            "criterion": self.criterion,
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "detail": self.detail,
        })
    }
}

/// Shared state of a suite run.
pub(crate) struct Ctx {
    pub rng: ChaCha8Rng,
    pub hit: BTreeSet<&'static str>,
    pub checks: Vec<CheckResult>,
}

impl Ctx {
    pub fn cover(&mut self, ops: &[&'static str]) {
        self.hit.extend(ops.iter().copied());
    }

    /// Runs `f`, which returns (cases, first failure), and records it.
    pub fn check(
        &mut self,
        criterion: u8,
        name: &str,
        f: impl FnOnce(&mut Ctx) -> (usize, Option<String>),
    ) {
        let start = Instant::now();
        let (cases, failure) = f(self);
        self.checks.push(CheckResult {
            criterion,
            name: name.to_string(),
            passed: failure.is_none(),
            cases,
            detail: failure.unwrap_or_else(|| "ok".into()),
            millis: start.elapsed().as_millis(),
        });
    }
}

pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub covered: BTreeSet<&'static str>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    /// Checks backing one acceptance criterion.
    pub fn criterion(&self, k: u8) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(move |c| c.criterion == k)
    }

    /// Deterministic summary; timings are left out so that equal seeds give
    /// identical output.
    pub fn to_json(&self) -> Json {
        json!({
            "suite": format!("{:?}", self.suite).to_lowercase(),
            "seed": self.seed,
            "checks": self.checks.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
            "covered": self.covered.iter().collect::<Vec<_>>(),
            "failures": self.failures(),
        })
    }

    pub fn render(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|c| c.name.chars().count())
            .max()
            .unwrap_or(0);
        let mut lines: Vec<String> = self
            .checks
            .iter()
            .map(|c| {
                let status = if c.passed { "PASS" } else { "FAIL" };
                format!(
                    "[{:>2}] {status}  {:<width$}  {:>6} cases  {}",
                    c.criterion, c.name, c.cases, c.detail
                )
            })
            .collect();
        lines.push(format!(
            "{} checks, {} failures (seed {})",
            self.checks.len(),
            self.failures(),
            self.seed
        ));
        lines.join("\n")
    }
}

/// Runs the checks for one acceptance criterion.
pub(crate) fn run_criterion(ctx: &mut Ctx, k: u8) {
    match k {
        1 => algebra::functoriality(ctx),
        2 => algebra::formula_m(ctx),
        3 => algebra::commutators(ctx),
        4 => level::witnesses(ctx),
        5 => level::zfactor(ctx),
        6 => level::compute(ctx),
        7 => stab::stabilizer(ctx),
        8 => stab::congruence(ctx),
        9 => level::perfect(ctx),
        10 => algebra::group_identities(ctx),
        _ => {}
    }
}

/// The checks backing acceptance criterion `k` (1–10), run on their own.
pub fn check_criterion(k: u8, seed: u64) -> Vec<CheckResult> {
    let mut ctx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(seed),
        hit: BTreeSet::new(),
        checks: Vec::new(),
    };
    run_criterion(&mut ctx, k);
    ctx.checks
}

pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let criteria: &[u8] = match suite {
        Suite::Functorial => &[1],
        Suite::FormulaM => &[2],
        Suite::Commutators => &[3, 10],
        Suite::Level => &[4, 5, 6, 9],
        Suite::Stabilizer => &[7, 8],
        Suite::All => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10],
    };
    let mut ctx = Ctx {
        rng: ChaCha8Rng::seed_from_u64(seed),
        hit: BTreeSet::new(),
        checks: Vec::new(),
    };
    for &k in criteria {
        run_criterion(&mut ctx, k);
    }
    if suite == Suite::All {
        ctx.check(0, "cli round trip", |c| {
            c.cover(&["run"]);
            let argv = [
                "extpow",
                "commutator",
                "--ring",
                "poly",
                "--n",
                "6",
                "--m",
                "3",
            ];
            let rest = ["--I", "1,3,5", "--J", "1,2,4", "--i", "4", "--j", "3"];
            let (code, out) = super::run(argv.iter().chain(rest.iter()));
            let ok = code == 0 && out.contains("\"kind\":\"triple\"");
            (1, (!ok).then(|| format!("exit {code}: {out}")))
        });
        let missing: Vec<&str> = COVERAGE
            .iter()
            .copied()
            .filter(|op| !ctx.hit.contains(op))
            .collect();
        ctx.check(0, "coverage manifest", |_| {
            (
                COVERAGE.len(),
                (!missing.is_empty()).then(|| format!("not exercised: {}", missing.join(", "))),
            )
        });
    }
    SuiteReport {
        suite,
        seed,
        checks: ctx.checks,
        covered: ctx.hit,
    }
}
