//! Acceptance gate: one line per criterion, nonzero exit if any fails.
//!
//! Tolerances: exact arithmetic throughout, so every criterion requires
//! zero failed checks; minimum instance counts are checked inside the
//! suites; all nine criteria together must finish within 120 s.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use coalg_kernel::field::FactorConfig;
use coalg_kernel::report::Status;
use coalg_kernel::suite::{self, Outcome, DEFAULT_SEED};

const BUDGET: Duration = Duration::from_secs(120);

fn line(o: &Outcome, took: Duration) -> String {
    let first = o.checks.failures().next().map(|c| format!("; first failure: {}: {}", c.name, c.detail.clone().unwrap_or_default()));
    format!(
        "criterion {} ({}): {} [{} checks passed, {} failed, {} skipped, {:.2} s]{}",
        o.id,
        o.title(),
        if o.passed() { "PASS" } else { "FAIL" },
        o.checks.count(Status::Passed),
        o.checks.count(Status::Failed),
        o.checks.count(Status::Skipped),
        took.as_secs_f64(),
        first.unwrap_or_default()
    )
}

fn main() -> ExitCode {
    let cfg = FactorConfig::default();
    let start = Instant::now();
    let mut outcomes = Vec::new();
    let mut ok = true;
    for id in 1..=8 {
        let t = Instant::now();
        match suite::run(id, DEFAULT_SEED, &cfg) {
            Ok(o) => {
                println!("{}", line(&o, t.elapsed()));
                ok &= o.passed();
                outcomes.push(o);
            }
            Err(e) => {
                println!("criterion {id} ({}): FAIL [error: {e}]", suite::TITLES[id as usize - 1]);
                ok = false;
            }
        }
    }
    let t = Instant::now();
    match suite::determinism(&outcomes, DEFAULT_SEED, &cfg) {
        Ok(o) => {
            println!("{}", line(&o, t.elapsed()));
            ok &= o.passed() && outcomes.len() == 8;
        }
        Err(e) => {
            println!("criterion 9 ({}): FAIL [error: {e}]", suite::TITLES[8]);
            ok = false;
        }
    }
    let total = start.elapsed();
    let in_budget = total <= BUDGET;
    println!(
        "time budget: {} [{:.2} s for all criteria, limit {} s]",
        if in_budget { "PASS" } else { "FAIL" },
        total.as_secs_f64(),
        BUDGET.as_secs()
    );
    if ok && in_budget {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
