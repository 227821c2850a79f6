//! Acceptance suites: randomized and exhaustive cross-checks of the kernel
//! against independent oracles.
//!
//! Every suite draws from a ChaCha stream seeded by the run seed and the
//! suite number, aggregates its checks by name, and produces a [`Report`]
//! whose canonical JSON depends only on the seed and the factor settings.

mod coalgebra;
mod day;
mod galois;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::FactorConfig;
use crate::interchange::Report;
use crate::report::{Check, CheckReport, Status};

pub const DEFAULT_SEED: u64 = 0x5eed;

pub const TITLES: [&str; 9] = [
    "coalgebra and morphism axioms",
    "generated subcoalgebras against enumeration",
    "étale part and natural retraction",
    "group-likes and the k^δ ⊣ gp adjunction",
    "Hensel lifting witness",
    "Galois adjunction",
    "Day convolution",
    "closures and separation",
    "determinism",
];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub checks: CheckReport,
    pub data: Value,
}

impl Outcome {
    pub fn title(&self) -> &'static str {
        TITLES[self.id as usize - 1]
    }

    pub fn passed(&self) -> bool {
        self.checks.all_passed()
    }

    pub fn report(&self, seed: u64) -> Report {
        let data = json!({ "suite": self.id, "title": self.title(), "results": self.data });
        Report::new("suite", self.checks.clone(), data).with_seed(seed)
    }

    /// One line: `suite N (title): PASS|FAIL, p passed, f failed`.
    pub fn summary(&self) -> String {
        format!(
            "suite {} ({}): {}, {} checks passed, {} failed, {} skipped",
            self.id,
            self.title(),
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.count(Status::Passed),
            self.checks.count(Status::Failed),
            self.checks.count(Status::Skipped),
        )
    }
}

/// Runs suite `id` (1 to 9). Suite 9 reruns 1 to 8 twice.
pub fn run(id: u8, seed: u64, cfg: &FactorConfig) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(id) << 56));
    let (checks, data) = match id {
        1 => coalgebra::axioms(&mut rng),
        2 => coalgebra::generated(&mut rng),
        3 => coalgebra::etale(&mut rng, cfg),
        4 => coalgebra::group_likes(&mut rng, cfg),
        5 => coalgebra::hensel(cfg),
        6 => galois::adjunction(&mut rng, cfg),
        7 => day::convolution(&mut rng),
        8 => day::closures(&mut rng),
        9 => {
            let first = (1..=8).map(|i| run(i, seed, cfg)).collect::<Result<Vec<_>>>()?;
            return determinism(&first, seed, cfg);
        }
        _ => return Err(Error::Invalid(format!("no suite {id}; suites are numbered 1 to 9"))),
    };
    Ok(Outcome { id, checks, data })
}

/// Reruns each suite in `first` with the same seed and compares canonical
/// reports byte for byte.
pub fn determinism(first: &[Outcome], seed: u64, cfg: &FactorConfig) -> Result<Outcome> {
    let mut t = Tally::default();
    let mut sizes = serde_json::Map::new();
    for o in first {
        let before = o.report(seed).to_canonical();
        let after = run(o.id, seed, cfg)?.report(seed).to_canonical();
        t.record("identical reports on rerun", before == after, || {
            let line = before.lines().zip(after.lines()).position(|(a, b)| a != b).unwrap_or(0);
            format!("suite {} differs at line {}", o.id, line + 1)
        });
        sizes.insert(format!("suite {}", o.id), json!(before.len()));
    }
    Ok(Outcome { id: 9, checks: t.finish(), data: json!({ "report_bytes": sizes }) })
}

#[derive(Debug, Default)]
struct Entry {
    name: String,
    passed: usize,
    failed: usize,
    skipped: usize,
    first_failure: Option<String>,
    skip_reason: Option<String>,
    note: Option<String>,
}

/// Checks aggregated by name, keeping the first failure of each.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    entries: Vec<Entry>,
}

impl Tally {
    fn entry(&mut self, name: &str) -> &mut Entry {
        let pos = match self.entries.iter().position(|e| e.name == name) {
            Some(p) => p,
            None => {
                self.entries.push(Entry { name: name.to_string(), ..Entry::default() });
                self.entries.len() - 1
            }
        };
        &mut self.entries[pos]
    }

    pub fn record(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let e = self.entry(name);
        if ok {
            e.passed += 1;
        } else {
            e.failed += 1;
            if e.first_failure.is_none() {
                e.first_failure = Some(detail());
            }
        }
    }

    pub fn skip(&mut self, name: &str, reason: &str) {
        let e = self.entry(name);
        e.skipped += 1;
        if e.skip_reason.is_none() {
            e.skip_reason = Some(reason.to_string());
        }
    }

    /// `Some(value)` on success; an error counts as a failure of `name`.
    pub fn ok<T>(&mut self, name: &str, r: Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.record(name, false, || format!("{}: {e}", context()));
                None
            }
        }
    }

    /// Folds a per-instance report into the tally under `prefix/name`.
    pub fn absorb(&mut self, prefix: &str, rep: &CheckReport, context: impl Fn() -> String) {
        for c in &rep.checks {
            let name = format!("{prefix}/{}", c.name);
            match c.status {
                Status::Passed => self.record(&name, true, String::new),
                Status::Failed => {
                    self.record(&name, false, || format!("{}: {}", context(), c.detail.clone().unwrap_or_default()))
                }
                Status::Skipped => self.skip(&name, c.detail.as_deref().unwrap_or("")),
            }
        }
    }

    pub fn at_least(&mut self, name: &str, count: usize, min: usize) {
        self.record(name, count >= min, || format!("{count} < {min}"));
        self.entry(name).note = Some(format!("{count} (minimum {min})"));
    }

    pub fn finish(self) -> CheckReport {
        let checks = self
            .entries
            .into_iter()
            .map(|e| {
                let total = e.passed + e.failed + e.skipped;
                if e.failed > 0 {
                    let first = e.first_failure.unwrap_or_default();
                    Check {
                        name: e.name,
                        status: Status::Failed,
                        detail: Some(format!("{} of {total} failed; first: {first}", e.failed)),
                    }
                } else if e.passed == 0 {
                    let reason = e.skip_reason.unwrap_or_default();
                    Check { name: e.name, status: Status::Skipped, detail: Some(format!("{total} skipped: {reason}")) }
                } else {
                    let detail = if let Some(note) = e.note {
                        note
                    } else if e.skipped > 0 {
                        format!("{} passed, {} skipped: {}", e.passed, e.skipped, e.skip_reason.unwrap_or_default())
                    } else {
                        format!("{} passed", e.passed)
                    };
                    Check { name: e.name, status: Status::Passed, detail: Some(detail) }
                }
            })
            .collect();
        CheckReport { checks }
    }
}
