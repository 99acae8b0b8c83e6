//! Seeded invariant suites for the `twovass` library, with brute-force
//! oracles, instance generators and a greedy counterexample minimizer.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub mod cone;
pub mod decider;
pub mod drift;
pub mod gen;
pub mod oracle;
pub mod shorten;
pub mod slps;

/// Named measurements of one passing case. Names starting with `max_` or
/// `min_` aggregate by maximum or minimum, everything else by sum.
pub type Metrics = Vec<(&'static str, i128)>;

pub trait Suite: Sync {
    type Case: Clone + Send + fmt::Display;

    fn generate(&self, rng: &mut ChaCha8Rng) -> Self::Case;

    fn check(&self, case: &Self::Case) -> Result<Metrics, String>;

    /// Smaller variants of a case, tried in order by the minimizer.
    fn shrink(&self, _case: &Self::Case) -> Vec<Self::Case> {
        Vec::new()
    }

    fn size(&self, case: &Self::Case) -> usize;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    Lemma5,
    Lemma6,
    Thm5,
    Thm6,
    Thm7,
    Thm8,
    Thm9,
    Thm10,
    Lemma11,
    Thm12,
    Decider,
}

impl Target {
    pub const ALL: [Target; 15] = [
        Target::Lemma1,
        Target::Lemma2,
        Target::Lemma3,
        Target::Lemma4,
        Target::Lemma5,
        Target::Lemma6,
        Target::Thm5,
        Target::Thm6,
        Target::Thm7,
        Target::Thm8,
        Target::Thm9,
        Target::Thm10,
        Target::Lemma11,
        Target::Thm12,
        Target::Decider,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Lemma1 => "lemma1",
            Target::Lemma2 => "lemma2",
            Target::Lemma3 => "lemma3",
            Target::Lemma4 => "lemma4",
            Target::Lemma5 => "lemma5",
            Target::Lemma6 => "lemma6",
            Target::Thm5 => "thm5",
            Target::Thm6 => "thm6",
            Target::Thm7 => "thm7",
            Target::Thm8 => "thm8",
            Target::Thm9 => "thm9",
            Target::Thm10 => "thm10",
            Target::Lemma11 => "lemma11",
            Target::Thm12 => "thm12",
            Target::Decider => "decider",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown fuzz target {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub iteration: u64,
    pub message: String,
    pub case: String,
    pub minimized: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub target: Target,
    pub seed: u64,
    pub iterations: u64,
    pub failures: Vec<Failure>,
    pub metrics: BTreeMap<&'static str, i128>,
}

impl Report {
    pub fn passed(&self) -> u64 {
        self.iterations - self.failures.len() as u64
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn metric(&self, name: &str) -> Option<i128> {
        self.metrics.get(name).copied()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fuzz {} seed={}: {}/{} passed", self.target, self.seed, self.passed(), self.iterations)?;
        for (name, value) in &self.metrics {
            writeln!(f, "  {name}={value}")?;
        }
        for fail in &self.failures {
            writeln!(f, "  failure at iteration {}: {}", fail.iteration, fail.message)?;
        }
        Ok(())
    }
}

/// Deterministic generator for one iteration: the seed picks the key and
/// the iteration picks the stream.
pub fn case_rng(seed: u64, iteration: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(iteration);
    rng
}

/// Test-only failure mode: every case of size at least the given value fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Inject(pub Option<usize>);

fn category(message: &str) -> &str {
    message.split(':').next().unwrap_or(message)
}

fn checked<S: Suite>(suite: &S, case: &S::Case, inject: Inject) -> Result<Metrics, String> {
    if let Some(limit) = inject.0 {
        if suite.size(case) >= limit {
            return Err(format!("injected: size {} reaches {limit}", suite.size(case)));
        }
    }
    suite.check(case)
}

/// Greedily replaces the case by the first shrink candidate that still fails
/// in the same way, until none does.
pub fn minimize<S: Suite>(suite: &S, case: &S::Case, message: &str, inject: Inject) -> S::Case {
    let want = category(message).to_string();
    let mut current = case.clone();
    let mut steps = 0;
    'outer: while steps < 1000 {
        for candidate in suite.shrink(&current) {
            if let Err(m) = checked(suite, &candidate, inject) {
                if category(&m) == want {
                    current = candidate;
                    steps += 1;
                    continue 'outer;
                }
            }
        }
        break;
    }
    current
}

pub fn run_suite<S: Suite>(suite: &S, target: Target, iterations: u64, seed: u64, inject: Inject) -> Report {
    let outcomes: Vec<(u64, Result<Metrics, Failure>)> = (0..iterations)
        .into_par_iter()
        .map(|i| {
            let case = suite.generate(&mut case_rng(seed, i));
            let outcome = checked(suite, &case, inject).map_err(|message| {
                let small = minimize(suite, &case, &message, inject);
                Failure { iteration: i, message, case: case.to_string(), minimized: small.to_string() }
            });
            (i, outcome)
        })
        .collect();
    let mut metrics: BTreeMap<&'static str, i128> = BTreeMap::new();
    let mut failures = Vec::new();
    for (_, outcome) in outcomes {
        match outcome {
            Ok(ms) => {
                for (name, value) in ms {
                    metrics
                        .entry(name)
                        .and_modify(|slot| {
                            *slot = if name.starts_with("max_") {
                                (*slot).max(value)
                            } else if name.starts_with("min_") {
                                (*slot).min(value)
                            } else {
                                *slot + value
                            }
                        })
                        .or_insert(value);
                }
            }
            Err(f) => failures.push(f),
        }
    }
    Report { target, seed, iterations, failures, metrics }
}

pub fn run(target: Target, iterations: u64, seed: u64, inject: Inject) -> Report {
    match target {
        Target::Lemma1 | Target::Lemma2 | Target::Lemma3 | Target::Lemma4 => {
            run_suite(&cone::ConeSuite(target), target, iterations, seed, inject)
        }
        Target::Lemma5 => run_suite(&drift::DriftSuite, target, iterations, seed, inject),
        Target::Lemma6 | Target::Thm5 | Target::Thm6 | Target::Thm7 | Target::Thm8 | Target::Thm9 => {
            run_suite(&shorten::ShortenSuite(target), target, iterations, seed, inject)
        }
        Target::Thm10 => run_suite(&slps::BoundSuite, target, iterations, seed, inject),
        Target::Lemma11 => run_suite(&slps::LoopSuite, target, iterations, seed, inject),
        Target::Thm12 => run_suite(&slps::SplitSuite, target, iterations, seed, inject),
        Target::Decider => run_suite(&decider::DeciderSuite, target, iterations, seed, inject),
    }
}
