//! Capped breadth-first search against the naive prefix-replaying oracle.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use twovass::certificate::{check_verdict, parse_certificates, verdict_certificate};
use twovass::decider::{brute_force_oracle, decide_capped_bfs, VerdictKind};
use twovass::instance::{Instance, Model, Query};
use twovass::{Configuration, Edge, Point, Vass};

use crate::gen::vector;
use crate::{Metrics, Suite};

pub const CAP: u64 = 50;
pub const ORACLE_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeciderCase {
    pub vass: Vass,
    pub source: Configuration,
    pub target: Configuration,
}

impl DeciderCase {
    pub fn instance(&self) -> Instance {
        Instance {
            model: Model::Vass(self.vass.clone()),
            query: Some(Query { source: self.source.clone(), target: self.target.clone() }),
        }
    }
}

impl fmt::Display for DeciderCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.instance())
    }
}

fn point(rng: &mut ChaCha8Rng) -> Configuration {
    Point::new(rng.gen_range(0..=3), rng.gen_range(0..=3)).expect("nonnegative")
}

fn subset(rng: &mut ChaCha8Rng, n: usize) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    out.insert(rng.gen_range(0..n));
    out
}

pub struct DeciderSuite;

impl Suite for DeciderSuite {
    type Case = DeciderCase;

    fn generate(&self, rng: &mut ChaCha8Rng) -> DeciderCase {
        let n = rng.gen_range(1..=4);
        let states = (0..n).map(|i| format!("q{i}")).collect();
        let edges = (0..rng.gen_range(1..=8))
            .map(|_| Edge { from: rng.gen_range(0..n), letter: vector(rng, 2), to: rng.gen_range(0..n) })
            .collect();
        let (init, fin) = (subset(rng, n), subset(rng, n));
        let vass = Vass::new(states, edges, init, fin).expect("states in range");
        DeciderCase { vass, source: point(rng), target: point(rng) }
    }

    fn check(&self, case: &DeciderCase) -> Result<Metrics, String> {
        let (vass, s, t) = (&case.vass, &case.source, &case.target);
        let got = decide_capped_bfs(vass, s, t, CAP).map_err(|e| format!("error: {e}"))?;
        let want = brute_force_oracle(vass, s, t, CAP, ORACLE_BUDGET).map_err(|e| format!("oracle: {e}"))?;
        if got.kind != want.kind || got.length() != want.length() {
            return Err(format!(
                "disagreement: search says {} length {:?}, oracle says {} length {:?}",
                got.kind,
                got.length(),
                want.kind,
                want.length()
            ));
        }
        got.check(vass, s, t).map_err(|e| format!("witness: {e}"))?;
        let text = format!("instance: case.vass\n{}\n", verdict_certificate(&got, vass, "case.vass", false));
        let certs = parse_certificates(&text).map_err(|e| format!("certificate: {e}"))?;
        let cert = certs.last().ok_or("certificate: nothing parsed")?;
        check_verdict(cert, &case.instance()).map_err(|e| format!("certificate: {e}"))?;
        let smaller = decide_capped_bfs(vass, s, t, CAP / 2).map_err(|e| format!("error: {e}"))?;
        if smaller.kind == VerdictKind::Reachable
            && (got.kind != VerdictKind::Reachable || got.length() > smaller.length())
        {
            return Err("monotonicity: a larger cap lost or lengthened the witness".into());
        }
        let reachable = got.kind == VerdictKind::Reachable;
        Ok(vec![
            ("reachable", reachable as i128),
            ("max_length", got.length().unwrap_or(0) as i128),
            ("max_explored", got.explored as i128),
        ])
    }

    fn shrink(&self, case: &DeciderCase) -> Vec<DeciderCase> {
        let vass = &case.vass;
        (0..vass.edges().len())
            .filter_map(|i| {
                let mut edges = vass.edges().to_vec();
                edges.remove(i);
                let v = Vass::new(vass.state_names().to_vec(), edges, vass.initial().clone(), vass.accepting().clone())
                    .ok()?;
                Some(DeciderCase { vass: v, ..case.clone() })
            })
            .collect()
    }

    fn size(&self, case: &DeciderCase) -> usize {
        case.vass.edges().len()
    }
}
