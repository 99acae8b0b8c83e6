//! Drift lower bound on random scheme paths.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use twovass::path::drift_lower_bound;
use twovass::{PlaneVector, SchemePath, Slps};

use crate::gen::{nonzero, norm, scheme_norm, vector};
use crate::{Metrics, Suite};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DriftCase {
    pub scheme: Slps,
    pub path: SchemePath,
    pub p: PlaneVector,
    pub bound: u64,
    pub strict: bool,
}

impl fmt::Display for DriftCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# path={} p={} bound={} strict={}", self.path, self.p, self.bound, self.strict)?;
        writeln!(f, "slps {}", self.scheme)
    }
}

fn precondition(scheme: &Slps, path: &SchemePath, p: &PlaneVector, bound: u64, strict: bool) -> bool {
    scheme.cycles().iter().zip(path.exponents()).filter(|(_, &n)| n >= bound).all(|(a, _)| {
        let d = p.x * a.x + p.y * a.y;
        d > 0 || (!strict && d == 0)
    })
}

pub struct DriftSuite;

impl Suite for DriftSuite {
    type Case = DriftCase;

    fn generate(&self, rng: &mut ChaCha8Rng) -> DriftCase {
        loop {
            let k = rng.gen_range(1..=3);
            let l = rng.gen_range(1..=2);
            let segments = (0..=k).map(|_| vector(rng, l)).collect();
            let cycles = (0..k).map(|_| nonzero(rng, l)).collect();
            let scheme = Slps::new(segments, cycles).expect("k+1 segments");
            let path = SchemePath::new((0..k).map(|_| rng.gen_range(0..=10)).collect());
            let bound = rng.gen_range(1..=4);
            let strict = rng.gen_bool(0.5);
            for _ in 0..20 {
                let p = nonzero(rng, 2);
                if precondition(&scheme, &path, &p, bound, strict) {
                    return DriftCase { scheme, path, p, bound, strict };
                }
            }
        }
    }

    fn check(&self, case: &DriftCase) -> Result<Metrics, String> {
        let DriftCase { scheme, path, p, bound, strict } = case;
        if !precondition(scheme, path, p, *bound, *strict) {
            return Err("generator: precondition does not hold".into());
        }
        let got = drift_lower_bound(scheme, path, p, *bound, *strict).map_err(|e| format!("error: {e}"))?;
        let k = scheme.cycle_count() as i128;
        let len = k + 1 + path.total() as i128;
        let width = 2 * scheme_norm(scheme) as i128 * norm(p) as i128;
        let slack = k * *bound as i128 + 1;
        let expected = if *strict { len - slack * (width + 1) } else { -slack * width };
        if got != expected {
            return Err(format!("formula: driftLowerBound = {got}, expected {expected}"));
        }
        let mut eff = (0i128, 0i128);
        for s in scheme.segments() {
            eff = (eff.0 + s.x as i128, eff.1 + s.y as i128);
        }
        for (c, &n) in scheme.cycles().iter().zip(path.exponents()) {
            eff = (eff.0 + n as i128 * c.x as i128, eff.1 + n as i128 * c.y as i128);
        }
        let drift = p.x as i128 * eff.0 + p.y as i128 * eff.1;
        if drift < got {
            return Err(format!("bound: p·effect = {drift} < {got}"));
        }
        Ok(vec![("min_slack", drift - got), ("strict", *strict as i128)])
    }

    fn shrink(&self, case: &DriftCase) -> Vec<DriftCase> {
        let mut out = Vec::new();
        for i in 0..case.path.len() {
            if case.path.exponents()[i] > 0 {
                let mut c = case.clone();
                c.path.exponents_mut()[i] -= 1;
                out.push(c);
            }
        }
        out
    }

    fn size(&self, case: &DriftCase) -> usize {
        case.path.total() as usize + case.scheme.len()
    }
}
