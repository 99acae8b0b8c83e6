//! Vector-set lemmas against exhaustive enumeration.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use twovass::cone::{
    cone_contains, cone_contains_zero, excluding_vector, is_excluding, is_separating, outermost_pair,
    rotate_ccw, rotate_cw, separating_vector, zero_combination,
};
use twovass::{PlaneVector, Vector, VectorSet};

use crate::gen::{nonzero, norm, vector};
use crate::oracle::{has_short_zero_combination, in_cone, set_norm, small_zero_combination, vectors_within};
use crate::{Metrics, Suite, Target};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeCase {
    pub set: Vec<PlaneVector>,
    pub probes: Vec<PlaneVector>,
}

impl fmt::Display for ConeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "set")?;
        for v in &self.set {
            write!(f, " {v}")?;
        }
        writeln!(f)?;
        write!(f, "probes")?;
        for v in &self.probes {
            write!(f, " {v}")?;
        }
        writeln!(f)
    }
}

pub struct ConeSuite(pub Target);

fn dot(a: &PlaneVector, b: &PlaneVector) -> i64 {
    a.x * b.x + a.y * b.y
}

fn err<E: fmt::Display>(what: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("error: {what} failed: {e}")
}

/// Cramer's rule bounds the pair coefficients needed to reach `v`.
fn cone_bound(c: &[PlaneVector], v: &PlaneVector) -> i64 {
    2 * set_norm(c).max(1) * norm(v).max(1)
}

pub fn generate_case(rng: &mut ChaCha8Rng) -> ConeCase {
    let n = rng.gen_range(1..=4);
    let size = rng.gen_range(1..=6);
    let mut set: Vec<PlaneVector> = Vec::new();
    while set.len() < size {
        let v = if rng.gen_bool(0.03) { Vector::zero() } else { vector(rng, n) };
        if !set.contains(&v) {
            set.push(v);
        }
    }
    let probes = (0..20).map(|_| nonzero(rng, 4)).collect();
    ConeCase { set, probes }
}

fn zero_lemma(c: &[PlaneVector], set: &VectorSet, probes: &[PlaneVector]) -> Result<Metrics, String> {
    let bound = 2 * set_norm(c) * set_norm(c);
    let oracle = small_zero_combination(c, bound.max(1));
    let found = zero_combination(set).map_err(err("zeroCombination"))?;
    let contains = cone_contains_zero(set).map_err(err("coneContainsZero"))?;
    if found.is_some() != contains || contains != oracle.is_some() {
        return Err(format!(
            "disagreement: zeroCombination present={}, coneContainsZero={contains}, oracle={}",
            found.is_some(),
            oracle.is_some()
        ));
    }
    let mut metrics = vec![("zero_in_cone", contains as i128)];
    if let Some(z) = &found {
        let terms = z.terms();
        if terms.is_empty() || terms.len() > 3 {
            return Err(format!("combination: {} terms", terms.len()));
        }
        let mut sum = (0i64, 0i64);
        for (i, (v, k)) in terms.iter().enumerate() {
            if !c.contains(v) || terms[..i].iter().any(|(w, _)| w == v) {
                return Err(format!("combination: term {v} is not a distinct element of C"));
            }
            if !(1..=bound.max(1)).contains(k) {
                return Err(format!("combination: coefficient {k} outside 1..={bound}"));
            }
            sum = (sum.0 + k * v.x, sum.1 + k * v.y);
        }
        if sum != (0, 0) {
            return Err(format!("combination: sums to ({},{})", sum.0, sum.1));
        }
    }
    for v in probes {
        let got = cone_contains(set, v).map_err(err("coneContains"))?;
        if got != in_cone(c, v, cone_bound(c, v)) {
            return Err(format!("disagreement: coneContains(C, {v}) = {got}, oracle says otherwise"));
        }
    }
    let three_only = oracle.as_ref().is_some_and(|t| t.len() == 3) && !has_short_zero_combination(c, bound);
    if three_only {
        metrics.push(("three_term_only", 1));
        let axes = [Vector::new(1, 0), Vector::new(-1, 0), Vector::new(0, 1), Vector::new(0, -1)];
        for v in axes.iter().chain(probes) {
            if !cone_contains(set, v).map_err(err("coneContains"))? {
                return Err(format!("second statement: {v} not in a cone needing three vectors for zero"));
            }
        }
    }
    Ok(metrics)
}

fn outermost_lemma(c: &[PlaneVector], set: &VectorSet, zero: bool) -> Result<Metrics, String> {
    let result = outermost_pair(set);
    let (a, b) = match (zero, result) {
        (true, Err(_)) => return Ok(vec![("rejected", 1)]),
        (true, Ok(_)) => return Err("precondition: outermostPair accepted a cone containing zero".into()),
        (false, Err(e)) => return Err(format!("error: outermostPair failed: {e}")),
        (false, Ok(p)) => p,
    };
    if !c.contains(&a) || !c.contains(&b) {
        return Err(format!("pair: ({a}, {b}) not drawn from C"));
    }
    let (ra, rb) = (rotate_ccw(&a).map_err(err("rotate"))?, rotate_cw(&b).map_err(err("rotate"))?);
    for v in c {
        if dot(&ra, v) < 0 || dot(&rb, v) < 0 {
            return Err(format!("pair: ({a}, {b}) does not bound {v}"));
        }
        let pair = [a.clone(), b.clone()];
        if !in_cone(&pair, v, cone_bound(&pair, v)) {
            return Err(format!("pair: {v} outside the cone of ({a}, {b})"));
        }
    }
    Ok(vec![("checked", 1), ("single_ray", (a == b) as i128)])
}

fn separating_lemma(c: &[PlaneVector], set: &VectorSet, zero: bool) -> Result<Metrics, String> {
    let n = set_norm(c);
    let separates = |p: &PlaneVector| c.iter().all(|v| dot(p, v) > 0);
    let candidates = vectors_within(2 * n, separates);
    if zero != candidates.is_empty() {
        return Err(format!("oracle: {} separating vectors of norm ≤ {} for a cone with zero={zero}", candidates.len(), 2 * n));
    }
    for p in vectors_within(2 * n, |_| true) {
        if is_separating(set, &p).map_err(err("isSeparating"))? != separates(&p) {
            return Err(format!("disagreement: isSeparating at {p}"));
        }
    }
    match (zero, separating_vector(set)) {
        (true, Err(_)) => Ok(vec![("rejected", 1)]),
        (true, Ok(p)) => Err(format!("precondition: separatingVector returned {p} for a cone containing zero")),
        (false, Err(e)) => Err(format!("error: separatingVector failed: {e}")),
        (false, Ok(p)) => {
            if norm(&p) > 2 * n || !separates(&p) {
                return Err(format!("separating: {p} violates ‖p‖ ≤ {} or p·c > 0", 2 * n));
            }
            Ok(vec![("checked", 1)])
        }
    }
}

fn excluding_lemma(c: &[PlaneVector], set: &VectorSet) -> Result<Metrics, String> {
    let n = set_norm(c);
    let up = Vector::new(0, 1);
    let up_inside = in_cone(c, &up, cone_bound(c, &up));
    let pre = !c.iter().any(|v| v.is_zero()) && !up_inside;
    let excludes = |p: &PlaneVector| {
        p.y < 0 && c.iter().all(|v| dot(p, v) >= 0) && (p.x >= 0 || c.contains(&Vector::new(p.y, -p.x)))
    };
    let candidates = vectors_within(n, excludes);
    let expected = !up_inside && c.iter().any(|v| !v.is_zero());
    if expected == candidates.is_empty() {
        return Err(format!("oracle: {} excluding vectors of norm ≤ {n}, (0,1) in cone = {up_inside}", candidates.len()));
    }
    for p in vectors_within(n, |_| true) {
        if is_excluding(set, &p).map_err(err("isExcluding"))? != excludes(&p) {
            return Err(format!("disagreement: isExcluding at {p}"));
        }
    }
    match (pre, excluding_vector(set)) {
        (false, Err(_)) => Ok(vec![("rejected", 1)]),
        (false, Ok(p)) => Err(format!("precondition: excludingVector returned {p} outside its precondition")),
        (true, Err(e)) => Err(format!("error: excludingVector failed: {e}")),
        (true, Ok(p)) => {
            if norm(&p) > n || !excludes(&p) {
                return Err(format!("excluding: {p} violates a postcondition"));
            }
            Ok(vec![("checked", 1)])
        }
    }
}

impl Suite for ConeSuite {
    type Case = ConeCase;

    fn generate(&self, rng: &mut ChaCha8Rng) -> ConeCase {
        generate_case(rng)
    }

    fn check(&self, case: &ConeCase) -> Result<Metrics, String> {
        let c = &case.set;
        let set = VectorSet::new(c.iter().cloned());
        let zero = small_zero_combination(c, (2 * set_norm(c) * set_norm(c)).max(1)).is_some();
        match self.0 {
            Target::Lemma1 => zero_lemma(c, &set, &case.probes),
            Target::Lemma2 => outermost_lemma(c, &set, zero),
            Target::Lemma3 => separating_lemma(c, &set, zero),
            Target::Lemma4 => excluding_lemma(c, &set),
            other => Err(format!("error: {other} is not a cone target")),
        }
    }

    fn shrink(&self, case: &ConeCase) -> Vec<ConeCase> {
        let mut out = Vec::new();
        if !case.probes.is_empty() {
            out.push(ConeCase { set: case.set.clone(), probes: Vec::new() });
        }
        for i in 0..case.set.len() {
            if case.set.len() > 1 {
                let mut set = case.set.clone();
                set.remove(i);
                out.push(ConeCase { set, probes: case.probes.clone() });
            }
        }
        out
    }

    fn size(&self, case: &ConeCase) -> usize {
        case.set.len()
    }
}
