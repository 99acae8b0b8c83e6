use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::cone::{cone_contains, VectorSet};
use crate::error::Error;
use crate::scheme::{Lps, SchemePath, Slps};
use crate::vector::Vector;
use crate::{Configuration, PlaneVector};

use super::split_lps;

/// Limits on explicit search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_states: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_states: 4_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReachError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("search budget of {0} states exhausted")]
    Budget(u64),
    #[error("internal defect: {0}")]
    Defect(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessResult {
    pub reachable: bool,
    pub member: Option<usize>,
    pub exponents: Option<SchemePath>,
    pub max_norm: Option<u64>,
    /// The norm cap the search ran under.
    pub cap: u128,
    pub explored: u64,
}

impl fmt::Display for WitnessResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |o: Option<String>| o.unwrap_or_else(|| "-".into());
        write!(
            f,
            "result: reachable={} member={} exponents={} maxnorm={}",
            self.reachable,
            opt(self.member.map(|m| m.to_string())),
            opt(self.exponents.as_ref().map(|e| e.to_string())),
            opt(self.max_norm.map(|n| n.to_string())),
        )
    }
}

/// `⌈2914.5·K·‖Λ‖¹⁵⌉`, zero for degenerate schemes.
pub fn norm_bound(scheme: &Slps) -> Result<u128, Error> {
    let k = scheme.cycle_count() as u128;
    let l = scheme.norm()? as u128;
    if k == 0 || l == 0 {
        return Ok(0);
    }
    let doubled = (0..15).try_fold(5829u128.checked_mul(k).ok_or(Error::Overflow)?, |acc, _| {
        acc.checked_mul(l).ok_or(Error::Overflow)
    })?;
    Ok(doubled.div_ceil(2))
}

/// Integer lattice spanned by finitely many plane vectors.
#[derive(Debug, Clone, Default)]
struct Lattice {
    pivot: Option<(i128, i128)>,
    vertical: i128,
}

impl Lattice {
    fn add(&mut self, v: &PlaneVector) {
        let (x, y) = (v.x as i128, v.y as i128);
        match self.pivot {
            Some((px, py)) if x != 0 => {
                let e = px.extended_gcd(&x);
                let g = e.gcd;
                self.pivot = Some((g, e.x * py + e.y * y));
                let w = (x / g) * py - (px / g) * y;
                self.vertical = self.vertical.gcd(&w);
            }
            None if x != 0 => self.pivot = Some((x, y)),
            _ => self.vertical = self.vertical.gcd(&y),
        }
    }

    fn contains(&self, v: &PlaneVector) -> bool {
        let (mut x, mut y) = (v.x as i128, v.y as i128);
        if let Some((px, py)) = self.pivot {
            if x % px != 0 {
                return false;
            }
            let k = x / px;
            x = 0;
            y -= k * py;
        }
        x == 0 && if self.vertical == 0 { y == 0 } else { y % self.vertical == 0 }
    }
}

/// What remains achievable after reading segment `i`.
struct Tail {
    letters: PlaneVector,
    cone: VectorSet,
    lattice: Lattice,
}

impl Tail {
    fn admits(&self, rest: &PlaneVector) -> Result<bool, Error> {
        if rest.is_zero() {
            return Ok(true);
        }
        if self.cone.is_empty() || !self.lattice.contains(rest) {
            return Ok(false);
        }
        cone_contains(&self.cone, rest)
    }
}

#[derive(Clone, Copy)]
struct Node {
    segment: u32,
    x: i64,
    y: i64,
    parent: u32,
    via_cycle: bool,
}

/// Breadth-first search for a shortest admissible path of `scheme` from
/// `0` to `0` whose points have coordinates at most `cap`.
pub(crate) fn zero_search(scheme: &Slps, cap: u128, budget: &Budget) -> Result<(Option<SchemePath>, u64), ReachError> {
    let k = scheme.cycle_count();
    let segs = scheme.segments();
    let cycles = scheme.cycles();
    let cap = cap.min(i64::MAX as u128) as i64;

    let mut tails = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let mut letters = Vector::zero();
        for s in &segs[i + 1..] {
            letters = letters.checked_add(s)?;
        }
        let mut lattice = Lattice::default();
        cycles[i..].iter().for_each(|c| lattice.add(c));
        tails.push(Tail { letters, cone: VectorSet::new(cycles[i..].iter().cloned()).without_zero(), lattice });
    }
    let viable = |i: usize, x: i64, y: i64| -> Result<bool, Error> {
        if x < 0 || y < 0 || x > cap || y > cap {
            return Ok(false);
        }
        let rest = Vector::new(-x, -y).checked_sub(&tails[i].letters)?;
        tails[i].admits(&rest)
    };

    let mut nodes: Vec<Node> = Vec::new();
    let mut seen: HashSet<(u32, i64, i64)> = HashSet::new();
    let mut queue = VecDeque::new();
    let start = &segs[0];
    if viable(0, start.x, start.y)? {
        nodes.push(Node { segment: 0, x: start.x, y: start.y, parent: u32::MAX, via_cycle: false });
        seen.insert((0, start.x, start.y));
        queue.push_back(0usize);
    }
    while let Some(at) = queue.pop_front() {
        let node = nodes[at];
        let i = node.segment as usize;
        if i == k && node.x == 0 && node.y == 0 {
            let mut exps = vec![0u64; k];
            let mut cur = at;
            while nodes[cur].parent != u32::MAX {
                if nodes[cur].via_cycle {
                    exps[nodes[cur].segment as usize] += 1;
                }
                cur = nodes[cur].parent as usize;
            }
            return Ok((Some(SchemePath::new(exps)), nodes.len() as u64));
        }
        if i == k {
            continue;
        }
        for (step, next, via_cycle) in [(&cycles[i], i, true), (&segs[i + 1], i + 1, false)] {
            let x = node.x.checked_add(step.x).ok_or(Error::Overflow)?;
            let y = node.y.checked_add(step.y).ok_or(Error::Overflow)?;
            if !viable(next, x, y)? || !seen.insert((next as u32, x, y)) {
                continue;
            }
            if nodes.len() as u64 >= budget.max_states {
                return Err(ReachError::Budget(budget.max_states));
            }
            nodes.push(Node { segment: next as u32, x, y, parent: at as u32, via_cycle });
            queue.push_back(nodes.len() - 1);
        }
    }
    Ok((None, nodes.len() as u64))
}

/// A shortest admissible path from `0` to `0`, searched under the cap
/// [`norm_bound`].
pub fn shortest_zero_witness(scheme: &Slps) -> Result<Option<SchemePath>, ReachError> {
    Ok(zero_search(scheme, norm_bound(scheme)?, &Budget::default())?.0)
}

/// `(s) [0]* α₀ β₁* … αK [0]* (−t)`.
pub(crate) fn wrapped(scheme: &Slps, s: &Configuration, t: &Configuration) -> Result<Slps, Error> {
    let mut segments = vec![s.to_vector()];
    segments.extend(scheme.segments().iter().cloned());
    segments.push(t.to_vector().checked_neg()?);
    let mut cycles = vec![Vector::zero()];
    cycles.extend(scheme.cycles().iter().cloned());
    cycles.push(Vector::zero());
    Slps::new(segments, cycles)
}

pub fn slps_reach(scheme: &Slps, s: &Configuration, t: &Configuration) -> Result<WitnessResult, ReachError> {
    slps_reach_with(scheme, s, t, &Budget::default())
}

/// Decides `s → t` under `scheme`. Unreachable answers are unconditional:
/// every shortest witness stays within the cap searched.
pub fn slps_reach_with(
    scheme: &Slps,
    s: &Configuration,
    t: &Configuration,
    budget: &Budget,
) -> Result<WitnessResult, ReachError> {
    let k = scheme.cycle_count();
    if scheme.norm()? == 0 {
        let reachable = s == t;
        return Ok(WitnessResult {
            reachable,
            member: reachable.then_some(0),
            exponents: reachable.then(|| SchemePath::new(vec![0; k])),
            max_norm: reachable.then(|| s.norm() as u64),
            cap: 0,
            explored: 0,
        });
    }
    let outer = wrapped(scheme, s, t)?;
    let cap = norm_bound(&outer)?;
    let (found, explored) = zero_search(&outer, cap, budget)?;
    let Some(path) = found else {
        return Ok(WitnessResult { reachable: false, member: None, exponents: None, max_norm: None, cap, explored });
    };
    let exponents = SchemePath::new(path.exponents()[1..=k].to_vec());
    let run = scheme.instantiate(&exponents)?.run(s)?;
    if !run.admissible || run.target() != &t.to_vector() {
        return Err(ReachError::Defect("witness failed re-validation".into()));
    }
    Ok(WitnessResult {
        reachable: true,
        member: Some(0),
        exponents: Some(exponents),
        max_norm: Some(run.max_norm()? as u64),
        cap,
        explored,
    })
}

/// Decides `s → t` under an LPS through its split into simple schemes; the
/// witness names the member and a path of that member.
pub fn lps_reach(lps: &Lps, s: &Configuration, t: &Configuration, budget: &Budget) -> Result<WitnessResult, ReachError> {
    let family = split_lps(lps)?;
    let mut explored = 0;
    let mut cap = 0;
    for (i, member) in family.members.iter().enumerate() {
        let mut r = slps_reach_with(&member.scheme, s, t, budget)?;
        explored += r.explored;
        cap = cap.max(r.cap);
        if r.reachable {
            r.member = Some(i);
            r.explored = explored;
            r.cap = cap;
            return Ok(r);
        }
    }
    Ok(WitnessResult { reachable: false, member: None, exponents: None, max_norm: None, cap, explored })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Point;

    fn v(x: i64, y: i64) -> PlaneVector {
        Vector::new(x, y)
    }

    fn at(x: i64, y: i64) -> Configuration {
        Point::new(x, y).unwrap()
    }

    #[test]
    fn norm_bound_examples() {
        let two = Slps::new(vec![v(0, 0); 3], vec![v(0, 1), v(1, 0)]).unwrap();
        assert_eq!(norm_bound(&two).unwrap(), 5829);
        let none = Slps::new(vec![v(3, 0)], vec![]).unwrap();
        assert_eq!(norm_bound(&none).unwrap(), 0);
        let big = Slps::single(v(0, 0), v(2, 0), v(0, 0));
        assert_eq!(norm_bound(&big).unwrap(), 95_502_336);
    }

    #[test]
    fn lattice_membership() {
        let mut l = Lattice::default();
        l.add(&v(2, 0));
        l.add(&v(0, 2));
        assert!(l.contains(&v(4, -2)));
        assert!(!l.contains(&v(1, 0)));
        l.add(&v(1, 1));
        assert!(l.contains(&v(3, 1)));
        assert!(!l.contains(&v(1, 0)));
    }

    #[test]
    fn reach_examples() {
        let up = Slps::single(v(0, 0), v(0, 1), v(0, 0));
        let r = slps_reach(&up, &at(0, 0), &at(0, 3)).unwrap();
        assert!(r.reachable);
        assert_eq!(r.exponents, Some(SchemePath::new(vec![3])));

        let r = slps_reach(&up, &at(0, 0), &at(1, 0)).unwrap();
        assert!(!r.reachable);

        let s = Slps::single(v(1, -2), v(0, 1), v(-1, 1));
        let r = slps_reach(&s, &at(0, 2), &at(0, 4)).unwrap();
        assert_eq!(r.exponents, Some(SchemePath::new(vec![3])));
        assert_eq!(r.to_string(), "result: reachable=true member=0 exponents=3 maxnorm=4");
    }

    #[test]
    fn zero_witness_examples() {
        let up = Slps::single(v(0, 0), v(0, 1), v(0, 0));
        assert_eq!(shortest_zero_witness(&up).unwrap(), Some(SchemePath::new(vec![0])));
        let pair = Slps::single(v(0, 1), v(0, 0), v(0, -1));
        assert_eq!(shortest_zero_witness(&pair).unwrap(), Some(SchemePath::new(vec![0])));
        let s = Slps::new(vec![v(0, 2), v(0, 0), v(0, 0)], vec![v(1, -1), v(-1, 0)]).unwrap();
        assert_eq!(shortest_zero_witness(&s).unwrap(), Some(SchemePath::new(vec![2, 2])));
    }

    #[test]
    fn degenerate_scheme() {
        let z = Slps::single(v(0, 0), v(0, 0), v(0, 0));
        assert!(slps_reach(&z, &at(2, 2), &at(2, 2)).unwrap().reachable);
        assert!(!slps_reach(&z, &at(2, 2), &at(2, 3)).unwrap().reachable);
    }
}
