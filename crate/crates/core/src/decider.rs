//! Reachability for 2-VASS by explicit search.
//!
//! General automata only ever get [`VerdictKind::Reachable`] or
//! [`VerdictKind::UnreachableWithinCap`]: no cap here is known to be
//! sufficient, so an exhausted search is reported as exactly that.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::error::Error;
use crate::vass::Vass;
use crate::word::{Run, Word};
use crate::{Configuration, PlaneVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VerdictKind {
    Reachable,
    UnreachableWithinCap,
    Unreachable,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Reachable => "Reachable",
            VerdictKind::UnreachableWithinCap => "UnreachableWithinCap",
            VerdictKind::Unreachable => "Unreachable",
        })
    }
}

impl std::str::FromStr for VerdictKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Reachable" => Ok(VerdictKind::Reachable),
            "UnreachableWithinCap" => Ok(VerdictKind::UnreachableWithinCap),
            "Unreachable" => Ok(VerdictKind::Unreachable),
            other => Err(format!("unknown verdict kind {other}")),
        }
    }
}

/// An accepted word with the state sequence reading it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub word: Word,
    pub states: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub witness: Option<Witness>,
    /// Coordinate cap or length bound, depending on the procedure.
    pub cap: u64,
    pub explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cap {cap} is below the source/target norm {needed}")]
    CapTooSmall { cap: u64, needed: u64 },
    #[error("search budget of {0} states exhausted")]
    Budget(u64),
}

pub const DEFAULT_BUDGET: u64 = 20_000_000;

impl Verdict {
    pub fn length(&self) -> Option<usize> {
        self.witness.as_ref().map(|w| w.word.len())
    }

    /// Re-checks a reachable verdict's witness against the automaton and query.
    pub fn check(&self, vass: &Vass, s: &Configuration, t: &Configuration) -> Result<(), String> {
        match (&self.kind, &self.witness) {
            (VerdictKind::Reachable, Some(w)) => check_witness(vass, s, t, w),
            (VerdictKind::Reachable, None) => Err("reachable verdict without a witness".into()),
            (_, Some(_)) => Err("unreachable verdict carries a witness".into()),
            (_, None) => Ok(()),
        }
    }

    /// `verdict: kind=… cap=… length=… word=… states=…` with state names.
    pub fn render(&self, vass: &Vass) -> String {
        let (length, word, states) = match &self.witness {
            Some(w) => (
                w.word.len().to_string(),
                w.word.to_string(),
                w.states.iter().map(|&q| vass.state_name(q)).collect::<Vec<_>>().join(","),
            ),
            None => ("-".into(), "-".into(), "-".into()),
        };
        format!("verdict: kind={} cap={} length={length} word={word} states={states}", self.kind, self.cap)
    }
}

pub fn check_witness(vass: &Vass, s: &Configuration, t: &Configuration, w: &Witness) -> Result<(), String> {
    if !vass.accepts(w.word.letters(), &w.states) {
        return Err("witness is not accepted by the automaton".into());
    }
    let run = Run::of(w.word.letters(), s).map_err(|e| e.to_string())?;
    if let Some(i) = run.first_violation {
        return Err(format!("witness run leaves N² at point {i}"));
    }
    if run.target() != &t.to_vector() {
        return Err(format!("witness ends at {}, not {}", run.target(), t.to_vector()));
    }
    Ok(())
}

/// `64·(n+1)·(‖A ∪ {s,t}‖+1)⁴`, a heuristic default.
pub fn default_cap(vass: &Vass, s: &Configuration, t: &Configuration) -> Result<u64, Error> {
    let norm = vass.alphabet_norm()?.max(s.norm()).max(t.norm()) as u64;
    let n = vass.state_count() as u64;
    [n + 1, norm + 1, norm + 1, norm + 1, norm + 1]
        .iter()
        .try_fold(64u64, |acc, f| acc.checked_mul(*f))
        .ok_or(Error::Overflow)
}

struct Search<'a> {
    vass: &'a Vass,
    /// (state, x, y) → (parent slot, edge index)
    seen: HashMap<(usize, i64, i64), (usize, usize)>,
    slots: Vec<(usize, i64, i64, usize)>,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(vass: &'a Vass, budget: u64) -> Self {
        Self { vass, seen: HashMap::new(), slots: Vec::new(), budget }
    }

    fn visit(&mut self, key: (usize, i64, i64), parent: usize, edge: usize, depth: usize) -> Result<Option<usize>, DecideError> {
        if self.seen.contains_key(&key) {
            return Ok(None);
        }
        if self.slots.len() as u64 >= self.budget {
            return Err(DecideError::Budget(self.budget));
        }
        self.seen.insert(key, (parent, edge));
        self.slots.push((key.0, key.1, key.2, depth));
        Ok(Some(self.slots.len() - 1))
    }

    fn witness(&self, mut slot: usize) -> Witness {
        let mut letters = Vec::new();
        let mut states = Vec::new();
        loop {
            let (q, x, y, _) = self.slots[slot];
            states.push(q);
            let (parent, edge) = self.seen[&(q, x, y)];
            if parent == usize::MAX {
                break;
            }
            letters.push(self.vass.edges()[edge].letter.clone());
            slot = parent;
        }
        letters.reverse();
        states.reverse();
        Witness { word: Word::new(letters), states }
    }

    /// Breadth-first search; `allowed(x, y, depth)` filters successors.
    fn run(
        &mut self,
        s: &Configuration,
        t: &Configuration,
        allowed: impl Fn(i64, i64, usize) -> bool,
    ) -> Result<Option<Witness>, DecideError> {
        let mut queue = VecDeque::new();
        for &q in self.vass.initial() {
            if let Some(slot) = self.visit((q, *s.x(), *s.y()), usize::MAX, usize::MAX, 0)? {
                queue.push_back(slot);
            }
        }
        while let Some(slot) = queue.pop_front() {
            let (q, x, y, depth) = self.slots[slot];
            if self.vass.accepting().contains(&q) && x == *t.x() && y == *t.y() {
                return Ok(Some(self.witness(slot)));
            }
            for (i, e) in self.vass.edges().iter().enumerate().filter(|(_, e)| e.from == q) {
                let nx = x.checked_add(e.letter.x).ok_or(Error::Overflow)?;
                let ny = y.checked_add(e.letter.y).ok_or(Error::Overflow)?;
                if nx < 0 || ny < 0 || !allowed(nx, ny, depth + 1) {
                    continue;
                }
                if let Some(next) = self.visit((e.to, nx, ny), slot, i, depth + 1)? {
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }
}

fn verdict(found: Option<Witness>, cap: u64, explored: usize) -> Verdict {
    let kind = if found.is_some() { VerdictKind::Reachable } else { VerdictKind::UnreachableWithinCap };
    Verdict { kind, witness: found, cap, explored: explored as u64 }
}

/// Breadth-first search over configurations with both coordinates at most
/// `cap`; a found witness is a shortest one within the cap.
pub fn decide_capped_bfs(vass: &Vass, s: &Configuration, t: &Configuration, cap: u64) -> Result<Verdict, DecideError> {
    decide_capped_bfs_with(vass, s, t, cap, DEFAULT_BUDGET)
}

pub fn decide_capped_bfs_with(
    vass: &Vass,
    s: &Configuration,
    t: &Configuration,
    cap: u64,
    budget: u64,
) -> Result<Verdict, DecideError> {
    let needed = s.norm().max(t.norm()) as u64;
    if cap < needed {
        return Err(DecideError::CapTooSmall { cap, needed });
    }
    let c = cap.min(i64::MAX as u64) as i64;
    let mut search = Search::new(vass, budget);
    let found = search.run(s, t, |x, y, _| x <= c && y <= c)?;
    Ok(verdict(found, cap, search.slots.len()))
}

/// Searches accepted words of length at most `length_bound`.
pub fn decide_bounded_witness(
    vass: &Vass,
    s: &Configuration,
    t: &Configuration,
    length_bound: u64,
) -> Result<Verdict, DecideError> {
    let mut search = Search::new(vass, DEFAULT_BUDGET);
    let found = search.run(s, t, |_, _, depth| depth as u64 <= length_bound)?;
    Ok(verdict(found, length_bound, search.slots.len()))
}

/// A deliberately naive reference for [`decide_capped_bfs`]: it keeps whole
/// word prefixes, replays each from `s` to find its endpoint, and expands
/// layer by layer until a layer reaches `(accepting, t)` or nothing new
/// appears.
pub fn brute_force_oracle(
    vass: &Vass,
    s: &Configuration,
    t: &Configuration,
    cap: u64,
    budget: u64,
) -> Result<Verdict, DecideError> {
    let within = |p: &PlaneVector| p.x >= 0 && p.y >= 0 && p.x as u64 <= cap && p.y as u64 <= cap;
    let mut seen: BTreeSet<(usize, PlaneVector)> = BTreeSet::new();
    let mut layer: Vec<Vec<usize>> = Vec::new();
    let mut initial: Vec<usize> = vass.initial().iter().copied().collect();
    initial.sort();
    let mut explored = 0u64;
    for q in initial {
        if seen.insert((q, s.to_vector())) {
            layer.push(vec![q]);
        }
    }
    // a prefix is stored as [initial state, edge, edge, ...]
    let endpoint = |prefix: &[usize]| -> Result<(usize, PlaneVector), Error> {
        let mut q = prefix[0];
        let mut p = s.to_vector();
        for &e in &prefix[1..] {
            let edge = &vass.edges()[e];
            p = p.checked_add(&edge.letter)?;
            q = edge.to;
        }
        Ok((q, p))
    };
    while !layer.is_empty() {
        explored += layer.len() as u64;
        if explored > budget {
            return Err(DecideError::Budget(budget));
        }
        for prefix in &layer {
            let (q, p) = endpoint(prefix)?;
            if vass.accepting().contains(&q) && p == t.to_vector() {
                let mut states = vec![prefix[0]];
                let mut letters = Vec::new();
                for &e in &prefix[1..] {
                    letters.push(vass.edges()[e].letter.clone());
                    states.push(vass.edges()[e].to);
                }
                let witness = Witness { word: Word::new(letters), states };
                return Ok(Verdict { kind: VerdictKind::Reachable, witness: Some(witness), cap, explored });
            }
        }
        let mut next = Vec::new();
        for prefix in &layer {
            let (q, p) = endpoint(prefix)?;
            for (i, e) in vass.edges().iter().enumerate() {
                if e.from != q {
                    continue;
                }
                let np = p.checked_add(&e.letter)?;
                if within(&np) && seen.insert((e.to, np)) {
                    let mut longer = prefix.clone();
                    longer.push(i);
                    next.push(longer);
                }
            }
        }
        layer = next;
    }
    Ok(Verdict { kind: VerdictKind::UnreachableWithinCap, witness: None, cap, explored })
}
