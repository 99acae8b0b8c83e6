//! Scheme-level suites: the witness norm bound, the loop lemma and the
//! split of linear path schemes into simple ones.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use twovass::slps::{check_loop_lemma, norm_bound, shortest_zero_witness, split_lps};
use twovass::{Lps, PlaneVector, SchemePath, Slps, Vector, Word};

use crate::gen::{norm, scheme_norm, vector, Geometry};
use crate::oracle::{zero_witness_length, PositionGraph, Searcher};
use crate::{Metrics, Suite};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCase {
    pub scheme: Slps,
}

impl fmt::Display for BoundCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "slps {}", self.scheme)
    }
}

/// `⌈2914.5·K·L¹⁵⌉`, written out independently of the library.
pub fn expected_bound(k: u128, l: u128) -> u128 {
    (5829 * k * l.pow(15)).div_ceil(2)
}

pub struct BoundSuite;

impl Suite for BoundSuite {
    type Case = BoundCase;

    /// A loop through the origin: random letters and exponents, closed by
    /// the final segment, kept only if it stays in N².
    fn generate(&self, rng: &mut ChaCha8Rng) -> BoundCase {
        loop {
            let l = rng.gen_range(1..=2);
            let k = rng.gen_range(1..=3);
            let mut segments: Vec<PlaneVector> = (0..k).map(|_| vector(rng, l)).collect();
            let cycles: Vec<PlaneVector> = (0..k).map(|_| vector(rng, l)).collect();
            let exps: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
            let mut sum = (0i64, 0i64);
            for s in &segments {
                sum = (sum.0 + s.x, sum.1 + s.y);
            }
            for (c, &n) in cycles.iter().zip(&exps) {
                sum = (sum.0 + n as i64 * c.x, sum.1 + n as i64 * c.y);
            }
            let last = Vector::new(-sum.0, -sum.1);
            if norm(&last) > l {
                continue;
            }
            segments.push(last);
            let scheme = Slps::new(segments, cycles).expect("k+1 segments");
            let g = Geometry::new(&scheme, &SchemePath::new(exps), (0, 0));
            if g.all_inside(0, g.len, |p| p.0 >= 0 && p.1 >= 0) {
                return BoundCase { scheme };
            }
        }
    }

    fn check(&self, case: &BoundCase) -> Result<Metrics, String> {
        let scheme = &case.scheme;
        let bound = expected_bound(scheme.cycle_count() as u128, scheme_norm(scheme) as u128);
        let got = norm_bound(scheme).map_err(|e| format!("error: {e}"))?;
        if got != bound {
            return Err(format!("bound: normBound = {got}, expected {bound}"));
        }
        let path = shortest_zero_witness(scheme)
            .map_err(|e| format!("error: {e}"))?
            .ok_or("witness: none found although one exists")?;
        let g = Geometry::new(scheme, &path, (0, 0));
        if g.target() != (0, 0) || !g.all_inside(0, g.len, |p| p.0 >= 0 && p.1 >= 0) {
            return Err(format!("witness: {path} is not an admissible loop at the origin"));
        }
        let cap = bound.min(i64::MAX as u128) as i64;
        let oracle = match zero_witness_length(scheme, cap, 2_000_000) {
            Some(Ok(len)) => len as u64,
            Some(Err(())) => return Err("oracle: budget exhausted".into()),
            None => return Err("oracle: no witness under the cap".into()),
        };
        if g.len != oracle {
            return Err(format!("witness: length {} but the word search finds {oracle}", g.len));
        }
        let peak = g.max_norm() as u128;
        if peak > bound {
            return Err(format!("bound: visited norm {peak} exceeds {bound}"));
        }
        let mut metrics = vec![("max_visited_norm", peak as i128), ("max_length", g.len as i128)];
        if bound == 0 {
            metrics.push(("degenerate", 1));
        } else {
            metrics.push(("min_norm_bound", bound as i128));
        }
        Ok(metrics)
    }

    fn shrink(&self, _case: &BoundCase) -> Vec<BoundCase> {
        Vec::new()
    }

    fn size(&self, case: &BoundCase) -> usize {
        case.scheme.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopCase {
    pub word: Vec<Vec<i64>>,
    pub source: Vec<i64>,
    pub m: u64,
}

impl fmt::Display for LoopCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_vec = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        let word: Vec<String> = self.word.iter().map(|l| fmt_vec(l)).collect();
        writeln!(f, "word {}", word.join(";"))?;
        writeln!(f, "source {}", fmt_vec(&self.source))?;
        writeln!(f, "m {}", self.m)
    }
}

/// Whether `letters` stays nonnegative from `source`, letter by letter.
fn admissible(letters: &[Vec<i64>], source: &[i64]) -> bool {
    let mut at = source.to_vec();
    for l in letters {
        for (a, d) in at.iter_mut().zip(l) {
            *a += d;
        }
        if at.iter().any(|&a| a < 0) {
            return false;
        }
    }
    true
}

pub struct LoopSuite;

impl Suite for LoopSuite {
    type Case = LoopCase;

    fn generate(&self, rng: &mut ChaCha8Rng) -> LoopCase {
        let d = rng.gen_range(1..=2);
        let len = rng.gen_range(1..=5);
        let word = (0..len).map(|_| (0..d).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let source = (0..d).map(|_| rng.gen_range(0..=10)).collect();
        LoopCase { word, source, m: rng.gen_range(0..=4) }
    }

    fn check(&self, case: &LoopCase) -> Result<Metrics, String> {
        let d = case.source.len();
        let (a, b) = check_loop_lemma(&case.word, &case.source, case.m, d).map_err(|e| format!("error: {e}"))?;
        if a != b {
            return Err(format!("loop: π^(m+2) admissible = {a}, π(eff π)^m π admissible = {b}"));
        }
        let powered: Vec<Vec<i64>> = (0..case.m + 2).flat_map(|_| case.word.iter().cloned()).collect();
        let mut eff = vec![0; d];
        for l in &case.word {
            for (e, x) in eff.iter_mut().zip(l) {
                *e += x;
            }
        }
        let mut short = case.word.clone();
        short.extend((0..case.m).map(|_| eff.clone()));
        short.extend(case.word.iter().cloned());
        if a != admissible(&powered, &case.source) || b != admissible(&short, &case.source) {
            return Err("oracle: letter-by-letter replay disagrees".into());
        }
        Ok(vec![("admissible", a as i128)])
    }

    fn shrink(&self, case: &LoopCase) -> Vec<LoopCase> {
        let mut out = Vec::new();
        for i in 0..case.word.len() {
            if case.word.len() > 1 {
                let mut c = case.clone();
                c.word.remove(i);
                out.push(c);
            }
        }
        if case.m > 0 {
            out.push(LoopCase { m: case.m - 1, ..case.clone() });
        }
        out
    }

    fn size(&self, case: &LoopCase) -> usize {
        case.word.len() + case.m as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCase {
    pub lps: Lps,
}

impl fmt::Display for SplitCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lps {}", self.lps)
    }
}

pub const SPLIT_SOURCE_MAX: i64 = 8;
pub const SPLIT_LENGTH: u64 = 40;
pub const SPLIT_TARGET_MAX: i64 = 48;

fn lps_size(lps: &Lps) -> usize {
    lps.segments().iter().chain(lps.cycles()).map(Word::len).sum()
}

fn lps_norm(lps: &Lps) -> i64 {
    lps.segments().iter().chain(lps.cycles()).flat_map(|w| w.letters()).map(norm).max().unwrap_or(0)
}

pub struct SplitSuite;

impl Suite for SplitSuite {
    type Case = SplitCase;

    fn generate(&self, rng: &mut ChaCha8Rng) -> SplitCase {
        loop {
            let l = rng.gen_range(1..=2);
            let k = rng.gen_range(0..=3);
            let word = |rng: &mut ChaCha8Rng, lo: usize, hi: usize| {
                Word::new((0..rng.gen_range(lo..=hi)).map(|_| vector(rng, l)).collect())
            };
            let segments: Vec<Word> = (0..=k).map(|_| word(rng, 0, 2)).collect();
            let cycles: Vec<Word> = (0..k).map(|_| word(rng, 1, 2)).collect();
            let lps = Lps::new(segments, cycles).expect("k+1 segments");
            let size = lps_size(&lps);
            if (1..=8).contains(&size) {
                return SplitCase { lps };
            }
        }
    }

    fn check(&self, case: &SplitCase) -> Result<Metrics, String> {
        let lps = &case.lps;
        let size = lps_size(lps) as u64;
        let family = split_lps(lps).map_err(|e| format!("error: {e}"))?;
        let k = lps.cycle_count() as u32;
        if family.members.len() != 3usize.pow(k) {
            return Err(format!("split: {} members for {k} cycles", family.members.len()));
        }
        let norm_limit = 2 * lps_norm(lps) * size as i64;
        for (i, m) in family.members.iter().enumerate() {
            if m.scheme.len() as u64 > 4 * size {
                return Err(format!("size: member {i} has {} letters, more than 4·{size}", m.scheme.len()));
            }
            if scheme_norm(&m.scheme) > norm_limit {
                return Err(format!("size: member {i} has norm {}, more than {norm_limit}", scheme_norm(&m.scheme)));
            }
        }
        let whole = PositionGraph::of_lps(lps);
        let parts: Vec<PositionGraph> = family
            .members
            .iter()
            .map(|m| PositionGraph::of_slps(&m.scheme, &m.segment_cost, &m.cycle_costs(lps)))
            .collect();
        let mut whole_search =
            Searcher::new(&whole, SPLIT_SOURCE_MAX, SPLIT_LENGTH).ok_or("oracle: weightless moving letter")?;
        let mut part_search = parts
            .iter()
            .map(|g| Searcher::new(g, SPLIT_SOURCE_MAX, SPLIT_LENGTH))
            .collect::<Option<Vec<_>>>()
            .ok_or("split: a member letter stands for no origin letters but moves")?;
        let keep = |p: &PlaneVector| p.x <= SPLIT_TARGET_MAX && p.y <= SPLIT_TARGET_MAX;
        let mut pairs = 0;
        for sx in 0..=SPLIT_SOURCE_MAX {
            for sy in 0..=SPLIT_SOURCE_MAX {
                let s = Vector::new(sx, sy);
                let mut expected: HashMap<PlaneVector, u64> = HashMap::new();
                for (p, (cost, _)) in whole_search.targets(&s, SPLIT_LENGTH) {
                    if keep(&p) {
                        expected.insert(p, cost);
                    }
                }
                let mut union: HashMap<PlaneVector, u64> = HashMap::new();
                for search in part_search.iter_mut() {
                    for (p, (cost, letters)) in search.targets(&s, SPLIT_LENGTH) {
                        if cost > letters.max(1) * size {
                            return Err(format!("mapping: {cost} origin letters for {letters} member letters"));
                        }
                        if keep(&p) {
                            let e = union.entry(p).or_insert(cost);
                            *e = (*e).min(cost);
                        }
                    }
                }
                if expected != union {
                    let mut diff: Vec<String> = expected
                        .iter()
                        .filter(|(p, c)| union.get(*p) != Some(*c))
                        .map(|(p, c)| format!("{p}@{c} vs {:?}", union.get(p)))
                        .chain(union.iter().filter(|(p, _)| !expected.contains_key(*p)).map(|(p, c)| format!("extra {p}@{c}")))
                        .collect();
                    diff.sort();
                    diff.truncate(3);
                    return Err(format!("relation: from {s} the members disagree: {}", diff.join(", ")));
                }
                pairs += expected.len();
            }
        }
        Ok(vec![("pairs", pairs as i128), ("max_members", family.members.len() as i128)])
    }

    fn shrink(&self, case: &SplitCase) -> Vec<SplitCase> {
        let lps = &case.lps;
        let mut out = Vec::new();
        let (segs, cycles) = (lps.segments(), lps.cycles());
        for i in 0..cycles.len() {
            let mut s: Vec<Word> = segs[..i].to_vec();
            s.push(segs[i].concat(&segs[i + 1]));
            s.extend(segs[i + 2..].iter().cloned());
            let mut c = cycles.to_vec();
            c.remove(i);
            if let Ok(l) = Lps::new(s, c) {
                if lps_size(&l) > 0 {
                    out.push(SplitCase { lps: l });
                }
            }
        }
        for (i, w) in segs.iter().enumerate() {
            for j in 0..w.len() {
                let mut letters = w.letters().to_vec();
                letters.remove(j);
                let mut s = segs.to_vec();
                s[i] = Word::new(letters);
                if let Ok(l) = Lps::new(s, cycles.to_vec()) {
                    if lps_size(&l) > 0 {
                        out.push(SplitCase { lps: l });
                    }
                }
            }
        }
        out
    }

    fn size(&self, case: &SplitCase) -> usize {
        lps_size(&case.lps)
    }
}
