//! Brute-force reference implementations. Nothing here calls into the
//! procedures it is used to check.

use std::collections::{HashMap, VecDeque};

use twovass::{Lps, PlaneVector, Slps, Vector};

fn cross(a: &PlaneVector, b: &PlaneVector) -> i64 {
    a.x * b.y - a.y * b.x
}

fn dot(a: &PlaneVector, b: &PlaneVector) -> i64 {
    a.x * b.x + a.y * b.y
}

fn norm(v: &PlaneVector) -> i64 {
    v.x.abs().max(v.y.abs())
}

pub fn set_norm(c: &[PlaneVector]) -> i64 {
    c.iter().map(norm).max().unwrap_or(0)
}

fn add_scaled(a: &PlaneVector, la: i64, b: &PlaneVector, lb: i64) -> PlaneVector {
    Vector::new(la * a.x + lb * b.x, la * a.y + lb * b.y)
}

/// Positive integer coefficients, each at most `bound`, over at most three
/// distinct elements of `c`, summing to zero. Exhaustive over two of the
/// coefficients; the third is read off when the partial sum is a negative
/// multiple of the remaining vector.
pub fn small_zero_combination(c: &[PlaneVector], bound: i64) -> Option<Vec<(PlaneVector, i64)>> {
    let n = c.len();
    for a in c {
        if a.x == 0 && a.y == 0 {
            return Some(vec![(a.clone(), 1)]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for x in 1..=bound {
                for y in 1..=bound {
                    if add_scaled(&c[i], x, &c[j], y) == Vector::zero() {
                        return Some(vec![(c[i].clone(), x), (c[j].clone(), y)]);
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let e = &c[k];
                for x in 1..=bound {
                    for y in 1..=bound {
                        let w = add_scaled(&c[i], x, &c[j], y);
                        if cross(&w, e) != 0 || dot(&w, e) >= 0 {
                            continue;
                        }
                        let (num, den) = if e.x != 0 { (-w.x, e.x) } else { (-w.y, e.y) };
                        if num % den == 0 && (1..=bound).contains(&(num / den)) {
                            return Some(vec![(c[i].clone(), x), (c[j].clone(), y), (e.clone(), num / den)]);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Whether a combination with at most two vectors exists within `bound`.
pub fn has_short_zero_combination(c: &[PlaneVector], bound: i64) -> bool {
    small_zero_combination(c, bound).is_some_and(|t| t.len() <= 2)
}

/// `v ≠ 0` is in the cone of `c` iff some `λa + μb` (a, b ∈ c, λ, μ in
/// `0..=bound`, not both zero) is a positive multiple of `v`.
pub fn in_cone(c: &[PlaneVector], v: &PlaneVector, bound: i64) -> bool {
    if v.x == 0 && v.y == 0 {
        return small_zero_combination(c, bound).is_some();
    }
    for (i, a) in c.iter().enumerate() {
        for b in &c[i..] {
            for l in 0..=bound {
                for m in 0..=bound {
                    if l == 0 && m == 0 {
                        continue;
                    }
                    let w = add_scaled(a, l, b, m);
                    if cross(&w, v) == 0 && dot(&w, v) > 0 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Every `p` with `‖p‖ ≤ bound` satisfying `pred`.
pub fn vectors_within(bound: i64, pred: impl Fn(&PlaneVector) -> bool) -> Vec<PlaneVector> {
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let p = Vector::new(x, y);
            if pred(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Length of a shortest admissible word of `scheme` from `0` to `0` whose
/// points have coordinates at most `cap`, by plain letter-level search.
pub fn zero_witness_length(scheme: &Slps, cap: i64, budget: usize) -> Option<Result<usize, ()>> {
    let segs = scheme.segments();
    let cycles = scheme.cycles();
    let k = cycles.len();
    let ok = |p: &PlaneVector| p.x >= 0 && p.y >= 0 && p.x <= cap && p.y <= cap;
    let start = segs[0].clone();
    if !ok(&start) {
        return None;
    }
    let mut dist: HashMap<(usize, PlaneVector), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert((0, start.clone()), 1);
    queue.push_back((0, start));
    while let Some((i, p)) = queue.pop_front() {
        let d = dist[&(i, p.clone())];
        if i == k && p == Vector::zero() {
            return Some(Ok(d));
        }
        if dist.len() > budget {
            return Some(Err(()));
        }
        if i == k {
            continue;
        }
        for (step, j) in [(&cycles[i], i), (&segs[i + 1], i + 1)] {
            let q = Vector::new(p.x + step.x, p.y + step.y);
            if ok(&q) && !dist.contains_key(&(j, q.clone())) {
                dist.insert((j, q.clone()), d + 1);
                queue.push_back((j, q));
            }
        }
    }
    None
}

/// A graph of program positions with letter-labelled weighted edges.
#[derive(Debug, Clone, Default)]
pub struct PositionGraph {
    pub edges: Vec<Vec<(usize, PlaneVector, u64)>>,
    pub finals: Vec<usize>,
}

impl PositionGraph {
    fn node(&mut self) -> usize {
        self.edges.push(Vec::new());
        self.edges.len() - 1
    }

    /// Positions of the LPS word structure: one edge per letter, cycles
    /// close back on their entry, and a free empty move leads into each
    /// cycle's own entry so cycles cannot interleave.
    pub fn of_lps(lps: &Lps) -> Self {
        let mut g = PositionGraph::default();
        let mut cur = g.node();
        let chain = |g: &mut PositionGraph, from: usize, letters: &[PlaneVector], to: Option<usize>| -> usize {
            let mut at = from;
            for (i, l) in letters.iter().enumerate() {
                let next = if i + 1 == letters.len() { to.unwrap_or_else(|| g.node()) } else { g.node() };
                g.edges[at].push((next, l.clone(), 1));
                at = next;
            }
            at
        };
        for (i, alpha) in lps.segments().iter().enumerate() {
            if i > 0 {
                let entry = g.node();
                g.edges[cur].push((entry, Vector::zero(), 0));
                cur = entry;
                let beta = lps.cycles()[i - 1].letters();
                chain(&mut g, cur, beta, Some(cur));
            }
            cur = chain(&mut g, cur, alpha.letters(), None);
        }
        g.finals.push(cur);
        g
    }

    /// Positions of a simple scheme whose segments and cycles stand for
    /// `segment_cost` and `cycle_cost` letters of some origin.
    pub fn of_slps(scheme: &Slps, segment_cost: &[u64], cycle_cost: &[u64]) -> Self {
        let mut g = PositionGraph::default();
        let start = g.node();
        let mut cur = g.node();
        g.edges[start].push((cur, scheme.segments()[0].clone(), segment_cost[0]));
        for (i, beta) in scheme.cycles().iter().enumerate() {
            if !(beta.x == 0 && beta.y == 0) {
                g.edges[cur].push((cur, beta.clone(), cycle_cost[i]));
            }
            let next = g.node();
            g.edges[cur].push((next, scheme.segments()[i + 1].clone(), segment_cost[i + 1]));
            cur = next;
        }
        g.finals.push(cur);
        g
    }

    /// Exact bound on any coordinate reached from `s` within weight `limit`.
    fn reach(&self, s: &PlaneVector, limit: u64) -> Option<usize> {
        let mut ratio = 0;
        for (_, l, w) in self.edges.iter().flatten() {
            let n = l.x.abs().max(l.y.abs()) as u64;
            if *w == 0 && n > 0 {
                return None;
            }
            if *w > 0 {
                ratio = ratio.max(n.div_ceil(*w));
            }
        }
        Some(s.x.max(s.y) as usize + (limit * ratio) as usize + 1)
    }
}

/// Cheapest weights from one source to every point at a final position,
/// over a dense grid reused between sources.
pub struct Searcher<'a> {
    graph: &'a PositionGraph,
    side: usize,
    best: Vec<(u32, u32)>,
    touched: Vec<usize>,
}

const UNSEEN: (u32, u32) = (u32::MAX, u32::MAX);

impl<'a> Searcher<'a> {
    /// A searcher for sources with coordinates at most `source_max`.
    pub fn new(graph: &'a PositionGraph, source_max: i64, limit: u64) -> Option<Self> {
        let side = graph.reach(&Vector::new(source_max, source_max), limit)?;
        let cells = graph.edges.len() * side * side;
        Some(Searcher { graph, side, best: vec![UNSEEN; cells], touched: Vec::new() })
    }

    fn slot(&self, node: usize, x: i64, y: i64) -> usize {
        (node * self.side + x as usize) * self.side + y as usize
    }

    /// `(target, weight, letters)` for every target reachable within `limit`,
    /// with the letter count of one cheapest path. Free empty moves are not
    /// letters.
    pub fn targets(&mut self, s: &PlaneVector, limit: u64) -> HashMap<PlaneVector, (u64, u64)> {
        for i in self.touched.drain(..) {
            self.best[i] = UNSEEN;
        }
        let mut buckets: Vec<Vec<(usize, i64, i64)>> = vec![Vec::new(); limit as usize + 1];
        let start = self.slot(0, s.x, s.y);
        self.best[start] = (0, 0);
        self.touched.push(start);
        buckets[0].push((0, s.x, s.y));
        for cost in 0..=limit as usize {
            while let Some((at, x, y)) = buckets[cost].pop() {
                let (c0, letters) = self.best[self.slot(at, x, y)];
                if c0 as usize != cost {
                    continue;
                }
                for (to, l, w) in &self.graph.edges[at] {
                    let c = cost as u64 + w;
                    let (nx, ny) = (x + l.x, y + l.y);
                    if c > limit || nx < 0 || ny < 0 {
                        continue;
                    }
                    let i = self.slot(*to, nx, ny);
                    if self.best[i].0 as u64 <= c {
                        continue;
                    }
                    if self.best[i] == UNSEEN {
                        self.touched.push(i);
                    }
                    let step = u32::from(*w > 0 || !l.is_zero());
                    self.best[i] = (c as u32, letters + step);
                    buckets[c as usize].push((*to, nx, ny));
                }
            }
        }
        let mut out: HashMap<PlaneVector, (u64, u64)> = HashMap::new();
        for &i in &self.touched {
            let node = i / (self.side * self.side);
            if !self.graph.finals.contains(&node) {
                continue;
            }
            let cell = i % (self.side * self.side);
            let p = Vector::new((cell / self.side) as i64, (cell % self.side) as i64);
            let (c, letters) = self.best[i];
            out.insert(p, (c as u64, letters as u64));
        }
        out
    }
}
