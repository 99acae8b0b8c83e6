//! Path shortening theorems on generator-built instances.
//!
//! Every generator builds a path satisfying the operation's preconditions by
//! construction, then re-checks them with the exact block geometry of
//! [`Geometry`] and retries on the rare miss. Sampling paths naively almost
//! never clears the climb thresholds.
//!
//! * `cone-cut`: heavily repeated cycles whose cone holds the cut vector,
//!   shifted into the margin.
//! * `strip-climb`: a vertical cycle carries the path up a strip of width `M`.
//! * `steep-up`: a vertical cycle dominates the effect, far from both axes.
//! * `corridor-climb`: one step out of the band below `M`, then a vertical
//!   climb near the axis.
//! * `excursion`: out to the right, up, and back left near the axis.
//! * `drift-left`: an up-left cycle from far right back near the axis.
//! * `vee-path`: down-right cycles to the band below `M`, then up-left
//!   cycles back near the axis.
//! * `vee-climb`: as `vee-path` with a short return and a vertical climb.
//! * `far-loop`: cycles with zero in their cone, ordered to make a peak.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use twovass::instance::{Instance, Model, Query};
use twovass::path::{
    cut_by_vector, shorten_away_both, shorten_away_other, shorten_close_away, shorten_far, shorten_one_visit,
    AwayOther, Shortening, ShorteningFamily,
};
use twovass::{Configuration, PlaneVector, Point, SchemePath, Slps, Vector};

use crate::gen::{nonzero, norm, of_norm, pick, revalidate, scheme_norm, vector, Geometry};
use crate::oracle::{in_cone, set_norm, small_zero_combination};
use crate::{Metrics, Suite, Target};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortenCase {
    pub flavor: &'static str,
    pub scheme: Slps,
    pub path: SchemePath,
    pub source: (i64, i64),
    pub m: u64,
    pub n: u64,
    pub k: u64,
    pub split: usize,
    pub c: PlaneVector,
}

impl ShortenCase {
    fn geometry(&self) -> Geometry {
        Geometry::new(&self.scheme, &self.path, self.source)
    }

    fn configuration(&self) -> Configuration {
        Point::new(self.source.0, self.source.1).expect("generated sources are nonnegative")
    }
}

impl fmt::Display for ShortenCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# flavor={} path={} m={} n={} k={} split={} c={}",
            self.flavor, self.path, self.m, self.n, self.k, self.split, self.c
        )?;
        let t = self.geometry().target();
        let query = match (Point::new(self.source.0, self.source.1), Point::new(t.0 as i64, t.1 as i64)) {
            (Ok(source), Ok(target)) => Some(Query { source, target }),
            _ => None,
        };
        write!(f, "{}", Instance { model: Model::Slps(self.scheme.clone()), query })
    }
}

fn big(x: u64) -> i128 {
    x as i128
}

fn pow(l: i128, e: u32) -> i128 {
    l.pow(e)
}

/// The operation's preconditions, checked from scratch.
pub fn preconditions(target: Target, case: &ShortenCase) -> Result<(), String> {
    let g = case.geometry();
    let l = scheme_norm(&case.scheme) as i128;
    let (m, n, k) = (big(case.m), big(case.n), big(case.k));
    let s = g.source;
    let t = g.target();
    let fail = |what: String| Err(format!("generator: {what}"));
    if l == 0 {
        return fail("scheme norm is zero".into());
    }
    if case.scheme.cycle_count() as u64 > case.k {
        return fail("more cycles than K".into());
    }
    let margin = |w: i128| move |p: (i128, i128)| p.0 >= w && p.1 >= w;
    match target {
        Target::Lemma6 => {
            if norm(&case.c) as i128 > l {
                return fail("‖c‖ > ‖Λ‖".into());
            }
            let bound = 2 * l * l * n;
            let repeated: Vec<PlaneVector> = case
                .scheme
                .cycles()
                .iter()
                .zip(case.path.exponents())
                .filter(|(_, &e)| big(e) >= bound)
                .map(|(c, _)| c.clone())
                .collect();
            let inside = if case.c.is_zero() {
                small_zero_combination(&repeated, (2 * set_norm(&repeated).pow(2)).max(1)).is_some()
            } else {
                in_cone(&repeated, &case.c, 2 * set_norm(&repeated).max(1) * norm(&case.c))
            };
            if !inside {
                return fail(format!("c = {} outside the cone of the repeated cycles", case.c));
            }
            if !g.all_inside(0, g.len, margin(6 * pow(l, 3) * n)) {
                return fail("point inside the margin".into());
            }
        }
        Target::Thm5 => {
            if !g.all_inside(0, g.len, |p| p.0 >= 0 && p.0 < m && p.1 >= m) {
                return fail("point outside the strip".into());
            }
            if t.1 - s.1 <= (k * m + 1) * l {
                return fail("climb too small".into());
            }
        }
        Target::Thm6 => {
            if !g.all_inside(0, g.len, margin(6 * pow(l, 3) * n)) {
                return fail("point inside the margin".into());
            }
            let d = (t.0 - s.0, t.1 - s.1);
            let threshold = (4 * k * n + 2) * pow(l, 4);
            if [-l, l].iter().any(|lam| lam * d.0 + d.1 <= threshold) {
                return fail("effect not steep enough".into());
            }
        }
        Target::Thm7 => {
            if m < 6 * pow(l, 3) * n || k == 0 {
                return fail("M too small or K zero".into());
            }
            if s.1 >= m || t.0 >= m || t.1 < 12 * (k + 1) * (m + 1) * pow(l, 4) {
                return fail("endpoints misplaced".into());
            }
            if !g.all_inside(1, g.len, |p| p.0 >= 0 && p.1 >= m) {
                return fail("point after the source outside N × N≥M".into());
            }
        }
        Target::Thm8 => {
            let split = case.split as u64;
            if m < 8 * pow(l, 4) * n || k == 0 || split >= g.len {
                return fail("M too small, K zero or split out of range".into());
            }
            let mid = g.point(split);
            if s.0 >= m || mid.1 >= m || t.0 >= m || t.1 < 19 * (k + 2) * (m + 1) * pow(l, 6) || t.1 < s.1 {
                return fail("endpoints misplaced".into());
            }
            if !g.all_inside(1, split, |p| p.0 >= m && p.1 >= 0) {
                return fail("first part leaves N≥M × N".into());
            }
            if !g.all_inside(split + 1, g.len, |p| p.0 >= 0 && p.1 >= m) {
                return fail("second part leaves N × N≥M".into());
            }
        }
        Target::Thm9 => {
            if !g.all_inside(0, g.len, margin(6 * pow(l, 3))) {
                return fail("point inside the margin".into());
            }
            let ends = s.0.max(s.1).max(t.0).max(t.1);
            if 2 * g.max_norm() <= 6 * l * l * ends + 15 * pow(l, 5) * k {
                return fail("no peak above the threshold".into());
            }
        }
        other => return fail(format!("{other} is not a shortening target")),
    }
    Ok(())
}

struct Plan {
    segments: Vec<PlaneVector>,
    cycles: Vec<PlaneVector>,
    exps: Vec<u64>,
}

impl Plan {
    fn new(first: PlaneVector) -> Self {
        Plan { segments: vec![first], cycles: Vec::new(), exps: Vec::new() }
    }

    fn then(mut self, cycle: PlaneVector, times: u64, seg: PlaneVector) -> Self {
        self.cycles.push(cycle);
        self.exps.push(times);
        self.segments.push(seg);
        self
    }

    fn scheme(&self) -> Slps {
        Slps::new(self.segments.clone(), self.cycles.clone()).expect("segments outnumber cycles by one")
    }

    fn path(&self) -> SchemePath {
        SchemePath::new(self.exps.clone())
    }

    fn case(&self, flavor: &'static str, source: (i128, i128)) -> Option<ShortenCase> {
        let source = (i64::try_from(source.0).ok()?, i64::try_from(source.1).ok()?);
        if source.0 < 0 || source.1 < 0 {
            return None;
        }
        let scheme = self.scheme();
        Some(ShortenCase {
            flavor,
            k: scheme.cycle_count() as u64,
            scheme,
            path: self.path(),
            source,
            m: 0,
            n: 1,
            split: 0,
            c: Vector::zero(),
        })
    }

    /// Relative geometry from the origin.
    fn shape(&self) -> Geometry {
        Geometry::new(&self.scheme(), &self.path(), (0, 0))
    }
}

fn small_norm(rng: &mut ChaCha8Rng) -> i64 {
    if rng.gen_bool(0.7) {
        1
    } else {
        2
    }
}

fn cone_cut(rng: &mut ChaCha8Rng) -> Option<ShortenCase> {
    let l = small_norm(rng);
    let n = rng.gen_range(1..=2u64);
    let k = rng.gen_range(1..=3);
    let bound = 2 * (l * l) as u64 * n;
    let cycles: Vec<PlaneVector> = (0..k).map(|_| nonzero(rng, l)).collect();
    let heavy: Vec<bool> = (0..k).map(|_| rng.gen_bool(0.6)).collect();
    let repeated: Vec<PlaneVector> = cycles.iter().zip(&heavy).filter(|(_, &h)| h).map(|(c, _)| c.clone()).collect();
    if repeated.is_empty() {
        return None;
    }
    let c = match rng.gen_range(0..5) {
        0 => Vector::zero(),
        1 => nonzero(rng, l),
        2 => {
            let (a, b) = (pick(rng, &repeated), pick(rng, &repeated));
            Vector::new(a.x + b.x, a.y + b.y)
        }
        _ => pick(rng, &repeated),
    };
    if norm(&c) > l {
        return None;
    }
    let mut plan = Plan::new(of_norm(rng, l));
    for (cyc, h) in cycles.into_iter().zip(heavy) {
        let times = if h { bound + rng.gen_range(0..=3) } else { rng.gen_range(0..bound) };
        plan = plan.then(cyc, times, vector(rng, l));
    }
    let (lo, _) = plan.shape().bounds();
    let margin = 6 * (l * l * l) as i128 * n as i128;
    let mut case = plan.case("cone-cut", (margin - lo.0 + rng.gen_range(0..3), margin - lo.1 + rng.gen_range(0..3)))?;
    case.n = n;
    case.c = c;
    Some(case)
}

fn strip_climb(rng: &mut ChaCha8Rng) -> Option<ShortenCase> {
    let l = small_norm(rng);
    let k = rng.gen_range(1..=3usize);
    let m = rng.gen_range(2..=12u64);
    let up = rng.gen_range(0..k);
    let uy = rng.gen_range(1..=l);
    let mut plan = Plan::new(vector(rng, l));
    for i in 0..k {
        let (cyc, times) = if i == up { (Vector::new(0, uy), 0) } else { (vector(rng, l), rng.gen_range(0..=2)) };
        plan = plan.then(cyc, times, vector(rng, l));
    }
    let rise = plan.shape().target().1;
    let need = (k as i128 * m as i128 + 1) * l as i128 - rise;
    plan.exps[up] = (need.max(0) / uy as i128) as u64 + 1 + rng.gen_range(0..=2);
    let (lo, hi) = plan.shape().bounds();
    let room = m as i128 - 1 - (hi.0 - lo.0);
    if room < 0 {
        return None;
    }
    let sx = -lo.0 + rng.gen_range(0..=room);
    let sy = m as i128 - lo.1 + rng.gen_range(0..=2);
    let mut case = plan.case("strip-climb", (sx, sy))?;
    case.m = m;
    Some(case)
}

fn steep_up(rng: &mut ChaCha8Rng) -> Option<ShortenCase> {
    let l = small_norm(rng);
    let n = rng.gen_range(1..=2u64);
    let k = rng.gen_range(1..=3usize);
    let up = rng.gen_range(0..k);
    let mut plan = Plan::new(of_norm(rng, l));
    for i in 0..k {
        let (cyc, times) = if i == up {
            (Vector::new(0, rng.gen_range(1..=l)), 0)
        } else {
            (nonzero(rng, l), rng.gen_range(0..=4 * (l * l) as u64 * n))
        };
        plan = plan.then(cyc, times, vector(rng, l));
    }
    let d = plan.shape().target();
    let li = l as i128;
    let threshold = (4 * k as i128 * n as i128 + 2) * pow(li, 4);
    let uy = plan.cycles[up].y as i128;
    let need = threshold + li * d.0.abs() - d.1;
    plan.exps[up] = (need.max(0) / uy) as u64 + 1 + rng.gen_range(0..=2);
    let (lo, _) = plan.shape().bounds();
    let margin = 6 * pow(li, 3) * n as i128;
    let mut case = plan.case("steep-up", (margin - lo.0 + rng.gen_range(0..3), margin - lo.1 + rng.gen_range(0..3)))?;
    case.n = n;
    Some(case)
}

/// `(l, n, M)` for the band theorems, with `M ≥ factor·l^power·n`.
fn band(rng: &mut ChaCha8Rng, factor: i64, power: u32, l: i64, n: u64) -> u64 {
    (factor * l.pow(power)) as u64 * n + rng.gen_range(0..=4)
}

fn climb_threshold(k: usize, m: u64, l: i64) -> i128 {
    12 * (k as i128 + 1) * (m as i128 + 1) * pow(l as i128, 4)
}

/// Extra cycles, each repeated too rarely to matter for the cone arguments.
fn sprinkle(rng: &mut ChaCha8Rng, plan: Plan, count: usize, l: i64, keep_up: bool) -> Plan {
    let mut plan = plan;
    for _ in 0..count {
        let mut c = vector(rng, l);
        if keep_up {
            c.y = c.y.abs();
        }
        let mut seg = vector(rng, l);
        if keep_up {
            seg.y = seg.y.abs();
        }
        plan = plan.then(c, rng.gen_range(0..=1), seg);
    }
    plan
}

fn corridor_climb(rng: &mut ChaCha8Rng, l: i64, n: u64, m: u64) -> Option<ShortenCase> {
    let extra = rng.gen_range(0..=2usize);
    let k = extra + 1;
    let ay = rng.gen_range(1..=l);
    let first = Vector::new(rng.gen_range(-l..=l), ay);
    let plan = sprinkle(rng, Plan::new(first), extra, l, true);
    let mut plan = plan.then(Vector::new(0, l), 0, Vector::new(rng.gen_range(-l..=l), rng.gen_range(0..=l)));
    let up = plan.exps.len() - 1;
    let rise = plan.shape().target().1;
    let need = climb_threshold(k, m, l) - rise;
    plan.exps[up] = (need.max(0) / l as i128) as u64 + 1 + rng.gen_range(0..=2);
    let (lo, hi) = plan.shape().bounds();
    let t = plan.shape().target();
    let sy = m as i128 - ay as i128 + rng.gen_range(0..ay) as i128;
    let lowest = (m as i128 - sy).max(0);
    if hi.0 - lo.0 >= m as i128 || plan.shape().escape(1, u64::MAX, |p| p.1 >= lowest).is_some() {
        return None;
    }
    let sx = -lo.0 + rng.gen_range(0..=(m as i128 - 1 - (t.0 - lo.0)).max(0));
    let mut case = plan.case("corridor-climb", (sx, sy))?;
    case.m = m;
    case.n = n;
    Some(case)
}

fn excursion(rng: &mut ChaCha8Rng, l: i64, n: u64, m: u64) -> Option<ShortenCase> {
    let first = Vector::new(rng.gen_range(0..=l), rng.gen_range(1..=l));
    let right = Vector::new(rng.gen_range(1..=l), rng.gen_range(0..=l));
    let left = Vector::new(-rng.gen_range(1..=l), rng.gen_range(0..=l));
    let out = ((m as i64 + 12 * l.pow(3) * n as i64) / right.x) as u64 + 1;
    let mut plan = Plan::new(first)
        .then(right, out, Vector::new(0, rng.gen_range(0..=l)))
        .then(Vector::new(0, l), 0, Vector::new(0, rng.gen_range(0..=l)))
        .then(left.clone(), 0, Vector::new(rng.gen_range(-l..=0), rng.gen_range(0..=l)));
    let k = 3;
    let sy = m as i128 - plan.segments[0].y as i128;
    let sx = rng.gen_range(0..m as i128 - l as i128);
    let back = sx + plan.shape().target().0 - (m as i128 - 1);
    plan.exps[2] = (back.max(0) / -left.x as i128) as u64 + 1;
    let rise = plan.shape().target().1;
    plan.exps[1] = ((climb_threshold(k, m, l) - rise).max(0) / l as i128) as u64 + 1 + rng.gen_range(0..=2);
    let mut case = plan.case("excursion", (sx, sy))?;
    case.m = m;
    case.n = n;
    Some(case)
}

fn drift_left(rng: &mut ChaCha8Rng, l: i64, n: u64, m: u64) -> Option<ShortenCase> {
    let v = if rng.gen_bool(0.5) { Vector::new(-l, rng.gen_range(1..=l)) } else { Vector::new(-rng.gen_range(1..=l), l) };
    let ay = rng.gen_range(1..=l);
    let first = Vector::new(rng.gen_range(-l..=l), ay);
    let extra = rng.gen_range(0..=1usize);
    let plan = sprinkle(rng, Plan::new(first), extra, l, true);
    let mut plan = plan.then(v.clone(), 0, Vector::new(rng.gen_range(-l..=l), rng.gen_range(0..=l)));
    let k = extra + 1;
    let at = plan.exps.len() - 1;
    let rise = plan.shape().target().1;
    plan.exps[at] = ((climb_threshold(k, m, l) - rise).max(0) / v.y as i128) as u64 + 1 + rng.gen_range(0..=2);
    let shape = plan.shape();
    let (lo, _) = shape.bounds();
    let tx = rng.gen_range(0..m as i128);
    let sx = tx - shape.target().0;
    let sy = m as i128 - ay as i128 + rng.gen_range(0..ay) as i128;
    if sx + lo.0 < 0 || shape.escape(1, u64::MAX, |p| p.1 >= m as i128 - sy).is_some() {
        return None;
    }
    let mut case = plan.case("drift-left", (sx, sy))?;
    case.m = m;
    case.n = n;
    Some(case)
}

fn away_other_case(rng: &mut ChaCha8Rng) -> Option<ShortenCase> {
    let l = small_norm(rng);
    let n = rng.gen_range(1..=2u64);
    let m = band(rng, 6, 3, l, n);
    match rng.gen_range(0..3) {
        0 => corridor_climb(rng, l, n, m),
        1 => excursion(rng, l, n, m),
        _ => drift_left(rng, l, n, m),
    }
}

fn vee(rng: &mut ChaCha8Rng, climb: bool) -> Option<ShortenCase> {
    let l = if rng.gen_bool(0.75) { 1 } else { 2 };
    let n = if l == 1 { rng.gen_range(1..=2u64) } else { 1 };
    let m = band(rng, 8, 4, l, n);
    let options: &[(i64, i64)] = if l == 1 { &[(1, 1)] } else { &[(1, 1), (1, 2), (2, 1), (2, 2)] };
    let (wx, wy) = pick(rng, options);
    let (vx, vy) = pick(rng, options);
    let (w, v) = (Vector::new(wx, -wy), Vector::new(-vx, vy));
    if wx * vy < wy * vx {
        return None;
    }
    let first = Vector::new(l, rng.gen_range(-l..=0));
    let a1y = rng.gen_range(1..=l);
    let into = Vector::new(rng.gen_range(-l..=0), a1y);
    let mut plan = Plan::new(first).then(w.clone(), 0, into);
    let extra = !climb && rng.gen_bool(0.3);
    if extra {
        let z = Vector::new(rng.gen_range(-l..=l), rng.gen_range(0..=l));
        plan = plan.then(z, rng.gen_range(0..=1), Vector::new(rng.gen_range(-l..=l), rng.gen_range(0..=l)));
    }
    let tail = Vector::new(rng.gen_range(-l..=0), rng.gen_range(0..=l));
    plan = plan.then(v.clone(), 0, tail);
    let vat = plan.exps.len() - 1;
    if climb {
        plan = plan.then(Vector::new(0, l), 0, Vector::new(0, rng.gen_range(0..=l)));
    }
    let k = plan.cycles.len() as i128;
    let high = 19 * (k + 2) * (m as i128 + 1) * pow(l as i128, 6);
    let sy = m as i128 - a1y as i128 + rng.gen_range(0..a1y) as i128;
    // π alone, relative to s
    let pi = |plan: &Plan| {
        let mut p = Plan::new(plan.segments[1].clone());
        for i in 1..plan.cycles.len() {
            p = p.then(plan.cycles[i].clone(), plan.exps[i], plan.segments[i + 1].clone());
        }
        p.shape()
    };
    let sx;
    if climb {
        sx = m as i128 + rng.gen_range(0..=3 * l as i128);
        let d = pi(&plan).target();
        let back = sx + d.0 - (m as i128 - 1);
        plan.exps[vat] = (back.max(0) + vx as i128 - 1) as u64 / vx as u64;
        let rise = sy + pi(&plan).target().1;
        plan.exps[vat + 1] = ((high - rise).max(0) / l as i128) as u64 + 1 + rng.gen_range(0..=2);
    } else {
        let rise = sy + pi(&plan).target().1;
        plan.exps[vat] = ((high - rise).max(0) / vy as i128) as u64 + 1 + rng.gen_range(0..=2);
        let tx = rng.gen_range(0..m as i128);
        sx = tx - pi(&plan).target().0;
    }
    if sx < m as i128 {
        return None;
    }
    let n1 = (sx - m as i128) / wx as i128;
    plan.exps[0] = n1 as u64;
    let r = (sx - first_x(&plan) - n1 * wx as i128, sy - plan.segments[0].y as i128 + n1 * wy as i128);
    let mut case = plan.case(if climb { "vee-climb" } else { "vee-path" }, r)?;
    case.m = m;
    case.n = n;
    case.split = 1 + n1 as usize;
    Some(case)
}

fn first_x(plan: &Plan) -> i128 {
    plan.segments[0].x as i128
}

fn far_loop(rng: &mut ChaCha8Rng) -> Option<ShortenCase> {
    let l = small_norm(rng);
    let li = l as i128;
    let k = rng.gen_range(2..=3usize);
    let mut cycles: Vec<PlaneVector> = (0..k).map(|_| nonzero(rng, l)).collect();
    let combo = small_zero_combination(&cycles, 2 * l * l)?;
    let segments: Vec<PlaneVector> = (0..=k).map(|i| if i == 0 { of_norm(rng, l) } else { vector(rng, l) }).collect();
    cycles.shuffle(rng);
    let weight = |c: &PlaneVector| combo.iter().find(|(v, _)| v == c).map_or(0, |(_, x)| *x as u64);
    let mut order: Vec<usize> = (0..k).collect();
    let margin = 6 * pow(li, 3);
    for _ in 0..6 {
        for scale in [2u64, 4, 8, 16, 32, 64] {
            let times = scale * (l * l) as u64;
            let mut plan = Plan::new(segments[0].clone());
            for (j, &i) in order.iter().enumerate() {
                let c = &cycles[i];
                let extra = if weight(c) == 0 { rng.gen_range(0..=1) } else { weight(c) * times };
                plan = plan.then(c.clone(), extra, segments[j + 1].clone());
            }
            let shape = plan.shape();
            let (lo, _) = shape.bounds();
            let source = (margin - lo.0, margin - lo.1);
            let Some(mut case) = plan.case("far-loop", source) else { continue };
            case.k = k as u64;
            if preconditions(Target::Thm9, &case).is_ok() {
                return Some(case);
            }
        }
        order.shuffle(rng);
    }
    None
}

pub fn generate(target: Target, rng: &mut ChaCha8Rng) -> ShortenCase {
    loop {
        let case = match target {
            Target::Lemma6 => cone_cut(rng),
            Target::Thm5 => strip_climb(rng),
            Target::Thm6 => steep_up(rng),
            Target::Thm7 => away_other_case(rng),
            Target::Thm8 => {
                let climb = rng.gen_bool(0.3);
                vee(rng, climb)
            }
            Target::Thm9 => far_loop(rng),
            other => panic!("{other} is not a shortening target"),
        };
        if let Some(case) = case {
            if preconditions(target, &case).is_ok() {
                return case;
            }
        }
    }
}

fn member_checks(case: &ShortenCase, sh: &Shortening) -> Result<(), String> {
    if sh.scheme != case.scheme || sh.original != case.path || sh.source != case.configuration() {
        return Err("certificate: shortening does not refer to the input path".into());
    }
    revalidate(&case.scheme, &sh.original, &sh.reduced, &sh.delta, case.source)
}

/// Members `1..=count` with deltas `i·γ·direction`, each re-validated.
fn family_checks(
    case: &ShortenCase,
    fam: &ShorteningFamily,
    direction: &PlaneVector,
    count: u64,
    gammas: std::ops::RangeInclusive<u64>,
) -> Result<(), String> {
    if !gammas.contains(&fam.gamma) {
        return Err(format!("family: γ = {} outside {gammas:?}", fam.gamma));
    }
    if fam.len() as u64 != count {
        return Err(format!("family: {} members, expected {count}", fam.len()));
    }
    for i in 1..=count {
        let sh = fam.member(i).ok_or_else(|| format!("family: member {i} missing"))?;
        let want = (i * fam.gamma) as i64;
        if sh.delta != Vector::new(want * direction.x, want * direction.y) {
            return Err(format!("family: member {i} has delta {}", sh.delta));
        }
        member_checks(case, sh)?;
    }
    Ok(())
}

pub struct ShortenSuite(pub Target);

impl Suite for ShortenSuite {
    type Case = ShortenCase;

    fn generate(&self, rng: &mut ChaCha8Rng) -> ShortenCase {
        generate(self.0, rng)
    }

    fn check(&self, case: &ShortenCase) -> Result<Metrics, String> {
        preconditions(self.0, case)?;
        let l = scheme_norm(&case.scheme) as u64;
        let (scheme, path, s) = (&case.scheme, &case.path, &case.configuration());
        let up = Vector::new(0, 1);
        let op = |e: twovass::path::ShortenError| format!("error: {e}");
        let mut metrics: Metrics = vec![("max_length", Geometry::new(scheme, path, case.source).len as i128)];
        match self.0 {
            Target::Lemma6 => {
                let fam = cut_by_vector(scheme, path, s, case.n, &case.c).map_err(op)?;
                family_checks(case, &fam, &case.c, case.n, 1..=2 * l * l)?;
                let bound = 2 * l * l * case.n;
                for sh in &fam.members {
                    let touched: Vec<usize> =
                        (0..path.len()).filter(|&i| sh.reduced.exponents()[i] < path.exponents()[i]).collect();
                    if touched.len() > 3 || touched.iter().any(|&i| path.exponents()[i] < bound) {
                        return Err(format!("cut: deletes from cycles {touched:?}, not ≤ 3 repeated ones"));
                    }
                }
                metrics.push(("zero_vector", case.c.is_zero() as i128));
            }
            Target::Thm5 => {
                let fam = shorten_close_away(scheme, path, s, case.m, case.k).map_err(op)?;
                family_checks(case, &fam, &up, case.m / fam.gamma.max(1), 1..=l)?;
                for sh in &fam.members {
                    for (i, c) in scheme.cycles().iter().enumerate() {
                        if sh.reduced.exponents()[i] < path.exponents()[i] && c.x != 0 {
                            return Err(format!("strip: deleted cycle {c} is not vertical"));
                        }
                    }
                }
            }
            Target::Thm6 => {
                let fam = shorten_away_both(scheme, path, s, case.n, case.k).map_err(op)?;
                family_checks(case, &fam, &up, case.n, 1..=2 * l * l)?;
            }
            Target::Thm7 => match shorten_away_other(scheme, path, s, case.m, case.n, case.k).map_err(op)? {
                AwayOther::CaseI(fam) => {
                    if case.flavor == "drift-left" {
                        return Err("expectation: drift-left instance gave CaseI".into());
                    }
                    family_checks(case, &fam, &up, case.n, 1..=2 * l * l)?;
                    metrics.push(("case_i", 1));
                }
                AwayOther::CaseII { vector, cycle } => {
                    if case.flavor != "drift-left" {
                        return Err(format!("expectation: {} instance gave CaseII", case.flavor));
                    }
                    if scheme.cycles().get(cycle) != Some(&vector) || vector.x >= 0 || vector.y <= 0 {
                        return Err(format!("case ii: {vector} is not an up-left cycle at index {cycle}"));
                    }
                    if path.exponents()[cycle] < 2 * l * l * case.n {
                        return Err(format!("case ii: cycle {cycle} is not repeated often enough"));
                    }
                    let g = case.geometry();
                    let (s1, t2) = (g.source.0, g.target().1);
                    let slack = -(vector.y as i128) * s1 - vector.x as i128 * t2;
                    let limit = 7 * (big(case.k) + 2) * (big(case.m) + 1) * pow(l as i128, 5);
                    if slack >= limit {
                        return Err(format!("case ii: rotateCcw(v)·(s₁,−t₂) = {slack} ≥ {limit}"));
                    }
                    metrics.push(("case_ii", 1));
                }
            },
            Target::Thm8 => {
                let fam = shorten_one_visit(scheme, path, s, case.split, case.m, case.n, case.k).map_err(op)?;
                family_checks(case, &fam, &up, case.n, 0..=2 * l * l * l)?;
                metrics.push(("gamma_zero", (fam.gamma == 0) as i128));
            }
            Target::Thm9 => {
                let sh = shorten_far(scheme, path, s, case.k).map_err(op)?;
                if !sh.delta.is_zero() {
                    return Err(format!("far: delta {} is not zero", sh.delta));
                }
                member_checks(case, &sh)?;
            }
            other => return Err(format!("error: {other} is not a shortening target")),
        }
        metrics.push(("checked", 1));
        Ok(metrics)
    }

    fn shrink(&self, case: &ShortenCase) -> Vec<ShortenCase> {
        let mut out = Vec::new();
        for i in 0..case.path.len() {
            let e = case.path.exponents()[i];
            for smaller in [e / 2, e.saturating_sub(1)] {
                if smaller < e {
                    let mut c = case.clone();
                    c.path.exponents_mut()[i] = smaller;
                    out.push(c);
                }
            }
        }
        out
    }

    fn size(&self, case: &ShortenCase) -> usize {
        case.scheme.len() + case.path.total() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::case_rng;

    #[test]
    fn generators_meet_preconditions() {
        for t in [Target::Lemma6, Target::Thm5, Target::Thm6, Target::Thm7, Target::Thm8, Target::Thm9] {
            for i in 0..8 {
                let case = generate(t, &mut case_rng(11, i));
                assert_eq!(preconditions(t, &case), Ok(()), "{t}: {case}");
            }
        }
    }

    #[test]
    fn short_runs_are_clean() {
        for t in [Target::Lemma6, Target::Thm5, Target::Thm6, Target::Thm7, Target::Thm8, Target::Thm9] {
            let r = crate::run(t, 12, 5, crate::Inject::default());
            assert!(r.ok(), "{r}\n{:?}", r.failures.first().map(|f| &f.minimized));
        }
    }
}
