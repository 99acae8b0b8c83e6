//! The shortening procedures for paths near the axes, far from them, and
//! crossing between the two regimes.
//!
//! Every public function measures its thresholds with `‖Λ‖` of the scheme it
//! is given. Internally the procedures recurse into fragments whose own norm
//! may be smaller, so the `*_impl` variants take the norm explicitly.

use crate::cone::{cone_contains, cone_contains_zero, excluding_vector, rotate_ccw, rotate_cw};
use crate::error::Error;
use crate::scheme::{SchemePath, Slps};
use crate::vector::Vector;
use crate::{Configuration, PlaneVector};

use super::cut::cut_with_norm;
use super::fragment::Fragment;
use super::{
    cycles_repeated_at_least, defect, family, precondition, precondition_at, product, up, Cut, Shortening,
    ShortenResult, ShorteningFamily, Walk,
};

/// Outcome of [`shorten_away_other`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AwayOther {
    CaseI(ShorteningFamily),
    /// A cycle `vector` pointing up and left, repeated often in the part of
    /// the path before it returns near the vertical axis; `cycle` is its index.
    CaseII { vector: PlaneVector, cycle: usize },
}

fn count_cycles(walk: &Walk, k: u64) -> ShortenResult<()> {
    if walk.scheme.cycle_count() as u64 > k {
        return Err(precondition(format!("scheme has {} cycles, more than K = {k}", walk.scheme.cycle_count())));
    }
    Ok(())
}

fn wide(x: i64) -> i128 {
    x as i128
}

/// Paths staying in `N<M × N≥M` that climb more than `(KM+1)‖Λ‖` lose a
/// vertical cycle: shortenings by `(0, nγ)` for `n = 1..=⌊M/γ⌋`.
pub fn shorten_close_away(
    scheme: &Slps,
    path: &SchemePath,
    source: &Configuration,
    m: u64,
    k: u64,
) -> ShortenResult<ShorteningFamily> {
    let walk = Walk::new(scheme, path, source)?;
    close_away_impl(&walk, m, k, scheme.norm()?)
}

pub(crate) fn close_away_impl(walk: &Walk, m: u64, k: u64, norm: i64) -> ShortenResult<ShorteningFamily> {
    count_cycles(walk, k)?;
    let mm = m as i128;
    walk.require_all(0, "point outside N<M × N≥M", |p| p.x >= 0 && wide(p.x) < mm && wide(p.y) >= mm)?;
    let rise = wide(walk.target().y) - wide(walk.points[0].y);
    let threshold = product(&[k as i128, mm])?.checked_add(1).ok_or(Error::Overflow)? * wide(norm);
    if rise <= threshold {
        return Err(precondition(format!("vertical rise {rise} does not exceed {threshold}")));
    }
    let chosen = walk
        .scheme
        .cycles()
        .iter()
        .zip(walk.path.exponents())
        .enumerate()
        .filter(|(_, (b, &n))| n >= m && b.x == 0 && b.y > 0)
        .min_by_key(|(i, (b, _))| (b.y, *i))
        .map(|(i, (b, _))| (i, b.y as u64));
    let (cycle, gamma) = chosen.ok_or_else(|| defect("no vertical cycle repeated M times"))?;
    family(walk, gamma, up(), m / gamma, |n| Ok(Cut::single(cycle, n)))
}

/// Paths far from both axes whose effect points steeply up: shortenings by
/// `(0, nγ)` for `n = 1..=N`.
pub fn shorten_away_both(
    scheme: &Slps,
    path: &SchemePath,
    source: &Configuration,
    n_max: u64,
    k: u64,
) -> ShortenResult<ShorteningFamily> {
    let walk = Walk::new(scheme, path, source)?;
    away_both_impl(&walk, n_max, k, scheme.norm()?)
}

pub(crate) fn away_both_impl(walk: &Walk, n_max: u64, k: u64, norm: i64) -> ShortenResult<ShorteningFamily> {
    if norm <= 0 {
        return Err(precondition("scheme norm must be positive"));
    }
    count_cycles(walk, k)?;
    let l = wide(norm);
    let n = n_max as i128;
    let margin = product(&[6, l, l, l, n])?;
    walk.require_all(0, "point inside the margin", |p| wide(p.x) >= margin && wide(p.y) >= margin)?;
    let d = walk.target().checked_sub(&walk.points[0])?;
    let threshold = product(&[4, k as i128, n])?.checked_add(2).ok_or(Error::Overflow)? * product(&[l, l, l, l])?;
    for lambda in [-l, l] {
        let value = lambda * wide(d.x) + wide(d.y);
        if value <= threshold {
            return Err(precondition(format!("({lambda},1)·(t-s) = {value} does not exceed {threshold}")));
        }
    }
    let bound = u64::try_from(product(&[2, l, l, n])?).map_err(|_| Error::Overflow)?;
    let repeated = cycles_repeated_at_least(&walk.scheme, &walk.path, bound)?;
    if repeated.is_empty() || !cone_contains(&repeated, &up())? {
        return Err(defect("(0,1) is not in the cone of the repeated cycles"));
    }
    cut_with_norm(walk, n_max, &up(), norm)
}

/// Paths that leave the horizontal band below `M` for good and come back
/// near the vertical axis high up. Either a family of vertical shortenings,
/// or a cycle pointing up-left that makes the climb cheap.
pub fn shorten_away_other(
    scheme: &Slps,
    path: &SchemePath,
    source: &Configuration,
    m: u64,
    n_max: u64,
    k: u64,
) -> ShortenResult<AwayOther> {
    let walk = Walk::new(scheme, path, source)?;
    away_other_impl(&walk, m, n_max, k, scheme.norm()?)
}

pub(crate) fn away_other_impl(walk: &Walk, m: u64, n_max: u64, k: u64, norm: i64) -> ShortenResult<AwayOther> {
    if k == 0 {
        return Err(precondition("K must be positive"));
    }
    count_cycles(walk, k)?;
    let (l, mm, n, kk) = (wide(norm), m as i128, n_max as i128, k as i128);
    if mm < product(&[6, l, l, l, n])? {
        return Err(precondition("M is smaller than 6‖Λ‖³N"));
    }
    let s = &walk.points[0];
    let t = walk.target();
    if wide(s.y) >= mm {
        return Err(precondition_at("source is not below M", s));
    }
    if wide(t.x) >= mm {
        return Err(precondition_at("target is not left of M", t));
    }
    let l4 = product(&[l, l, l, l])?;
    let high = product(&[12, kk + 1, mm + 1, l4])?;
    if wide(t.y) < high {
        return Err(precondition_at(format!("target is below {high}"), t));
    }
    walk.require_all(1, "point after the source outside N × N≥M", |p| p.x >= 0 && wide(p.y) >= mm)?;

    let len = walk.len();
    let j = (1..=len).find(|&j| wide(walk.points[j].x) < mm).expect("the target is left of M");
    let rise = wide(t.y) - wide(walk.points[j].y);
    if rise > product(&[6, kk + 1, mm + 1, l4])? {
        return climb_after_return(walk, j, m, n_max, norm).map(AwayOther::CaseI);
    }
    if j < 3 {
        return Err(defect("prefix returning near the axis is too short to trim"));
    }
    let trimmed = Fragment::of(walk, 1, j - 1)?;
    let bound = u64::try_from(product(&[2, l, l, n])?).map_err(|_| Error::Overflow)?;
    let repeated = cycles_repeated_at_least(&trimmed.walk.scheme, &trimmed.walk.path, bound)?;
    if !repeated.is_empty() && cone_contains(&repeated, &up())? {
        let fam = cut_with_norm(&trimmed.walk, n_max, &up(), norm)?;
        return lift_family(walk, &trimmed, fam, n_max).map(AwayOther::CaseI);
    }

    let nonzero = repeated.without_zero();
    if nonzero.is_empty() {
        return Err(defect("no nonzero cycle repeated in the trimmed prefix"));
    }
    let p = excluding_vector(&nonzero)?;
    let v = rotate_cw(&p)?;
    if !(v.x < 0 && v.y > 0 && repeated.contains(&v)) {
        return Err(defect(format!("excluding vector {p} does not rotate into an up-left cycle")));
    }
    let slack = rotate_ccw(&v)?.dot(&Vector::new(s.x, -t.y))?;
    let limit = product(&[7, kk + 2, mm + 1, l4, l])?;
    if wide(slack) >= limit {
        return Err(defect(format!("up-left cycle {v} leaves slack {slack} ≥ {limit}")));
    }
    let cycle = trimmed
        .walk
        .scheme
        .cycles()
        .iter()
        .zip(trimmed.walk.path.exponents())
        .position(|(b, &e)| *b == v && e >= bound)
        .expect("v is a repeated cycle");
    Ok(AwayOther::CaseII { vector: v, cycle: trimmed.cycle_map[cycle] })
}

/// After the first return near the axis at point `j`, one segment (a
/// maximal stretch near the axis, or an excursion away from it) must climb
/// enough to be shortened on its own.
fn climb_after_return(walk: &Walk, j: usize, m: u64, n_max: u64, norm: i64) -> ShortenResult<ShorteningFamily> {
    let close = |i: usize| wide(walk.points[i].x) < m as i128;
    let (l, mm) = (wide(norm), m as i128);
    let len = walk.len();
    let mut i = j;
    while i < len {
        let near = close(i + 1);
        let mut end = i + 1;
        if near {
            while end < len && close(end + 1) {
                end += 1;
            }
        } else {
            while !close(end) {
                end += 1;
            }
        }
        let segment = Fragment::of(walk, i, end)?;
        let ki = segment.walk.scheme.cycle_count() as i128;
        let rise = wide(walk.points[end].y) - wide(walk.points[i].y);
        let threshold = (ki * mm + mm + 1) * l + 2 * product(&[l, l, l, l])?;
        if rise > threshold {
            let ki = ki as u64;
            return if near {
                let fam = close_away_impl(&segment.walk, m, ki, norm)?;
                lift_family(walk, &segment, fam, n_max)
            } else {
                if end < i + 3 {
                    return Err(defect("excursion too short to drop its endpoints"));
                }
                let inner = Fragment::of(walk, i + 1, end - 1)?;
                let fam = away_both_impl(&inner.walk, n_max, ki, norm)?;
                lift_family(walk, &inner, fam, n_max)
            };
        }
        i = end;
    }
    Err(defect("no segment after the return climbs enough"))
}

/// Re-expresses the first `count` members of a fragment family on `walk`.
fn lift_family(walk: &Walk, part: &Fragment, fam: ShorteningFamily, count: u64) -> ShortenResult<ShorteningFamily> {
    if (fam.len() as u64) < count {
        return Err(defect(format!("family has {} members, {count} needed", fam.len())));
    }
    let cuts: Vec<Cut> = fam.members.iter().map(|m| part.lift_path(&m.reduced)).collect();
    family(walk, fam.gamma, fam.direction.clone(), count, |n| Ok(cuts[n as usize - 1].clone()))
}

/// A path `ρπ` visiting the band below `M` once, between a part `ρ` right of
/// `M` and a part `π` above `M`: shortenings by `(0, nγ)` with `γ ≤ 2‖Λ‖³`,
/// possibly zero.
pub fn shorten_one_visit(
    scheme: &Slps,
    path: &SchemePath,
    source: &Configuration,
    split: usize,
    m: u64,
    n_max: u64,
    k: u64,
) -> ShortenResult<ShorteningFamily> {
    let walk = Walk::new(scheme, path, source)?;
    one_visit_impl(&walk, split, m, n_max, k, scheme.norm()?)
}

pub(crate) fn one_visit_impl(
    walk: &Walk,
    split: usize,
    m: u64,
    n_max: u64,
    k: u64,
    norm: i64,
) -> ShortenResult<ShorteningFamily> {
    if k == 0 {
        return Err(precondition("K must be positive"));
    }
    count_cycles(walk, k)?;
    let (l, mm, n, kk) = (wide(norm), m as i128, n_max as i128, k as i128);
    if mm < product(&[8, l, l, l, l, n])? {
        return Err(precondition("M is smaller than 8‖Λ‖⁴N"));
    }
    let len = walk.len();
    if split >= len {
        return Err(precondition("split index leaves no second part"));
    }
    let (r, s, t) = (&walk.points[0], &walk.points[split], walk.target());
    if wide(r.x) >= mm {
        return Err(precondition_at("source is not left of M", r));
    }
    if wide(s.y) >= mm {
        return Err(precondition_at("split point is not below M", s));
    }
    if wide(t.x) >= mm {
        return Err(precondition_at("target is not left of M", t));
    }
    let high = product(&[19, kk + 2, mm + 1, l, l, l, l, l, l])?;
    if wide(t.y) < high {
        return Err(precondition_at(format!("target is below {high}"), t));
    }
    if t.y < r.y {
        return Err(precondition_at("target is lower than the source", t));
    }
    if let Some(p) = walk.points[1..=split].iter().find(|p| wide(p.x) < mm || p.y < 0) {
        return Err(precondition_at("point of the first part outside N≥M × N", p));
    }
    walk.require_all(split + 1, "point of the second part outside N × N≥M", |p| p.x >= 0 && wide(p.y) >= mm)?;

    let second = Fragment::of(walk, split, len)?;
    let (v, v_cycle) = match away_other_impl(&second.walk, m, n_max, k, norm)? {
        AwayOther::CaseI(fam) => return lift_family(walk, &second, fam, n_max),
        AwayOther::CaseII { vector, cycle } => (vector, second.cycle_map[cycle]),
    };
    if split == 0 {
        return Err(defect("up-left cycle found without a first part to balance it"));
    }
    let first = Fragment::of(walk, 0, split)?;
    let swapped = first.walk.swapped()?;
    let first_n = n_max.checked_mul(norm as u64).ok_or(Error::Overflow)?;
    let back = (-v.x) as u64;
    let (w, first_cut): (PlaneVector, Box<dyn Fn(u64) -> ShortenResult<Cut>>) =
        match away_other_impl(&swapped, m, first_n, k, norm)? {
            AwayOther::CaseI(fam) => {
                let w = Vector::new(fam.gamma as i64, 0);
                let first = first.clone();
                let cut = move |n: u64| -> ShortenResult<Cut> {
                    let member = fam.member(back * n).ok_or_else(|| defect("swapped family too short"))?;
                    Ok(first.lift_path(&member.reduced))
                };
                (w, Box::new(cut))
            }
            AwayOther::CaseII { vector, cycle } => {
                let c = first.cycle_map[cycle];
                (vector.swapped(), Box::new(move |n: u64| Ok(Cut::single(c, back * n))))
            }
        };
    let gamma = w.x as i128 * v.y as i128 - w.y as i128 * v.x as i128;
    if gamma < 0 || gamma > 2 * l * l * l {
        return Err(defect(format!("matched deletion gives γ = {gamma} outside 0..=2‖Λ‖³")));
    }
    let forward = w.x as u64;
    family(walk, gamma as u64, up(), n_max, |n| Ok(first_cut(n)?.merged(Cut::single(v_cycle, forward * n))))
}

/// Paths far from both axes that wander much further out than their
/// endpoints: a shortening by zero.
pub fn shorten_far(scheme: &Slps, path: &SchemePath, source: &Configuration, k: u64) -> ShortenResult<Shortening> {
    let walk = Walk::new(scheme, path, source)?;
    far_impl(&walk, k, scheme.norm()?)
}

pub(crate) fn far_impl(walk: &Walk, k: u64, norm: i64) -> ShortenResult<Shortening> {
    if norm <= 0 {
        return Err(precondition("scheme norm must be positive"));
    }
    count_cycles(walk, k)?;
    let l = wide(norm);
    let margin = product(&[6, l, l, l])?;
    walk.require_all(0, "point inside the margin", |p| wide(p.x) >= margin && wide(p.y) >= margin)?;
    let ends = wide(walk.points[0].x.max(walk.points[0].y).max(walk.target().x).max(walk.target().y));
    let peak = walk.points.iter().map(|p| wide(p.x.max(p.y))).max().unwrap_or(0);
    // 2‖f‖ > 6‖Λ‖²·‖{s,t}‖ + 15‖Λ‖⁵K, doubled to stay integral
    let threshold = product(&[6, l, l, ends])? + product(&[15, l, l, l, l, l, k as i128])?;
    if 2 * peak <= threshold {
        return Err(precondition(format!("twice the peak norm {} does not exceed {threshold}", 2 * peak)));
    }
    let repeated = cycles_repeated_at_least(&walk.scheme, &walk.path, (2 * norm * norm) as u64)?;
    if repeated.is_empty() || !cone_contains_zero(&repeated)? {
        return Err(defect("zero is not in the cone of the repeated cycles"));
    }
    let mut fam = cut_with_norm(walk, 1, &Vector::zero(), norm)?;
    Ok(fam.members.swap_remove(0))
}
