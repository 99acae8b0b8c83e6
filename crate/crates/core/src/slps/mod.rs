//! Linear path schemes reduced to simple ones, and reachability for simple
//! schemes under an explicit cap on visited norms.

mod reach;

use crate::error::{Error, Result};
use crate::scheme::{Lps, SchemePath, Slps};
use crate::vector::Vector;
use crate::word::Word;
use crate::PlaneVector;

pub use reach::{
    lps_reach, norm_bound, shortest_zero_witness, slps_reach, slps_reach_with, Budget, ReachError, WitnessResult,
};

/// How often a cycle of an LPS is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Usage {
    Zero,
    Once,
    Many,
}

/// Replaces every cycle `β` by `β (eff β)* β`. The result accepts exactly
/// the words of the input in which every cycle is taken at least twice,
/// up to replacing inner repetitions by their effect.
pub fn loop_normalize(lps: &Lps) -> Result<Lps> {
    let k = lps.cycle_count();
    let mut segments = Vec::with_capacity(k + 1);
    let mut cycles = Vec::with_capacity(k);
    for (i, alpha) in lps.segments().iter().enumerate() {
        let mut seg = Word::empty();
        if i > 0 {
            seg.extend_from(&lps.cycles()[i - 1]);
        }
        seg.extend_from(alpha);
        if i < k {
            seg.extend_from(&lps.cycles()[i]);
        }
        segments.push(seg);
    }
    for beta in lps.cycles() {
        cycles.push(Word::new(vec![beta.effect()?]));
    }
    Lps::new(segments, cycles)
}

/// `(π^{m+2} admissible from s, π (eff π)^m π admissible from s)` in
/// dimension `d ≤ 4`.
pub fn check_loop_lemma(word: &[Vec<i64>], source: &[i64], m: u64, d: usize) -> Result<(bool, bool)> {
    if !(1..=4).contains(&d) {
        return Err(Error::Precondition(format!("dimension {d} is outside 1..=4")));
    }
    for v in word.iter().map(Vec::len).chain([source.len()]) {
        if v != d {
            return Err(Error::Dimension { expected: d, found: v });
        }
    }
    if source.iter().any(|&c| c < 0) {
        return Err(Error::Precondition("source must be non-negative".into()));
    }
    let mut effect = vec![0i64; d];
    for v in word {
        for (e, c) in effect.iter_mut().zip(v) {
            *e = e.checked_add(*c).ok_or(Error::Overflow)?;
        }
    }
    let walk = |steps: &mut dyn Iterator<Item = &Vec<i64>>| -> Result<bool> {
        let mut p = source.to_vec();
        for v in steps {
            for (x, c) in p.iter_mut().zip(v) {
                *x = x.checked_add(*c).ok_or(Error::Overflow)?;
            }
            if p.iter().any(|&x| x < 0) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let reps = (m + 2) as usize;
    let plain = walk(&mut std::iter::repeat_n(word, reps).flatten())?;
    let middle = std::iter::repeat_n(&effect, m as usize);
    let accelerated = walk(&mut word.iter().chain(middle).chain(word.iter()))?;
    Ok((plain, accelerated))
}

/// The simple schemes produced for one LPS, one per usage profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlpsFamily {
    pub origin: Lps,
    pub members: Vec<SlpsMember>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlpsMember {
    pub profile: Vec<Usage>,
    pub scheme: Slps,
    /// For each cycle of `scheme`, the origin cycle whose effect it carries,
    /// or `None` for `(0,0)` padding.
    pub carries: Vec<Option<usize>>,
    /// Letters of the origin each segment of `scheme` stands for (0 for padding).
    pub segment_cost: Vec<u64>,
}

impl SlpsMember {
    /// The origin path represented by a path of this member.
    pub fn lift(&self, path: &SchemePath) -> Result<SchemePath> {
        if path.len() != self.scheme.cycle_count() {
            return Err(Error::ExponentMismatch { expected: self.scheme.cycle_count(), found: path.len() });
        }
        let mut out: Vec<u64> = self.profile.iter().map(|u| if *u == Usage::Once { 1 } else { 0 }).collect();
        for (carry, &n) in self.carries.iter().zip(path.exponents()) {
            if let Some(i) = carry {
                out[*i] = n.checked_add(2).ok_or(Error::Overflow)?;
            }
        }
        Ok(SchemePath::new(out))
    }

    /// Letter cost of each cycle in origin letters.
    pub fn cycle_costs(&self, origin: &Lps) -> Vec<u64> {
        self.carries.iter().map(|c| c.map_or(0, |i| origin.cycles()[i].len() as u64)).collect()
    }
}

enum Item {
    Letter(PlaneVector, u64),
    Star(PlaneVector, Option<usize>),
}

/// Splits an LPS into simple schemes whose reachability relations together
/// equal the LPS's, by fixing for each cycle whether it is taken zero times,
/// once, or at least twice.
pub fn split_lps(lps: &Lps) -> Result<SlpsFamily> {
    let k = lps.cycle_count();
    let mut members = Vec::new();
    for code in 0..3usize.pow(k as u32) {
        let mut profile = Vec::with_capacity(k);
        let mut c = code;
        for _ in 0..k {
            profile.push([Usage::Zero, Usage::Once, Usage::Many][c % 3]);
            c /= 3;
        }
        profile.reverse();
        members.push(member_for(lps, profile)?);
    }
    Ok(SlpsFamily { origin: lps.clone(), members })
}

fn member_for(lps: &Lps, profile: Vec<Usage>) -> Result<SlpsMember> {
    let mut items = Vec::new();
    let letters = |items: &mut Vec<Item>, w: &Word| items.extend(w.letters().iter().map(|v| Item::Letter(v.clone(), 1)));
    for (i, alpha) in lps.segments().iter().enumerate() {
        if i > 0 {
            let beta = &lps.cycles()[i - 1];
            match profile[i - 1] {
                Usage::Zero => {}
                Usage::Once => letters(&mut items, beta),
                Usage::Many => {
                    letters(&mut items, beta);
                    items.push(Item::Star(beta.effect()?, Some(i - 1)));
                    letters(&mut items, beta);
                }
            }
        }
        letters(&mut items, alpha);
    }

    let mut segments = Vec::new();
    let mut segment_cost = Vec::new();
    let mut cycles = Vec::new();
    let mut carries = Vec::new();
    for item in items {
        match item {
            Item::Letter(v, cost) => {
                if segments.len() > cycles.len() {
                    cycles.push(Vector::zero());
                    carries.push(None);
                }
                segments.push(v);
                segment_cost.push(cost);
            }
            Item::Star(v, origin) => {
                if segments.len() == cycles.len() {
                    segments.push(Vector::zero());
                    segment_cost.push(0);
                }
                cycles.push(v);
                carries.push(origin);
            }
        }
    }
    if segments.len() == cycles.len() {
        segments.push(Vector::zero());
        segment_cost.push(0);
    }
    Ok(SlpsMember { profile, scheme: Slps::new(segments, cycles)?, carries, segment_cost })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> PlaneVector {
        Vector::new(x, y)
    }

    fn w(vs: &[(i64, i64)]) -> Word {
        vs.iter().map(|&(x, y)| v(x, y)).collect()
    }

    #[test]
    fn normalizing_a_zero_loop() {
        let l = Lps::new(vec![w(&[(1, 0)]), w(&[(-1, 0)])], vec![w(&[(0, 1), (0, -1)])]).unwrap();
        let n = loop_normalize(&l).unwrap();
        assert_eq!(n.segments()[0], w(&[(1, 0), (0, 1), (0, -1)]));
        assert_eq!(n.cycles()[0], w(&[(0, 0)]));
        assert_eq!(n.segments()[1], w(&[(0, 1), (0, -1), (-1, 0)]));
    }

    #[test]
    fn loop_lemma_examples() {
        let pi = vec![vec![1, -2], vec![0, 1]];
        assert_eq!(check_loop_lemma(&pi, &[0, 5], 2, 2).unwrap(), (true, true));
        let pi = vec![vec![0, -1], vec![0, 1]];
        assert_eq!(check_loop_lemma(&pi, &[0, 1], 3, 2).unwrap(), (true, true));
        let pi = vec![vec![0, -2], vec![0, 1]];
        assert_eq!(check_loop_lemma(&pi, &[0, 2], 1, 2).unwrap(), (false, false));
        assert!(check_loop_lemma(&pi, &[0, 2, 1], 1, 2).is_err());
    }

    #[test]
    fn split_three_profiles() {
        let l = Lps::new(vec![w(&[(1, 0)]), w(&[(-1, 0)])], vec![w(&[(0, 1), (0, -1)])]).unwrap();
        let fam = split_lps(&l).unwrap();
        assert_eq!(fam.members.len(), 3);
        for m in &fam.members {
            assert!(m.scheme.len() <= 4 * l.len());
        }
        let many = &fam.members[2];
        assert_eq!(many.profile, vec![Usage::Many]);
        // (1,0) (0,1) (0,-1) [(0,0)]* (0,1) (0,-1) (-1,0), padded between letters
        assert_eq!(many.scheme.segments().len(), 6);
        assert_eq!(many.carries.iter().filter(|c| c.is_some()).count(), 1);
        let star = many.carries.iter().position(|c| c.is_some()).unwrap();
        assert_eq!(many.scheme.cycles()[star], v(0, 0));

        let mut path = vec![0; many.scheme.cycle_count()];
        path[star] = 3;
        assert_eq!(many.lift(&SchemePath::new(path)).unwrap(), SchemePath::new(vec![5]));
    }

    #[test]
    fn split_without_cycles() {
        let l = Lps::new(vec![w(&[(1, 1), (2, 2)])], vec![]).unwrap();
        let fam = split_lps(&l).unwrap();
        assert_eq!(fam.members.len(), 1);
        assert_eq!(fam.members[0].scheme.segments(), &[v(1, 1), v(2, 2)]);
        assert_eq!(fam.members[0].scheme.cycles(), &[v(0, 0)]);
    }

    #[test]
    fn effect_norm_bound() {
        let l = Lps::new(vec![Word::empty(), Word::empty()], vec![w(&[(1, 1), (2, -1)])]).unwrap();
        let fam = split_lps(&l).unwrap();
        let many = &fam.members[2];
        assert!(many.scheme.cycles().contains(&v(3, 0)));
        assert!(many.scheme.norm().unwrap() <= 2 * l.norm().unwrap() * l.len() as i64);
    }
}
