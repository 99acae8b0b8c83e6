//! Shortening paths of simple linear path schemes.
//!
//! A *shortening* of a path by a vector `e` is a proper subword whose effect
//! is smaller by exactly `e`. Every procedure here deletes whole repetitions
//! of cycles, so a shortening is just a component-wise smaller exponent
//! tuple. Results are returned as [`Shortening`] certificates that can be
//! re-checked by replaying the reduced word with [`Shortening::check`].

mod cut;
mod fragment;
mod theorems;

use thiserror::Error;

use crate::cone::VectorSet;
use crate::error::Error;
use crate::scheme::{SchemePath, Slps};
use crate::vector::{Point, Vector};
use crate::word::Run;
use crate::{Configuration, PlaneVector};

pub use cut::cut_by_vector;
pub use theorems::{
    shorten_away_both, shorten_away_other, shorten_close_away, shorten_far, shorten_one_visit, AwayOther,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShortenError {
    #[error("precondition violated: {what}{}", point.as_ref().map(|p| format!(" at {p}")).unwrap_or_default())]
    Precondition { what: String, point: Option<PlaneVector> },
    /// An existence guarantee failed to materialise; always a bug.
    #[error("internal defect: {0}")]
    Defect(String),
    #[error(transparent)]
    Core(#[from] Error),
}

pub(crate) fn precondition(what: impl Into<String>) -> ShortenError {
    ShortenError::Precondition { what: what.into(), point: None }
}

pub(crate) fn precondition_at(what: impl Into<String>, point: &PlaneVector) -> ShortenError {
    ShortenError::Precondition { what: what.into(), point: Some(point.clone()) }
}

pub(crate) fn defect(what: impl Into<String>) -> ShortenError {
    ShortenError::Defect(what.into())
}

pub type ShortenResult<T> = Result<T, ShortenError>;

/// A certificate that `reduced` is a shortening of `original` by `delta`,
/// admissible from `source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shortening {
    pub scheme: Slps,
    pub original: SchemePath,
    pub reduced: SchemePath,
    pub delta: PlaneVector,
    pub source: Configuration,
}

/// Which certificate invariant failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("reduced path is not a proper subword of the original")]
    NotProperSubword,
    #[error("effect mismatch: expected {expected}, found {found}")]
    EffectMismatch { expected: PlaneVector, found: PlaneVector },
    #[error("reduced word is not admissible: point {index} is negative")]
    Inadmissible { index: usize },
    #[error(transparent)]
    Core(#[from] Error),
}

impl Shortening {
    /// Replays the reduced word and checks all three invariants.
    pub fn check(&self) -> Result<(), Violation> {
        let proper = self.reduced.le(&self.original) && self.reduced != self.original;
        if !proper {
            return Err(Violation::NotProperSubword);
        }
        let before = self.scheme.instantiate(&self.original)?.effect()?;
        let word = self.scheme.instantiate(&self.reduced)?;
        let after = word.effect()?;
        let expected = before.checked_sub(&self.delta)?;
        if after != expected {
            return Err(Violation::EffectMismatch { expected, found: after });
        }
        let run = Run::of(word.letters(), &self.source)?;
        if let Some(index) = run.first_violation {
            return Err(Violation::Inadmissible { index });
        }
        Ok(())
    }
}

/// Shortenings by `n·gamma·direction` for `n = 1, 2, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShorteningFamily {
    pub gamma: u64,
    pub direction: PlaneVector,
    /// `members[n - 1]` shortens by `n·gamma·direction`.
    pub members: Vec<Shortening>,
}

impl ShorteningFamily {
    pub fn member(&self, n: u64) -> Option<&Shortening> {
        n.checked_sub(1).and_then(|i| self.members.get(i as usize))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Checks every member and the `n·gamma·direction` delta pattern.
    pub fn check(&self) -> Result<(), Violation> {
        for (i, m) in self.members.iter().enumerate() {
            let k = (i as i64 + 1) * self.gamma as i64;
            let want = self.direction.checked_scale(&k)?;
            if m.delta != want {
                return Err(Violation::EffectMismatch { expected: want, found: m.delta.clone() });
            }
            m.check()?;
        }
        Ok(())
    }
}

/// `{βᵢ : nᵢ ≥ bound}`.
pub fn cycles_repeated_at_least(scheme: &Slps, path: &SchemePath, bound: u64) -> Result<VectorSet, Error> {
    if path.len() != scheme.cycle_count() {
        return Err(Error::ExponentMismatch { expected: scheme.cycle_count(), found: path.len() });
    }
    Ok(scheme
        .cycles()
        .iter()
        .zip(path.exponents())
        .filter(|(_, &n)| n >= bound)
        .map(|(c, _)| c.clone())
        .collect())
}

/// Lower bound on `p·effect(π)` when every cycle repeated at least `bound`
/// times has positive (`strict`) or nonnegative dot product with `p`:
/// `|π| − (K·bound + 1)(2‖Λ‖‖p‖ + 1)` or `−(K·bound + 1)(2‖Λ‖‖p‖)`.
pub fn drift_lower_bound(
    scheme: &Slps,
    path: &SchemePath,
    p: &PlaneVector,
    bound: u64,
    strict: bool,
) -> ShortenResult<i128> {
    let repeated = cycles_repeated_at_least(scheme, path, bound)?;
    for a in repeated.iter() {
        let d = p.dot(a)?;
        if d < 0 || (strict && d == 0) {
            let rel = if strict { ">" } else { ">=" };
            return Err(precondition_at(format!("p·a {rel} 0 fails for repeated cycle a"), a));
        }
    }
    let k = scheme.cycle_count() as i128;
    let norm = scheme.norm()? as i128;
    let pn = p.norm()? as i128;
    let slack = k
        .checked_mul(bound as i128)
        .and_then(|x| x.checked_add(1))
        .ok_or(Error::Overflow)?;
    let width = norm.checked_mul(pn).and_then(|x| x.checked_mul(2)).ok_or(Error::Overflow)?;
    if strict {
        let len = scheme.path_len(path)? as i128;
        let sub = slack.checked_mul(width + 1).ok_or(Error::Overflow)?;
        Ok(len - sub)
    } else {
        Ok(-(slack.checked_mul(width).ok_or(Error::Overflow)?))
    }
}

/// A path together with its visited points.
#[derive(Debug, Clone)]
pub(crate) struct Walk {
    pub scheme: Slps,
    pub path: SchemePath,
    pub source: Configuration,
    pub points: Vec<PlaneVector>,
}

impl Walk {
    pub fn new(scheme: &Slps, path: &SchemePath, source: &Configuration) -> ShortenResult<Self> {
        let word = scheme.instantiate(path)?;
        let run = Run::of(word.letters(), source)?;
        Ok(Self { scheme: scheme.clone(), path: path.clone(), source: source.clone(), points: run.visited })
    }

    pub fn target(&self) -> &PlaneVector {
        self.points.last().expect("a walk always has its source")
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.points.len() - 1
    }

    /// Fails on the first point (from index `from`) outside the region.
    pub fn require_all(
        &self,
        from: usize,
        what: &str,
        mut inside: impl FnMut(&PlaneVector) -> bool,
    ) -> ShortenResult<()> {
        match self.points[from..].iter().find(|p| !inside(p)) {
            Some(p) => Err(precondition_at(what, p)),
            None => Ok(()),
        }
    }

    pub fn swapped(&self) -> ShortenResult<Walk> {
        let source = Point::new(*self.source.y(), *self.source.x())?;
        Walk::new(&self.scheme.swapped(), &self.path, &source)
    }
}

/// Exponent decrements on a scheme's cycles.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct Cut {
    pub removals: Vec<(usize, u64)>,
}

impl Cut {
    pub fn single(cycle: usize, times: u64) -> Self {
        Self { removals: vec![(cycle, times)] }
    }

    pub fn apply(&self, path: &SchemePath) -> ShortenResult<SchemePath> {
        let mut out = path.clone();
        for &(i, k) in &self.removals {
            let e = &mut out.exponents_mut()[i];
            *e = e.checked_sub(k).ok_or_else(|| defect(format!("cycle {} has fewer than {k} repetitions", i + 1)))?;
        }
        Ok(out)
    }

    pub fn merged(mut self, other: Cut) -> Cut {
        self.removals.extend(other.removals);
        self
    }
}

/// Builds the family `n ↦ cut(n)` on a walk.
pub(crate) fn family(
    walk: &Walk,
    gamma: u64,
    direction: PlaneVector,
    count: u64,
    mut cut: impl FnMut(u64) -> ShortenResult<Cut>,
) -> ShortenResult<ShorteningFamily> {
    let mut members = Vec::with_capacity(count as usize);
    for n in 1..=count {
        let reduced = cut(n)?.apply(&walk.path)?;
        let k = i64::try_from(n * gamma).map_err(|_| Error::Overflow)?;
        members.push(Shortening {
            scheme: walk.scheme.clone(),
            original: walk.path.clone(),
            reduced,
            delta: direction.checked_scale(&k)?,
            source: walk.source.clone(),
        });
    }
    Ok(ShorteningFamily { gamma, direction, members })
}

/// Products of small factors with overflow reported.
pub(crate) fn product(factors: &[i128]) -> ShortenResult<i128> {
    factors.iter().try_fold(1i128, |acc, &f| acc.checked_mul(f).ok_or(ShortenError::Core(Error::Overflow)))
}

pub(crate) fn up() -> PlaneVector {
    Vector::new(0, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> PlaneVector {
        Vector::new(x, y)
    }

    fn up_scheme() -> Slps {
        Slps::single(v(0, 0), v(0, 1), v(0, 0))
    }

    #[test]
    fn repeated_cycles() {
        let s = up_scheme();
        let e = SchemePath::new(vec![3]);
        assert_eq!(cycles_repeated_at_least(&s, &e, 2).unwrap(), VectorSet::new([v(0, 1)]));
        assert!(cycles_repeated_at_least(&s, &e, 4).unwrap().is_empty());

        let two = Slps::new(vec![v(0, 0); 3], vec![v(0, 1), v(1, 0)]).unwrap();
        let got = cycles_repeated_at_least(&two, &SchemePath::new(vec![5, 2]), 3).unwrap();
        assert_eq!(got, VectorSet::new([v(0, 1)]));
    }

    #[test]
    fn drift_examples() {
        let s = up_scheme();
        let e = SchemePath::new(vec![8]);
        // |π| = 10, K = 1, B = 2, ‖Λ‖ = ‖p‖ = 1
        assert_eq!(drift_lower_bound(&s, &e, &v(0, 1), 2, true).unwrap(), 1);
        assert_eq!(drift_lower_bound(&s, &e, &v(0, 1), 2, false).unwrap(), -6);
        assert!(matches!(
            drift_lower_bound(&s, &e, &v(0, -1), 2, true),
            Err(ShortenError::Precondition { .. })
        ));
    }

    #[test]
    fn certificate_violations_are_named() {
        let good = Shortening {
            scheme: up_scheme(),
            original: SchemePath::new(vec![3]),
            reduced: SchemePath::new(vec![2]),
            delta: v(0, 1),
            source: Point::new(0, 0).unwrap(),
        };
        assert_eq!(good.check(), Ok(()));

        let mut bad = good.clone();
        bad.delta = v(0, 2);
        assert!(matches!(bad.check(), Err(Violation::EffectMismatch { .. })));

        let mut same = good.clone();
        same.reduced = same.original.clone();
        assert_eq!(same.check(), Err(Violation::NotProperSubword));

        let down = Shortening {
            scheme: Slps::single(v(0, 0), v(0, -1), v(0, 0)),
            original: SchemePath::new(vec![2]),
            reduced: SchemePath::new(vec![1]),
            delta: v(0, -1),
            source: Point::new(0, 0).unwrap(),
        };
        assert_eq!(down.check(), Err(Violation::Inadmissible { index: 2 }));
    }
}
