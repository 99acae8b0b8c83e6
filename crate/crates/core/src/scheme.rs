//! Linear path schemes `α₀ β₁* α₁ … β_K* α_K` and their paths.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vector::Vector;
use crate::word::Word;

/// A path of a scheme: how many times each cycle is taken.
///
/// Two different exponent tuples can instantiate the same word, so compare
/// paths with [`Slps::same_word`] rather than `==` when that matters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SchemePath {
    exponents: Vec<u64>,
}

impl SchemePath {
    pub fn new(exponents: Vec<u64>) -> Self {
        Self { exponents }
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn exponents_mut(&mut self) -> &mut [u64] {
        &mut self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.exponents.iter().sum()
    }

    /// Component-wise `self <= other`.
    pub fn le(&self, other: &SchemePath) -> bool {
        self.len() == other.len() && self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    fn check_len(&self, cycles: usize) -> Result<()> {
        if self.len() != cycles {
            return Err(Error::ExponentMismatch { expected: cycles, found: self.len() });
        }
        Ok(())
    }
}

impl From<Vec<u64>> for SchemePath {
    fn from(exponents: Vec<u64>) -> Self {
        Self::new(exponents)
    }
}

impl fmt::Display for SchemePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("-");
        }
        for (i, n) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

/// A linear path scheme with arbitrary (possibly empty) unstarred segments
/// and nonempty cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lps<T = i64> {
    segments: Vec<Word<T>>,
    cycles: Vec<Word<T>>,
}

impl<T: Scalar> Lps<T> {
    /// `segments` are `α₀ … α_K`, `cycles` are `β₁ … β_K`.
    pub fn new(segments: Vec<Word<T>>, cycles: Vec<Word<T>>) -> Result<Self> {
        if segments.len() != cycles.len() + 1 {
            return Err(Error::Precondition(format!(
                "{} segments cannot surround {} cycles",
                segments.len(),
                cycles.len()
            )));
        }
        if let Some(i) = cycles.iter().position(Word::is_empty) {
            return Err(Error::EmptyCycle(i + 1));
        }
        Ok(Self { segments, cycles })
    }

    pub fn segments(&self) -> &[Word<T>] {
        &self.segments
    }

    pub fn cycles(&self) -> &[Word<T>] {
        &self.cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// `|α₀β₁α₁…β_Kα_K|`.
    pub fn len(&self) -> usize {
        self.segments.iter().chain(&self.cycles).map(Word::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn norm(&self) -> Result<T> {
        let mut best = T::zero();
        for w in self.segments.iter().chain(&self.cycles) {
            best = best.max(w.norm()?);
        }
        Ok(best)
    }

    pub fn instantiate(&self, path: &SchemePath) -> Result<Word<T>> {
        path.check_len(self.cycles.len())?;
        let mut out = self.segments[0].clone();
        for (i, &n) in path.exponents().iter().enumerate() {
            for _ in 0..n {
                out.extend_from(&self.cycles[i]);
            }
            out.extend_from(&self.segments[i + 1]);
        }
        Ok(out)
    }

    /// Length of the word selected by `path`.
    pub fn path_len(&self, path: &SchemePath) -> Result<u64> {
        path.check_len(self.cycles.len())?;
        let fixed: u64 = self.segments.iter().map(|w| w.len() as u64).sum();
        let looped: u64 = path.exponents().iter().zip(&self.cycles).map(|(n, c)| n * c.len() as u64).sum();
        Ok(fixed + looped)
    }

    pub fn is_simple(&self) -> bool {
        self.segments.iter().chain(&self.cycles).all(|w| w.len() == 1)
    }

    pub fn to_simple(&self) -> Result<Slps<T>> {
        if let Some(i) = self.segments.iter().position(|w| w.len() != 1) {
            return Err(Error::NotSimple(i));
        }
        if let Some(i) = self.cycles.iter().position(|w| w.len() != 1) {
            return Err(Error::NotSimple(i + 1));
        }
        Slps::new(
            self.segments.iter().map(|w| w.letters()[0].clone()).collect(),
            self.cycles.iter().map(|w| w.letters()[0].clone()).collect(),
        )
    }
}

/// A simple linear path scheme: every segment and cycle is one letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slps<T = i64> {
    segments: Vec<Vector<T>>,
    cycles: Vec<Vector<T>>,
}

impl<T: Scalar> Slps<T> {
    pub fn new(segments: Vec<Vector<T>>, cycles: Vec<Vector<T>>) -> Result<Self> {
        if segments.len() != cycles.len() + 1 {
            return Err(Error::Precondition(format!(
                "{} segments cannot surround {} cycles",
                segments.len(),
                cycles.len()
            )));
        }
        Ok(Self { segments, cycles })
    }

    /// `α₀ β₁* α₁`.
    pub fn single(head: Vector<T>, cycle: Vector<T>, tail: Vector<T>) -> Self {
        Self { segments: vec![head, tail], cycles: vec![cycle] }
    }

    pub fn segments(&self) -> &[Vector<T>] {
        &self.segments
    }

    pub fn cycles(&self) -> &[Vector<T>] {
        &self.cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// `2K + 1`.
    pub fn len(&self) -> usize {
        self.segments.len() + self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn norm(&self) -> Result<T> {
        let mut best = T::zero();
        for v in self.segments.iter().chain(&self.cycles) {
            best = best.max(v.norm()?);
        }
        Ok(best)
    }

    pub fn instantiate(&self, path: &SchemePath) -> Result<Word<T>> {
        path.check_len(self.cycles.len())?;
        let mut out = Vec::with_capacity(self.path_len(path)? as usize);
        out.push(self.segments[0].clone());
        for (i, &n) in path.exponents().iter().enumerate() {
            for _ in 0..n {
                out.push(self.cycles[i].clone());
            }
            out.push(self.segments[i + 1].clone());
        }
        Ok(Word::new(out))
    }

    /// `K + 1 + Σ nᵢ`.
    pub fn path_len(&self, path: &SchemePath) -> Result<u64> {
        path.check_len(self.cycles.len())?;
        Ok(self.segments.len() as u64 + path.total())
    }

    /// `effect(α₀) + Σ nᵢ·effect(βᵢ) + Σ effect(αᵢ)` without expanding the word.
    pub fn path_effect(&self, path: &SchemePath) -> Result<Vector<T>> {
        path.check_len(self.cycles.len())?;
        let mut acc = Vector::zero();
        for s in &self.segments {
            acc = acc.checked_add(s)?;
        }
        for (c, &n) in self.cycles.iter().zip(path.exponents()) {
            acc = acc.checked_add(&c.checked_scale(&T::from_count(n)?)?)?;
        }
        Ok(acc)
    }

    /// Whether two paths instantiate the same word.
    pub fn same_word(&self, a: &SchemePath, b: &SchemePath) -> Result<bool> {
        Ok(self.instantiate(a)? == self.instantiate(b)?)
    }

    /// The scheme with both coordinates of every letter exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            segments: self.segments.iter().map(Vector::swapped).collect(),
            cycles: self.cycles.iter().map(Vector::swapped).collect(),
        }
    }

    pub fn to_lps(&self) -> Lps<T> {
        Lps {
            segments: self.segments.iter().map(|v| Word::new(vec![v.clone()])).collect(),
            cycles: self.cycles.iter().map(|v| Word::new(vec![v.clone()])).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> Vector {
        Vector::new(x, y)
    }

    fn letters(word: &Word) -> Vec<(i64, i64)> {
        word.letters().iter().map(|l| (l.x, l.y)).collect()
    }

    #[test]
    fn instantiate_direct_expansion() {
        let scheme = Slps::single(v(0, 0), v(0, 1), v(0, 0));
        let word = scheme.instantiate(&SchemePath::new(vec![3])).unwrap();
        assert_eq!(letters(&word), vec![(0, 0), (0, 1), (0, 1), (0, 1), (0, 0)]);
        let word = scheme.instantiate(&SchemePath::new(vec![0])).unwrap();
        assert_eq!(letters(&word), vec![(0, 0), (0, 0)]);
    }

    #[test]
    fn instantiate_two_cycles() {
        let scheme = Slps::new(vec![v(1, 0), v(1, 0), v(0, 0)], vec![v(0, 1), v(-1, 0)]).unwrap();
        let path = SchemePath::new(vec![2, 1]);
        let word = scheme.instantiate(&path).unwrap();
        assert_eq!(letters(&word), vec![(1, 0), (0, 1), (0, 1), (1, 0), (-1, 0), (0, 0)]);
        // |α| + Σ nᵢ = 3 + 3
        assert_eq!(word.len() as u64, scheme.path_len(&path).unwrap());
        assert_eq!(word.len(), 6);
    }

    #[test]
    fn exponent_mismatch() {
        let scheme = Slps::single(v(0, 0), v(0, 1), v(0, 0));
        assert_eq!(
            scheme.instantiate(&SchemePath::new(vec![1, 2])),
            Err(Error::ExponentMismatch { expected: 1, found: 2 })
        );
    }

    #[test]
    fn lps_rejects_empty_cycle() {
        let err = Lps::<i64>::new(vec![Word::empty(), Word::empty()], vec![Word::empty()]).unwrap_err();
        assert_eq!(err, Error::EmptyCycle(1));
    }

    #[test]
    fn lps_length_and_norm() {
        let lps = Lps::new(
            vec![Word::new(vec![v(1, 0)]), Word::new(vec![v(-1, 0)])],
            vec![Word::new(vec![v(0, 1), v(0, -3)])],
        )
        .unwrap();
        assert_eq!(lps.len(), 4);
        assert_eq!(lps.norm().unwrap(), 3);
        assert!(!lps.is_simple());
        assert_eq!(lps.path_len(&SchemePath::new(vec![2])).unwrap(), 6);
    }

    #[test]
    fn distinct_exponents_same_word() {
        // α₀ = α₁ = β makes (1,0) and (0,1) select the same word.
        let scheme = Slps::new(vec![v(0, 1), v(0, 1), v(0, 1)], vec![v(0, 1), v(0, 1)]).unwrap();
        let a = SchemePath::new(vec![1, 0]);
        let b = SchemePath::new(vec![0, 1]);
        assert_ne!(a, b);
        assert!(scheme.same_word(&a, &b).unwrap());
    }
}
