//! Words over the vector alphabet and their runs.

use std::fmt;

use crate::error::Result;
use crate::scalar::Scalar;
use crate::vector::{Point, Vector};

/// A finite word of plane vectors. May be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word<T = i64>(Vec<Vector<T>>);

impl<T: Scalar> Word<T> {
    pub fn new(letters: Vec<Vector<T>>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[Vector<T>] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Vector<T>> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Vector<T>) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &Word<T>) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word<T>) -> Word<T> {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    /// `self` repeated `times` times.
    pub fn power(&self, times: usize) -> Word<T> {
        let mut out = Vec::with_capacity(self.0.len() * times);
        for _ in 0..times {
            out.extend_from_slice(&self.0);
        }
        Word(out)
    }

    /// Sum of all letters; `(0,0)` for the empty word.
    pub fn effect(&self) -> Result<Vector<T>> {
        effect(&self.0)
    }

    /// Largest letter norm, zero for the empty word.
    pub fn norm(&self) -> Result<T> {
        let mut best = T::zero();
        for letter in &self.0 {
            best = best.max(letter.norm()?);
        }
        Ok(best)
    }

    pub fn run(&self, source: &Point<T>) -> Result<Run<T>> {
        Run::of(&self.0, source)
    }
}

impl<T: Scalar> From<Vec<Vector<T>>> for Word<T> {
    fn from(letters: Vec<Vector<T>>) -> Self {
        Self(letters)
    }
}

impl<T: Scalar> FromIterator<Vector<T>> for Word<T> {
    fn from_iter<I: IntoIterator<Item = Vector<T>>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<T: fmt::Display> fmt::Display for Word<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{},{}", letter.x, letter.y)?;
        }
        Ok(())
    }
}

pub fn effect<T: Scalar>(letters: &[Vector<T>]) -> Result<Vector<T>> {
    letters.iter().try_fold(Vector::zero(), |acc, v| acc.checked_add(v))
}

/// The points visited by a word from a source, with its admissibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run<T = i64> {
    pub source: Point<T>,
    /// `visited[0]` is the source, `visited[i + 1] = visited[i] + letter i`.
    pub visited: Vec<Vector<T>>,
    pub admissible: bool,
    /// Index into `visited` of the earliest point with a negative coordinate.
    pub first_violation: Option<usize>,
}

impl<T: Scalar> Run<T> {
    pub fn of(letters: &[Vector<T>], source: &Point<T>) -> Result<Self> {
        let mut visited = Vec::with_capacity(letters.len() + 1);
        let mut cur = source.to_vector();
        visited.push(cur.clone());
        let mut first_violation = None;
        for (i, letter) in letters.iter().enumerate() {
            cur = cur.checked_add(letter)?;
            if first_violation.is_none() && !cur.is_nonnegative() {
                first_violation = Some(i + 1);
            }
            visited.push(cur.clone());
        }
        Ok(Run { source: source.clone(), visited, admissible: first_violation.is_none(), first_violation })
    }

    pub fn target(&self) -> &Vector<T> {
        self.visited.last().expect("a run always visits its source")
    }

    /// Largest norm among visited points.
    pub fn max_norm(&self) -> Result<T> {
        let mut best = T::zero();
        for p in &self.visited {
            best = best.max(p.norm()?);
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[(i64, i64)]) -> Word {
        letters.iter().map(|&(x, y)| Vector::new(x, y)).collect()
    }

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y).unwrap()
    }

    #[test]
    fn effect_examples() {
        assert_eq!(w(&[(1, -2), (0, 1)]).effect().unwrap(), Vector::new(1, -1));
        assert_eq!(w(&[]).effect().unwrap(), Vector::new(0, 0));
        // column sums: 2-1-1 = 0, 1+1-2 = 0
        assert_eq!(w(&[(2, 1), (-1, 1), (-1, -2)]).effect().unwrap(), Vector::new(0, 0));
    }

    #[test]
    fn effect_overflow_is_an_error() {
        assert!(w(&[(i64::MAX, 0), (1, 0)]).effect().is_err());
    }

    #[test]
    fn immediate_violation() {
        let run = w(&[(0, -1)]).run(&p(0, 0)).unwrap();
        assert!(!run.admissible);
        assert_eq!(run.first_violation, Some(1));
    }

    #[test]
    fn returns_to_origin() {
        let run = w(&[(1, 0), (-1, 0)]).run(&p(0, 0)).unwrap();
        assert!(run.admissible);
        assert_eq!(run.target(), &Vector::new(0, 0));
    }

    #[test]
    fn squared_word_visits() {
        let run = w(&[(1, -2), (0, 1)]).power(2).run(&p(0, 5)).unwrap();
        assert!(run.admissible);
        let expected: Vec<Vector> =
            [(0, 5), (1, 3), (1, 4), (2, 2), (2, 3)].iter().map(|&(x, y)| Vector::new(x, y)).collect();
        assert_eq!(run.visited, expected);
    }
}
