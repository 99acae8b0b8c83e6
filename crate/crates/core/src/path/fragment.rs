//! Sub-schemes spanning a contiguous range of letters of a scheme path.

use crate::scheme::{SchemePath, Slps};
use crate::vector::Point;
use super::{defect, Cut, ShortenResult, Walk};

#[derive(Debug, Clone, Copy)]
enum Piece {
    Segment(usize),
    /// A single repetition of a cycle, standing in as a segment.
    Unrolled(usize),
    Cycle(usize, u64),
}

/// A contiguous part of a walk, re-expressed as a walk of its own scheme.
#[derive(Debug, Clone)]
pub(crate) struct Fragment {
    pub walk: Walk,
    /// Fragment cycle index to cycle index of the parent scheme.
    pub cycle_map: Vec<usize>,
}

impl Fragment {
    /// Letters `lo..hi` of `walk`, which must be nonempty.
    pub fn of(walk: &Walk, lo: usize, hi: usize) -> ShortenResult<Fragment> {
        if lo >= hi || hi > walk.len() {
            return Err(defect(format!("empty or out-of-range fragment {lo}..{hi}")));
        }
        let scheme = &walk.scheme;
        let mut pieces = Vec::new();
        let mut pos = 0usize;
        for (i, _) in scheme.segments().iter().enumerate() {
            if i > 0 {
                let c = i - 1;
                let n = walk.path.exponents()[c] as usize;
                let (start, end) = (pos, pos + n);
                let overlap = end.min(hi).saturating_sub(start.max(lo));
                if overlap > 0 {
                    pieces.push(Piece::Cycle(c, overlap as u64));
                } else if n == 0 && lo < pos && pos < hi {
                    pieces.push(Piece::Cycle(c, 0));
                }
                pos = end;
            }
            if lo <= pos && pos < hi {
                pieces.push(Piece::Segment(i));
            }
            pos += 1;
        }

        let cycles = scheme.cycles();
        if let Some(&Piece::Cycle(c, k)) = pieces.first() {
            pieces.splice(0..1, [Piece::Unrolled(c), Piece::Cycle(c, k - 1)]);
        }
        if let Some(&Piece::Cycle(c, k)) = pieces.last() {
            let last = pieces.len() - 1;
            if k == 0 {
                pieces.pop();
            } else {
                pieces.splice(last.., [Piece::Cycle(c, k - 1), Piece::Unrolled(c)]);
            }
        }

        let mut segments = Vec::new();
        let mut fcycles = Vec::new();
        let mut exponents = Vec::new();
        let mut cycle_map = Vec::new();
        for (j, piece) in pieces.iter().enumerate() {
            match (j % 2, piece) {
                (0, Piece::Segment(i)) => segments.push(scheme.segments()[*i].clone()),
                (0, Piece::Unrolled(c)) => segments.push(cycles[*c].clone()),
                (1, Piece::Cycle(c, k)) => {
                    fcycles.push(cycles[*c].clone());
                    exponents.push(*k);
                    cycle_map.push(*c);
                }
                _ => return Err(defect("fragment pieces do not alternate")),
            }
        }
        let source = Point::try_from(walk.points[lo].clone())?;
        let sub = Walk::new(&Slps::new(segments, fcycles)?, &SchemePath::new(exponents), &source)?;
        if sub.len() != hi - lo || sub.target() != &walk.points[hi] {
            return Err(defect("fragment does not reproduce its letters"));
        }
        Ok(Fragment { walk: sub, cycle_map })
    }

    /// The cut turning the fragment's `reduced` path into the parent's.
    pub fn lift_path(&self, reduced: &SchemePath) -> Cut {
        let removals = self
            .walk
            .path
            .exponents()
            .iter()
            .zip(reduced.exponents())
            .enumerate()
            .filter(|(_, (a, b))| a > b)
            .map(|(c, (a, b))| (self.cycle_map[c], a - b))
            .collect();
        Cut { removals }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{PlaneVector, Vector};

    fn v(x: i64, y: i64) -> PlaneVector {
        Vector::new(x, y)
    }

    fn walk() -> Walk {
        // (1,0) [(0,1)]^3 (1,0) [(1,1)]^0 (0,0) [(-1,0)]^2 (0,2)
        let s = Slps::new(vec![v(1, 0), v(1, 0), v(0, 0), v(0, 2)], vec![v(0, 1), v(1, 1), v(-1, 0)]).unwrap();
        Walk::new(&s, &SchemePath::new(vec![3, 0, 2]), &Point::new(1, 0).unwrap()).unwrap()
    }

    #[test]
    fn every_range_reproduces_its_letters() {
        let w = walk();
        for lo in 0..w.len() {
            for hi in lo + 1..=w.len() {
                let f = Fragment::of(&w, lo, hi).unwrap();
                assert_eq!(f.walk.points[..], w.points[lo..=hi], "{lo}..{hi}");
                assert!(f.walk.scheme.cycle_count() <= 3);
                for (c, &parent) in f.cycle_map.iter().enumerate() {
                    assert_eq!(f.walk.scheme.cycles()[c], w.scheme.cycles()[parent]);
                }
            }
        }
    }

    #[test]
    fn inner_zero_cycle_is_kept() {
        let w = walk();
        // letters 4..6 are (1,0) and (0,0), with the empty (1,1) block between
        let f = Fragment::of(&w, 4, 6).unwrap();
        assert_eq!(f.cycle_map, vec![1]);
        assert_eq!(f.walk.path.exponents(), &[0]);
    }

    #[test]
    fn lifting_maps_indices() {
        let w = walk();
        let f = Fragment::of(&w, 1, 5).unwrap();
        assert_eq!(f.cycle_map, vec![0]);
        assert_eq!(f.lift_path(&SchemePath::new(vec![1])), Cut::single(0, 1));
    }
}
