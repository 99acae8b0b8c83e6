//! Random building blocks and exact path geometry shared by the suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use twovass::{PlaneVector, SchemePath, Slps, Vector};

pub fn vector(rng: &mut ChaCha8Rng, norm: i64) -> PlaneVector {
    Vector::new(rng.gen_range(-norm..=norm), rng.gen_range(-norm..=norm))
}

pub fn nonzero(rng: &mut ChaCha8Rng, norm: i64) -> PlaneVector {
    loop {
        let v = vector(rng, norm);
        if !v.is_zero() {
            return v;
        }
    }
}

/// A vector of norm exactly `norm`.
pub fn of_norm(rng: &mut ChaCha8Rng, norm: i64) -> PlaneVector {
    let other = rng.gen_range(-norm..=norm);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    if rng.gen_bool(0.5) {
        Vector::new(sign * norm, other)
    } else {
        Vector::new(other, sign * norm)
    }
}

pub fn pick<T: Clone>(rng: &mut ChaCha8Rng, items: &[T]) -> T {
    items.choose(rng).expect("nonempty choice").clone()
}

pub fn norm(v: &PlaneVector) -> i64 {
    v.x.abs().max(v.y.abs())
}

pub fn scheme_norm(scheme: &Slps) -> i64 {
    scheme.segments().iter().chain(scheme.cycles()).map(norm).max().unwrap_or(0)
}

/// A maximal run of equal letters in an instantiated path: points
/// `start + j·step` for `j = 1..=count` sit at indices `first + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub first: u64,
    pub start: (i128, i128),
    pub step: (i128, i128),
    pub count: u64,
}

impl Block {
    pub fn point(&self, j: u64) -> (i128, i128) {
        (self.start.0 + self.step.0 * j as i128, self.start.1 + self.step.1 * j as i128)
    }
}

/// The path as blocks, computed by hand from the scheme's vectors.
#[derive(Debug, Clone)]
pub struct Geometry {
    pub source: (i128, i128),
    pub blocks: Vec<Block>,
    pub len: u64,
}

impl Geometry {
    pub fn new(scheme: &Slps, path: &SchemePath, source: (i64, i64)) -> Self {
        let w = |v: &PlaneVector| (v.x as i128, v.y as i128);
        let mut blocks = Vec::new();
        let mut at = (source.0 as i128, source.1 as i128);
        let mut index = 0u64;
        let mut push = |step: (i128, i128), count: u64, at: &mut (i128, i128), index: &mut u64| {
            let b = Block { first: *index, start: *at, step, count };
            *at = b.point(count);
            *index += count;
            if count > 0 {
                blocks.push(b);
            }
        };
        for (i, seg) in scheme.segments().iter().enumerate() {
            if i > 0 {
                push(w(&scheme.cycles()[i - 1]), path.exponents()[i - 1], &mut at, &mut index);
            }
            push(w(seg), 1, &mut at, &mut index);
        }
        Geometry { source: (source.0 as i128, source.1 as i128), blocks, len: index }
    }

    pub fn point(&self, index: u64) -> (i128, i128) {
        if index == 0 {
            return self.source;
        }
        for b in &self.blocks {
            if index <= b.first + b.count {
                return b.point(index - b.first);
            }
        }
        panic!("index {index} beyond path length {}", self.len)
    }

    pub fn target(&self) -> (i128, i128) {
        self.point(self.len)
    }

    /// Some point with index in `lo..=hi` outside the box, checked at the
    /// extremes of each block since boxes are convex.
    pub fn escape(&self, lo: u64, hi: u64, inside: impl Fn((i128, i128)) -> bool) -> Option<(u64, (i128, i128))> {
        if lo == 0 && !inside(self.source) {
            return Some((0, self.source));
        }
        for b in &self.blocks {
            let a = lo.max(b.first + 1);
            let z = hi.min(b.first + b.count);
            if a > z {
                continue;
            }
            for idx in [a, z] {
                let p = b.point(idx - b.first);
                if !inside(p) {
                    return Some((idx, p));
                }
            }
        }
        None
    }

    pub fn all_inside(&self, lo: u64, hi: u64, inside: impl Fn((i128, i128)) -> bool) -> bool {
        self.escape(lo, hi, inside).is_none()
    }

    pub fn max_norm(&self) -> i128 {
        let mut best = self.source.0.abs().max(self.source.1.abs());
        for b in &self.blocks {
            for p in [b.point(1), b.point(b.count)] {
                best = best.max(p.0.abs()).max(p.1.abs());
            }
        }
        best
    }

    /// Lowest and highest coordinates reached on each axis.
    pub fn bounds(&self) -> ((i128, i128), (i128, i128)) {
        let (mut lo, mut hi) = (self.source, self.source);
        for b in &self.blocks {
            for p in [b.point(1), b.point(b.count)] {
                lo = (lo.0.min(p.0), lo.1.min(p.1));
                hi = (hi.0.max(p.0), hi.1.max(p.1));
            }
        }
        (lo, hi)
    }
}

/// Independent re-validation of a claimed shortening: componentwise proper
/// decrease, exact effect difference, admissibility of the reduced path.
pub fn revalidate(
    scheme: &Slps,
    original: &SchemePath,
    reduced: &SchemePath,
    delta: &PlaneVector,
    source: (i64, i64),
) -> Result<(), String> {
    let (o, r) = (original.exponents(), reduced.exponents());
    if o.len() != scheme.cycle_count() || r.len() != o.len() {
        return Err("certificate: exponent tuple of the wrong length".into());
    }
    if r.iter().zip(o).any(|(a, b)| a > b) || r == o {
        return Err("certificate: reduced path is not a proper subword".into());
    }
    let mut d = (0i128, 0i128);
    for ((c, a), b) in scheme.cycles().iter().zip(o).zip(r) {
        let gone = (*a - *b) as i128;
        d = (d.0 + gone * c.x as i128, d.1 + gone * c.y as i128);
    }
    if d != (delta.x as i128, delta.y as i128) {
        return Err(format!("certificate: effect drops by ({},{}), not by {delta}", d.0, d.1));
    }
    let g = Geometry::new(scheme, reduced, source);
    if let Some((i, p)) = g.escape(0, g.len, |p| p.0 >= 0 && p.1 >= 0) {
        return Err(format!("certificate: reduced path leaves N² at index {i}, point ({},{})", p.0, p.1));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> PlaneVector {
        Vector::new(x, y)
    }

    #[test]
    fn geometry_by_blocks() {
        let s = Slps::new(vec![v(0, 1), v(1, 0), v(0, 0)], vec![v(0, 2), v(-1, -1)]).unwrap();
        let g = Geometry::new(&s, &SchemePath::new(vec![3, 2]), (1, 1));
        assert_eq!(g.len, 8);
        assert_eq!(g.point(1), (1, 2));
        assert_eq!(g.point(4), (1, 8));
        assert_eq!(g.point(5), (2, 8));
        assert_eq!(g.target(), (0, 6));
        assert_eq!(g.max_norm(), 8);
        assert_eq!(g.escape(0, 8, |p| p.0 >= 1), Some((7, (0, 6))));
    }

    #[test]
    fn revalidation_catches_tampering() {
        let s = Slps::new(vec![v(0, 0), v(0, 0)], vec![v(0, 1)]).unwrap();
        let ok = revalidate(&s, &SchemePath::new(vec![3]), &SchemePath::new(vec![2]), &v(0, 1), (6, 6));
        assert_eq!(ok, Ok(()));
        let bad = revalidate(&s, &SchemePath::new(vec![3]), &SchemePath::new(vec![2]), &v(0, 2), (6, 6));
        assert!(bad.unwrap_err().contains("effect"));
        let same = revalidate(&s, &SchemePath::new(vec![3]), &SchemePath::new(vec![3]), &v(0, 0), (6, 6));
        assert!(same.unwrap_err().contains("proper"));
    }
}
