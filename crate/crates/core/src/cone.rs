//! Rational cones in the plane.
//!
//! The cone of a set `C` is its closure under addition and multiplication by
//! positive rationals, so it contains `(0,0)` only when some nonempty
//! positive combination of `C` vanishes. Everything here is decided exactly
//! with integer cross and dot products; no division is ever performed.
//!
//! When several answers are valid, the functions return deterministic ones:
//! [`outermost_pair`] is the lexicographically smallest valid pair, and the
//! vectors built from it ([`separating_vector`], [`excluding_vector`]) follow
//! the constructive argument, taking the smallest valid candidate.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vector::Vector;

/// A finite set of plane vectors, iterated in `(x, y)` order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VectorSet<T = i64> {
    elements: BTreeSet<Vector<T>>,
}

impl<T: Scalar> VectorSet<T> {
    pub fn new<I: IntoIterator<Item = Vector<T>>>(elements: I) -> Self {
        Self { elements: elements.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &Vector<T>) -> bool {
        self.elements.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vector<T>> + '_ {
        self.elements.iter()
    }

    pub fn insert(&mut self, v: Vector<T>) -> bool {
        self.elements.insert(v)
    }

    /// `‖C‖`; zero for the empty set.
    pub fn norm(&self) -> Result<T> {
        let mut best = T::zero();
        for v in &self.elements {
            best = best.max(v.norm()?);
        }
        Ok(best)
    }

    pub fn without_zero(&self) -> Self {
        Self { elements: self.elements.iter().filter(|v| !v.is_zero()).cloned().collect() }
    }

    fn as_vec(&self) -> Vec<&Vector<T>> {
        self.elements.iter().collect()
    }
}

impl<T: Scalar> FromIterator<Vector<T>> for VectorSet<T> {
    fn from_iter<I: IntoIterator<Item = Vector<T>>>(iter: I) -> Self {
        Self::new(iter)
    }
}

/// `Σ coeffᵢ·vᵢ = (0,0)` with one to three terms and positive coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCombination<T = i64> {
    terms: Vec<(Vector<T>, T)>,
}

impl<T: Scalar> ZeroCombination<T> {
    pub fn terms(&self) -> &[(Vector<T>, T)] {
        &self.terms
    }

    pub fn coefficients(&self) -> Vec<T> {
        self.terms.iter().map(|(_, k)| k.clone()).collect()
    }

    pub fn sum(&self) -> Result<Vector<T>> {
        self.terms.iter().try_fold(Vector::zero(), |acc, (v, k)| acc.checked_add(&v.checked_scale(k)?))
    }
}

pub fn rotate_cw<T: Scalar>(v: &Vector<T>) -> Result<Vector<T>> {
    v.rotate_cw()
}

pub fn rotate_ccw<T: Scalar>(v: &Vector<T>) -> Result<Vector<T>> {
    v.rotate_ccw()
}

fn antiparallel<T: Scalar>(a: &Vector<T>, b: &Vector<T>) -> Result<bool> {
    Ok(a.cross(b)?.is_zero() && a.dot(b)?.is_negative())
}

fn same_ray<T: Scalar>(a: &Vector<T>, b: &Vector<T>) -> Result<bool> {
    Ok(a.cross(b)?.is_zero() && a.dot(b)?.is_positive())
}

fn nonempty<T: Scalar>(c: &VectorSet<T>) -> Result<()> {
    if c.is_empty() {
        Err(Error::EmptySet)
    } else {
        Ok(())
    }
}

/// Whether `(0,0)` is a nonempty positive combination of `c`.
///
/// True iff `c` contains zero, contains two antiparallel vectors, or lies in
/// no closed halfplane. A set in some closed halfplane is also in one whose
/// boundary passes through an element, so the candidate normals are the
/// rotations of the elements.
pub fn cone_contains_zero<T: Scalar>(c: &VectorSet<T>) -> Result<bool> {
    nonempty(c)?;
    if c.iter().any(Vector::is_zero) {
        return Ok(true);
    }
    let elems = c.as_vec();
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            if antiparallel(a, b)? {
                return Ok(true);
            }
        }
    }
    for a in &elems {
        for normal in [a.rotate_cw()?, a.rotate_ccw()?] {
            let mut inside = true;
            for e in &elems {
                if normal.dot(e)?.is_negative() {
                    inside = false;
                    break;
                }
            }
            if inside {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `v` lies in the cone of `c`.
///
/// A nonzero `v` is in the cone iff it is a nonnegative combination of at
/// most two elements, which is checked with Cramer's rule on every pair.
pub fn cone_contains<T: Scalar>(c: &VectorSet<T>, v: &Vector<T>) -> Result<bool> {
    nonempty(c)?;
    if v.is_zero() {
        return cone_contains_zero(c);
    }
    let elems = c.as_vec();
    for a in &elems {
        if same_ray(a, v)? {
            return Ok(true);
        }
    }
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            let det = a.cross(b)?;
            if det.is_zero() {
                continue;
            }
            // v = λ₁a + λ₂b with λ₁ = (v×b)/det, λ₂ = (a×v)/det
            let l1 = v.cross(b)?;
            let l2 = a.cross(v)?;
            let ok = |l: &T| l.is_zero() || l.signum() == det.signum();
            if ok(&l1) && ok(&l2) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// A vanishing positive combination of at most three elements of `c`, with
/// every coefficient in `1..=2‖c‖²`, or `None` when the cone excludes zero.
///
/// Antiparallel pairs get their smallest coefficients; three-term
/// combinations use the cross products `|b×c|, |c×a|, |a×b|`.
pub fn zero_combination<T: Scalar>(c: &VectorSet<T>) -> Result<Option<ZeroCombination<T>>> {
    if c.is_empty() {
        return Ok(None);
    }
    if c.contains(&Vector::zero()) {
        return Ok(Some(ZeroCombination { terms: vec![(Vector::zero(), T::one())] }));
    }
    let elems = c.as_vec();
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            if antiparallel(a, b)? {
                let ga = a.x.gcd(&a.y);
                let gb = b.x.gcd(&b.y);
                let g = ga.gcd(&gb);
                let terms = vec![((*a).clone(), gb / g.clone()), ((*b).clone(), ga / g)];
                return Ok(Some(ZeroCombination { terms }));
            }
        }
    }
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate().skip(i + 1) {
            for cc in &elems[j + 1..] {
                let x1 = b.cross(cc)?;
                let x2 = cc.cross(a)?;
                let x3 = a.cross(b)?;
                let signs = [x1.signum(), x2.signum(), x3.signum()];
                if !x1.is_zero() && signs.iter().all(|s| *s == signs[0]) {
                    let terms = vec![
                        ((*a).clone(), x1.abs_checked()?),
                        ((*b).clone(), x2.abs_checked()?),
                        ((*cc).clone(), x3.abs_checked()?),
                    ];
                    return Ok(Some(ZeroCombination { terms }));
                }
            }
        }
    }
    if cone_contains_zero(c)? {
        return Err(Error::Precondition("cone contains zero but no small combination was found".into()));
    }
    Ok(None)
}

fn require_pointed<T: Scalar>(c: &VectorSet<T>) -> Result<()> {
    nonempty(c)?;
    if cone_contains_zero(c)? {
        return Err(Error::Precondition("the cone contains (0,0)".into()));
    }
    Ok(())
}

/// Two elements `a`, `b` spanning the cone of `c`, with every element
/// counterclockwise of `a` and clockwise of `b`. `a == b` when the cone is
/// a single ray.
pub fn outermost_pair<T: Scalar>(c: &VectorSet<T>) -> Result<(Vector<T>, Vector<T>)> {
    require_pointed(c)?;
    let elems = c.as_vec();
    for a in &elems {
        'pairs: for b in &elems {
            let span = VectorSet::new([(*a).clone(), (*b).clone()]);
            for e in &elems {
                if a.cross(e)?.is_negative() || e.cross(b)?.is_negative() || !cone_contains(&span, e)? {
                    continue 'pairs;
                }
            }
            return Ok(((*a).clone(), (*b).clone()));
        }
    }
    Err(Error::Precondition("no outermost pair exists".into()))
}

/// `p` with `‖p‖ ≤ 2‖c‖` and `p·e > 0` for every element `e`.
pub fn separating_vector<T: Scalar>(c: &VectorSet<T>) -> Result<Vector<T>> {
    let (a, b) = outermost_pair(c)?;
    let p = if a.cross(&b)?.is_zero() { a } else { a.rotate_ccw()?.checked_add(&b.rotate_cw()?)? };
    debug_assert!(is_separating(c, &p)?);
    Ok(p)
}

pub fn is_separating<T: Scalar>(c: &VectorSet<T>, p: &Vector<T>) -> Result<bool> {
    let bound = c.norm()?.mul_checked(&T::from_int(2)?)?;
    if p.norm()? > bound {
        return Ok(false);
    }
    for e in c.iter() {
        if !p.dot(e)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The four conditions on a vector excluding `(0,1)` from the cone of `c`:
/// `‖p‖ ≤ ‖c‖`, `p·(0,1) < 0`, `p·e ≥ 0` on `c`, and `p.x < 0` only when
/// `p` rotated clockwise is an element.
pub fn is_excluding<T: Scalar>(c: &VectorSet<T>, p: &Vector<T>) -> Result<bool> {
    if p.norm()? > c.norm()? || !p.y.is_negative() {
        return Ok(false);
    }
    for e in c.iter() {
        if p.dot(e)?.is_negative() {
            return Ok(false);
        }
    }
    Ok(!p.x.is_negative() || c.contains(&p.rotate_cw()?))
}

/// A vector witnessing that `(0,1)` is outside the cone of `c`; see
/// [`is_excluding`] for the guaranteed properties.
pub fn excluding_vector<T: Scalar>(c: &VectorSet<T>) -> Result<Vector<T>> {
    nonempty(c)?;
    if c.contains(&Vector::zero()) {
        return Err(Error::Precondition("the set contains (0,0)".into()));
    }
    let up = Vector::new(T::zero(), T::one());
    if cone_contains(c, &up)? {
        return Err(Error::Precondition("the cone contains (0,1)".into()));
    }
    let mut candidates = Vec::new();
    if !cone_contains_zero(c)? {
        let (a, b) = outermost_pair(c)?;
        candidates.push(a.rotate_ccw()?);
        candidates.push(Vector::new(T::zero(), -T::one()));
        candidates.push(b.rotate_cw()?);
    } else {
        // The cone is a halfplane bounded by an antiparallel pair; use the
        // member of each pair pointing left.
        let elems = c.as_vec();
        for a in &elems {
            for b in &elems {
                if !a.x.is_positive() && antiparallel(a, b)? {
                    candidates.push(a.rotate_ccw()?);
                }
            }
        }
    }
    let mut best: Option<Vector<T>> = None;
    for p in candidates {
        if is_excluding(c, &p)? && best.as_ref().is_none_or(|b| p < *b) {
            best = Some(p);
        }
    }
    best.ok_or_else(|| Error::Precondition("no excluding vector among the constructed candidates".into()))
}
