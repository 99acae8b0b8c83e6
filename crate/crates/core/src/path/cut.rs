//! Removing small positive combinations of heavily repeated cycles.

use crate::cone::{cone_contains, cone_contains_zero};
use crate::error::Error;
use crate::scheme::{SchemePath, Slps};
use crate::{Configuration, PlaneVector};

use super::{
    cycles_repeated_at_least, family, precondition, precondition_at, product, Cut, ShortenResult,
    ShorteningFamily, Walk,
};

/// `gamma·c = Σ λᵢ·βᵢ` over at most three cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Decomposition {
    pub gamma: u64,
    pub terms: Vec<(usize, u64)>,
}

/// Shortenings by `n·γ·c` for `n = 1..=n_max`, obtained by deleting
/// `n·λᵢ` repetitions of at most three cycles repeated at least
/// `2‖Λ‖²N` times.
pub fn cut_by_vector(
    scheme: &Slps,
    path: &SchemePath,
    source: &Configuration,
    n_max: u64,
    c: &PlaneVector,
) -> ShortenResult<ShorteningFamily> {
    let walk = Walk::new(scheme, path, source)?;
    let norm = scheme.norm()?;
    cut_with_norm(&walk, n_max, c, norm)
}

/// As [`cut_by_vector`], with `norm` standing in for `‖Λ‖` in every bound.
pub(crate) fn cut_with_norm(walk: &Walk, n_max: u64, c: &PlaneVector, norm: i64) -> ShortenResult<ShorteningFamily> {
    if norm <= 0 {
        return Err(precondition("scheme norm must be positive"));
    }
    if c.norm()? > norm {
        return Err(precondition_at("cut vector is longer than the scheme norm", c));
    }
    let l = norm as i128;
    let margin = product(&[6, l, l, l, n_max as i128])?;
    walk.require_all(0, "point inside the margin", |p| p.x as i128 >= margin && p.y as i128 >= margin)?;

    let bound = u64::try_from(product(&[2, l, l, n_max as i128])?).map_err(|_| Error::Overflow)?;
    let repeated = cycles_repeated_at_least(&walk.scheme, &walk.path, bound)?;
    let inside = !repeated.is_empty()
        && if c.is_zero() { cone_contains_zero(&repeated)? } else { cone_contains(&repeated, c)? };
    if !inside {
        let what = if c.is_zero() {
            "zero is not in the cone of the repeated cycles".to_string()
        } else {
            format!("{c} is not in the cone of the repeated cycles")
        };
        return Err(precondition(what));
    }

    let candidates: Vec<(usize, PlaneVector)> = {
        let mut seen = Vec::<PlaneVector>::new();
        let mut out = Vec::new();
        for (i, (b, &n)) in walk.scheme.cycles().iter().zip(walk.path.exponents()).enumerate() {
            if n >= bound && !seen.contains(b) {
                seen.push(b.clone());
                out.push((i, b.clone()));
            }
        }
        out
    };
    let coefficient_cap = (2 * norm * norm) as u64;
    let d = decompose(&candidates, c, coefficient_cap)?
        .ok_or_else(|| super::defect(format!("no decomposition of a multiple of {c} within the coefficient bound")))?;
    family(walk, d.gamma, c.clone(), n_max, |n| {
        Ok(Cut { removals: d.terms.iter().map(|&(i, lambda)| (i, n * lambda)).collect() })
    })
}

/// Finds the decomposition with smallest `gamma`, then fewest terms, then
/// earliest cycle indices, all coefficients in `1..=cap`.
pub(crate) fn decompose(
    candidates: &[(usize, PlaneVector)],
    c: &PlaneVector,
    cap: u64,
) -> Result<Option<Decomposition>, Error> {
    let cap_i = cap as i64;
    let gammas = if c.is_zero() { 1..=1 } else { 1..=cap };
    for gamma in gammas {
        let target = c.checked_scale(&(gamma as i64))?;
        for (i, a) in candidates {
            if let Some(l) = multiple(&target, a, cap_i)? {
                return Ok(Some(Decomposition { gamma, terms: vec![(*i, l)] }));
            }
        }
        for (x, (i, a)) in candidates.iter().enumerate() {
            for (j, b) in &candidates[x + 1..] {
                if let Some((la, lb)) = pair(&target, a, b, cap_i)? {
                    return Ok(Some(Decomposition { gamma, terms: vec![(*i, la), (*j, lb)] }));
                }
            }
        }
        for (x, (i, a)) in candidates.iter().enumerate() {
            for (y, (j, b)) in candidates.iter().enumerate().skip(x + 1) {
                for (k, e) in &candidates[y + 1..] {
                    for la in 1..=cap_i {
                        let rest = target.checked_sub(&a.checked_scale(&la)?)?;
                        if let Some((lb, le)) = pair(&rest, b, e, cap_i)? {
                            let terms = vec![(*i, la as u64), (*j, lb), (*k, le)];
                            return Ok(Some(Decomposition { gamma, terms }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `λ` in `1..=cap` with `λ·a = target`.
fn multiple(target: &PlaneVector, a: &PlaneVector, cap: i64) -> Result<Option<u64>, Error> {
    if a.is_zero() {
        return Ok(target.is_zero().then_some(1));
    }
    if a.cross(target)? != 0 {
        return Ok(None);
    }
    let (num, den) = if a.x != 0 { (target.x, a.x) } else { (target.y, a.y) };
    if num % den != 0 {
        return Ok(None);
    }
    let l = num / den;
    Ok((1..=cap).contains(&l).then_some(l as u64))
}

/// `(λ, μ)` in `(1..=cap)²` with `λ·a + μ·b = target`.
fn pair(target: &PlaneVector, a: &PlaneVector, b: &PlaneVector, cap: i64) -> Result<Option<(u64, u64)>, Error> {
    let det = a.cross(b)?;
    if det != 0 {
        let l = target.cross(b)?;
        let m = a.cross(target)?;
        if l % det != 0 || m % det != 0 {
            return Ok(None);
        }
        let (l, m) = (l / det, m / det);
        let ok = (1..=cap).contains(&l) && (1..=cap).contains(&m);
        return Ok(ok.then_some((l as u64, m as u64)));
    }
    for l in 1..=cap {
        let rest = target.checked_sub(&a.checked_scale(&l)?)?;
        if let Some(m) = multiple(&rest, b, cap)? {
            return Ok(Some((l as u64, m)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::ShortenError;
    use crate::{Point, Vector};

    fn v(x: i64, y: i64) -> PlaneVector {
        Vector::new(x, y)
    }

    #[test]
    fn single_vertical_cycle() {
        let s = Slps::single(v(0, 0), v(0, 1), v(0, 0));
        let fam = cut_by_vector(&s, &SchemePath::new(vec![3]), &Point::new(6, 6).unwrap(), 1, &v(0, 1)).unwrap();
        assert_eq!(fam.gamma, 1);
        assert_eq!(fam.members[0].reduced, SchemePath::new(vec![2]));
        fam.check().unwrap();
    }

    #[test]
    fn zero_outside_a_ray() {
        let s = Slps::single(v(0, 0), v(0, 1), v(0, 0));
        let err = cut_by_vector(&s, &SchemePath::new(vec![3]), &Point::new(6, 6).unwrap(), 1, &v(0, 0));
        assert!(matches!(err, Err(ShortenError::Precondition { .. })));
    }

    #[test]
    fn two_cycles_combine() {
        let s = Slps::new(vec![v(0, 0); 3], vec![v(0, 2), v(0, -1)]).unwrap();
        // ‖Λ‖ = 2, N = 1: margin 48, both cycles repeated at least 8 times
        let fam = cut_by_vector(&s, &SchemePath::new(vec![10, 10]), &Point::new(48, 48).unwrap(), 1, &v(0, 1)).unwrap();
        assert_eq!(fam.gamma, 1);
        assert_eq!(fam.members[0].reduced, SchemePath::new(vec![9, 9]));
        fam.check().unwrap();
    }

    #[test]
    fn margin_breach_names_the_point() {
        let s = Slps::single(v(0, 0), v(0, 1), v(0, 0));
        let err = cut_by_vector(&s, &SchemePath::new(vec![3]), &Point::new(5, 6).unwrap(), 1, &v(0, 1));
        assert_eq!(
            err,
            Err(ShortenError::Precondition { what: "point inside the margin".into(), point: Some(v(5, 6)) })
        );
    }

    #[test]
    fn decomposition_prefers_small_gamma() {
        let cands = vec![(0, v(2, 1)), (1, v(-1, 1))];
        // (0,1) = (1/3)(2,1) + (2/3)(-1,1), so gamma = 3
        let d = decompose(&cands, &v(0, 1), 8).unwrap().unwrap();
        assert_eq!(d, Decomposition { gamma: 3, terms: vec![(0, 1), (1, 2)] });
    }
}
