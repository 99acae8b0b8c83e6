use twovass::cone::{
    cone_contains, cone_contains_zero, excluding_vector, outermost_pair, rotate_ccw, rotate_cw, separating_vector,
    zero_combination,
};
use twovass::decider::{decide_bounded_witness, decide_capped_bfs, VerdictKind};
use twovass::instance::{parse_instance, Model};
use twovass::path::{cut_by_vector, drift_lower_bound, shorten_away_both, shorten_close_away, shorten_far};
use twovass::slps::{check_loop_lemma, loop_normalize, norm_bound, slps_reach, split_lps};
use twovass::{Configuration, Lps, PlaneVector, Point, SchemePath, Slps, Vector, VectorSet, Word};

fn v(x: i64, y: i64) -> PlaneVector {
    Vector::new(x, y)
}

fn at(x: i64, y: i64) -> Configuration {
    Point::new(x, y).unwrap()
}

fn set(vs: &[(i64, i64)]) -> VectorSet {
    VectorSet::new(vs.iter().map(|&(x, y)| v(x, y)))
}

fn word(vs: &[(i64, i64)]) -> Word {
    Word::new(vs.iter().map(|&(x, y)| v(x, y)).collect())
}

fn up() -> Slps {
    Slps::single(v(0, 0), v(0, 1), v(0, 0))
}

#[test]
fn effects_and_runs() {
    assert_eq!(word(&[(1, -2), (0, 1)]).effect().unwrap(), v(1, -1));
    assert_eq!(word(&[]).effect().unwrap(), v(0, 0));
    assert_eq!(word(&[(2, 1), (-1, 1), (-1, -2)]).effect().unwrap(), v(0, 0));

    let r = word(&[(0, -1)]).run(&at(0, 0)).unwrap();
    assert!(!r.admissible);
    assert_eq!(r.first_violation, Some(1));

    let r = word(&[(1, 0), (-1, 0)]).run(&at(0, 0)).unwrap();
    assert!(r.admissible);
    assert_eq!(r.target(), &v(0, 0));

    let r = word(&[(1, -2), (0, 1)]).power(2).run(&at(0, 5)).unwrap();
    assert!(r.admissible);
    assert_eq!(r.visited, vec![v(0, 5), v(1, 3), v(1, 4), v(2, 2), v(2, 3)]);
}

#[test]
fn instantiation() {
    assert_eq!(up().instantiate(&SchemePath::new(vec![3])).unwrap(), word(&[(0, 0), (0, 1), (0, 1), (0, 1), (0, 0)]));
    assert_eq!(up().instantiate(&SchemePath::new(vec![0])).unwrap(), word(&[(0, 0), (0, 0)]));
    let two = Slps::new(vec![v(1, 0), v(1, 0), v(0, 0)], vec![v(0, 1), v(-1, 0)]).unwrap();
    let w = two.instantiate(&SchemePath::new(vec![2, 1])).unwrap();
    assert_eq!(w, word(&[(1, 0), (0, 1), (0, 1), (1, 0), (-1, 0), (0, 0)]));
    assert!(two.instantiate(&SchemePath::new(vec![2])).is_err());
}

#[test]
fn instance_files() {
    let text = "vass\nstates q0 q1\ninit q0\nfinal q1\nedge q0 q0 -1 1\nedge q0 q1 0 0\nquery 2 0 -> 0 2\n";
    let inst = parse_instance::<i64>(text).unwrap();
    let Model::Vass(vass) = &inst.model else { panic!("expected a vass") };
    assert_eq!(vass.edges().len(), 2);
    assert_eq!(parse_instance::<i64>(&inst.to_string()).unwrap(), inst);

    let inst = parse_instance::<i64>("slps\nseg 0 0\ncyc 0 1\nseg 0 0\nquery 6 6 -> 6 9\n").unwrap();
    let Model::Slps(s) = &inst.model else { panic!("expected an slps") };
    assert_eq!(s.cycle_count(), 1);

    let inst = parse_instance::<i64>("lps\nseg 1,0\ncyc 0,1 0,-1\nseg -1,0\n").unwrap();
    let Model::Lps(l) = &inst.model else { panic!("expected an lps") };
    assert_eq!(l.len(), 4);

    let err = parse_instance::<i64>("lps\nseg (1,)\n").unwrap_err();
    assert_eq!(err.line, 2);
    let err = parse_instance::<i64>("vass\nstates q\nedge q r 0 0\n").unwrap_err();
    assert!(err.to_string().contains("`r`"));
}

#[test]
fn cone_examples() {
    assert_eq!(rotate_cw(&v(0, 1)).unwrap(), v(1, 0));
    assert_eq!(rotate_ccw(&v(1, 0)).unwrap(), v(0, 1));
    assert_eq!(rotate_cw(&rotate_ccw(&v(3, -2)).unwrap()).unwrap(), v(3, -2));

    assert!(cone_contains_zero(&set(&[(1, 2), (-1, -2)])).unwrap());
    assert!(!cone_contains_zero(&set(&[(1, 0), (0, 1)])).unwrap());
    assert!(cone_contains_zero(&set(&[(2, 1), (-1, 1), (-1, -2)])).unwrap());

    assert!(cone_contains(&set(&[(1, 0), (0, 1)]), &v(3, 5)).unwrap());
    assert!(!cone_contains(&set(&[(1, 0)]), &v(0, 1)).unwrap());
    assert!(cone_contains(&set(&[(2, 1), (-1, 1)]), &v(0, 1)).unwrap());

    let z = zero_combination(&set(&[(1, 2), (-1, -2)])).unwrap().unwrap();
    assert_eq!(z.coefficients(), vec![1, 1]);
    let z = zero_combination(&set(&[(2, 1), (-1, 1), (-1, -2)])).unwrap().unwrap();
    assert_eq!(z.coefficients(), vec![3, 3, 3]);
    assert!(zero_combination(&set(&[(1, 0), (0, 1)])).unwrap().is_none());

    assert_eq!(outermost_pair(&set(&[(1, 0), (1, 1), (0, 1)])).unwrap(), (v(1, 0), v(0, 1)));
    assert_eq!(outermost_pair(&set(&[(2, 1)])).unwrap(), (v(2, 1), v(2, 1)));
    let (a, b) = outermost_pair(&set(&[(1, 1), (2, 2)])).unwrap();
    assert_eq!(a, b);
    assert!(outermost_pair(&set(&[(1, 2), (-1, -2)])).is_err());

    assert_eq!(separating_vector(&set(&[(1, 0), (0, 1)])).unwrap(), v(1, 1));
    assert_eq!(separating_vector(&set(&[(2, 1)])).unwrap(), v(2, 1));
    assert_eq!(separating_vector(&set(&[(1, -1), (1, 1)])).unwrap(), v(2, 0));

    assert_eq!(excluding_vector(&set(&[(1, 0)])).unwrap(), v(0, -1));
    assert_eq!(excluding_vector(&set(&[(0, -1)])).unwrap(), v(0, -1));
    assert_eq!(excluding_vector(&set(&[(-1, 2), (1, -2)])).unwrap(), v(-2, -1));
    assert!(excluding_vector(&set(&[(0, 1)])).is_err());
}

#[test]
fn drift_examples() {
    let e = SchemePath::new(vec![8]);
    assert_eq!(drift_lower_bound(&up(), &e, &v(0, 1), 2, true).unwrap(), 1);
    assert_eq!(drift_lower_bound(&up(), &e, &v(0, 1), 2, false).unwrap(), -6);
    assert!(drift_lower_bound(&up(), &e, &v(0, -1), 2, true).is_err());
}

#[test]
fn shortening_examples() {
    let fam = cut_by_vector(&up(), &SchemePath::new(vec![3]), &at(6, 6), 1, &v(0, 1)).unwrap();
    assert_eq!(fam.gamma, 1);
    assert_eq!(fam.members[0].reduced, SchemePath::new(vec![2]));
    fam.check().unwrap();
    assert!(cut_by_vector(&up(), &SchemePath::new(vec![3]), &at(6, 6), 1, &v(0, 0)).is_err());

    let fam = shorten_close_away(&up(), &SchemePath::new(vec![5]), &at(0, 2), 2, 1).unwrap();
    assert_eq!((fam.gamma, fam.len()), (1, 2));

    let fam = shorten_away_both(&up(), &SchemePath::new(vec![8]), &at(6, 6), 1, 1).unwrap();
    assert_eq!(fam.gamma, 1);
    fam.check().unwrap();
    assert!(shorten_away_both(&up(), &SchemePath::new(vec![6]), &at(6, 6), 1, 1).is_err());
    assert!(shorten_away_both(&up(), &SchemePath::new(vec![8]), &at(5, 6), 1, 1).is_err());

    let updown = Slps::new(vec![v(0, 0); 3], vec![v(0, 1), v(0, -1)]).unwrap();
    let sh = shorten_far(&updown, &SchemePath::new(vec![40, 40]), &at(6, 6), 2).unwrap();
    assert_eq!(sh.delta, v(0, 0));
    sh.check().unwrap();
    assert!(shorten_far(&updown, &SchemePath::new(vec![10, 10]), &at(6, 6), 2).is_err());
}

#[test]
fn loop_lemma_examples() {
    let pi = vec![vec![1, -2], vec![0, 1]];
    assert_eq!(check_loop_lemma(&pi, &[0, 5], 2, 2).unwrap(), (true, true));
    assert_eq!(check_loop_lemma(&[vec![0, -1], vec![0, 1]], &[0, 1], 3, 2).unwrap(), (true, true));
    assert_eq!(check_loop_lemma(&[vec![0, -2], vec![0, 1]], &[0, 2], 1, 2).unwrap(), (false, false));
}

#[test]
fn splitting_examples() {
    let l = Lps::new(vec![word(&[(1, 0)]), word(&[(-1, 0)])], vec![word(&[(0, 1), (0, -1)])]).unwrap();
    let fam = split_lps(&l).unwrap();
    assert_eq!(fam.members.len(), 3);
    assert!(fam.members.iter().all(|m| m.scheme.len() <= 4 * l.len()));

    let flat = Lps::new(vec![word(&[(2, 0)])], vec![]).unwrap();
    assert_eq!(split_lps(&flat).unwrap().members.len(), 1);

    let sole = Lps::new(vec![word(&[]), word(&[])], vec![word(&[(1, 1), (2, -1)])]).unwrap();
    let fam = split_lps(&sole).unwrap();
    assert!(fam.members.iter().any(|m| m.scheme.cycles().contains(&v(3, 0))));
    assert!(fam.members.iter().all(|m| m.scheme.norm().unwrap() <= 2 * 2 * 2));

    let normal = loop_normalize(&Lps::new(vec![word(&[]), word(&[])], vec![word(&[(1, -2), (0, 1)])]).unwrap()).unwrap();
    assert_eq!(normal.cycles(), &[word(&[(1, -1)])]);
    assert_eq!(normal.segments()[0], word(&[(1, -2), (0, 1)]));
}

#[test]
fn bound_and_reach_examples() {
    let two = Slps::new(vec![v(0, 0); 3], vec![v(0, 1), v(1, 0)]).unwrap();
    assert_eq!(norm_bound(&two).unwrap(), 5829);
    assert_eq!(norm_bound(&Slps::new(vec![v(1, 1)], vec![]).unwrap()).unwrap(), 0);
    assert_eq!(norm_bound(&Slps::single(v(0, 0), v(2, 0), v(0, 0))).unwrap(), 95_502_336);

    let r = slps_reach(&up(), &at(0, 0), &at(0, 3)).unwrap();
    assert!(r.reachable);
    assert_eq!(r.exponents, Some(SchemePath::new(vec![3])));
    assert!(!slps_reach(&up(), &at(0, 0), &at(1, 0)).unwrap().reachable);
}

#[test]
fn decider_examples() {
    let text = "vass\nstates q\ninit q\nfinal q\nedge q q -1 1\n";
    let Model::Vass(vass) = parse_instance::<i64>(text).unwrap().model else { panic!("expected a vass") };
    let r = decide_capped_bfs(&vass, &at(2, 0), &at(0, 2), 10).unwrap();
    assert_eq!((r.kind, r.length()), (VerdictKind::Reachable, Some(2)));
    let r = decide_capped_bfs(&vass, &at(0, 0), &at(1, 0), 50).unwrap();
    assert_eq!(r.kind, VerdictKind::UnreachableWithinCap);
    let r = decide_capped_bfs(&vass, &at(3, 3), &at(3, 3), 5).unwrap();
    assert_eq!(r.length(), Some(0));
    assert!(decide_capped_bfs(&vass, &at(20, 0), &at(0, 2), 10).is_err());

    assert_eq!(decide_bounded_witness(&vass, &at(2, 0), &at(0, 2), 2).unwrap().kind, VerdictKind::Reachable);
    assert_eq!(decide_bounded_witness(&vass, &at(2, 0), &at(0, 2), 1).unwrap().kind, VerdictKind::UnreachableWithinCap);

    let text = "vass\nstates a b\ninit a\nfinal b\nedge a a -1 1\nedge a b 0 0\n";
    let Model::Vass(vass) = parse_instance::<i64>(text).unwrap().model else { panic!("expected a vass") };
    let r = decide_bounded_witness(&vass, &at(2, 0), &at(0, 2), 5).unwrap();
    assert_eq!(r.witness.unwrap().word.letters().last(), Some(&v(0, 0)));
}
