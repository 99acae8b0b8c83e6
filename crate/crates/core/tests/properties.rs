use std::collections::BTreeSet;

use proptest::collection::vec;
use proptest::prelude::*;
use twovass::cone::{cone_contains_zero, separating_vector, zero_combination};
use twovass::decider::{brute_force_oracle, decide_capped_bfs};
use twovass::instance::{parse_instance, Instance, Model, Query};
use twovass::path::cut_by_vector;
use twovass::slps::check_loop_lemma;
use twovass::{Edge, PlaneVector, Point, SchemePath, Slps, Vass, Vector, VectorSet, Word};

fn letter(n: i64) -> impl Strategy<Value = PlaneVector> {
    (-n..=n, -n..=n).prop_map(|(x, y)| Vector::new(x, y))
}

fn letters(n: i64, max: usize) -> impl Strategy<Value = Vec<PlaneVector>> {
    vec(letter(n), 0..=max)
}

fn add(a: (i64, i64), b: &PlaneVector) -> (i64, i64) {
    (a.0 + b.x, a.1 + b.y)
}

proptest! {
    #[test]
    fn runs_step_letter_by_letter(ls in letters(3, 12), sx in 0i64..5, sy in 0i64..5) {
        let run = Word::new(ls.clone()).run(&Point::new(sx, sy).unwrap()).unwrap();
        prop_assert_eq!(run.visited.len(), ls.len() + 1);
        let mut at = (sx, sy);
        let mut first_bad = None;
        for (i, l) in ls.iter().enumerate() {
            at = add(at, l);
            prop_assert_eq!((run.visited[i + 1].x, run.visited[i + 1].y), at);
            if first_bad.is_none() && (at.0 < 0 || at.1 < 0) {
                first_bad = Some(i + 1);
            }
        }
        prop_assert_eq!(run.first_violation, first_bad);
        prop_assert_eq!(run.admissible, first_bad.is_none());
    }

    #[test]
    fn effect_is_additive(u in letters(5, 8), w in letters(5, 8)) {
        let (u, w) = (Word::new(u), Word::new(w));
        let sum = u.effect().unwrap().checked_add(&w.effect().unwrap()).unwrap();
        prop_assert_eq!(u.concat(&w).effect().unwrap(), sum);
    }

    #[test]
    fn instantiated_targets_sum_up(
        segs in vec(letter(2), 1..=4),
        cycs in vec(letter(2), 3),
        exps in vec(0u64..6, 3),
    ) {
        let k = segs.len() - 1;
        let scheme = Slps::new(segs.clone(), cycs[..k].to_vec()).unwrap();
        let path = SchemePath::new(exps[..k].to_vec());
        let mut want = (0i64, 0i64);
        for s in &segs {
            want = add(want, s);
        }
        for (c, &n) in cycs[..k].iter().zip(&exps) {
            want = (want.0 + n as i64 * c.x, want.1 + n as i64 * c.y);
        }
        let w = scheme.instantiate(&path).unwrap();
        prop_assert_eq!(w.len() as u64, segs.len() as u64 + exps[..k].iter().sum::<u64>());
        prop_assert_eq!(w.effect().unwrap(), Vector::new(want.0, want.1));
    }

    #[test]
    fn instances_print_and_parse_back(
        edges in vec((0usize..3, letter(3), 0usize..3), 0..6),
        sx in 0i64..9, ty in 0i64..9,
    ) {
        let states = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let edges = edges.into_iter().map(|(from, letter, to)| Edge { from, letter, to }).collect();
        let vass = Vass::new(states, edges, BTreeSet::from([0]), BTreeSet::from([1, 2])).unwrap();
        let query = Query { source: Point::new(sx, 0).unwrap(), target: Point::new(0, ty).unwrap() };
        let inst = Instance { model: Model::Vass(vass), query: Some(query) };
        prop_assert_eq!(parse_instance::<i64>(&inst.to_string()).unwrap(), inst);
    }

    #[test]
    fn zero_combinations_are_valid(c in vec(letter(4), 1..=6)) {
        let set = VectorSet::new(c.clone());
        let norm = c.iter().map(|v| v.x.abs().max(v.y.abs())).max().unwrap();
        let found = zero_combination(&set).unwrap();
        prop_assert_eq!(found.is_some(), cone_contains_zero(&set).unwrap());
        if let Some(z) = found {
            let mut sum = (0, 0);
            for (v, k) in z.terms() {
                prop_assert!(c.contains(v));
                prop_assert!(*k >= 1 && *k <= (2 * norm * norm).max(1));
                sum = (sum.0 + k * v.x, sum.1 + k * v.y);
            }
            prop_assert_eq!(sum, (0, 0));
            prop_assert!(!z.terms().is_empty() && z.terms().len() <= 3);
        } else {
            let p = separating_vector(&set).unwrap();
            prop_assert!(p.x.abs().max(p.y.abs()) <= 2 * norm);
            prop_assert!(c.iter().all(|v| p.x * v.x + p.y * v.y > 0));
        }
    }

    #[test]
    fn loop_lemma_sides_agree(
        pi in vec(vec(-2i64..=2, 2), 1..=4),
        s in vec(0i64..8, 2),
        m in 0u64..=4,
    ) {
        let (a, b) = check_loop_lemma(&pi, &s, m, 2).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn vertical_cuts_replay(n in 3u64..30, down in 0u64..3) {
        let scheme = Slps::new(vec![Vector::zero(); 3], vec![Vector::new(0, 1), Vector::new(0, -1)]).unwrap();
        let path = SchemePath::new(vec![n, down]);
        let fam = cut_by_vector(&scheme, &path, &Point::new(6, 6).unwrap(), 1, &Vector::new(0, 1)).unwrap();
        for sh in &fam.members {
            let w = scheme.instantiate(&sh.reduced).unwrap();
            let mut at = (6i64, 6i64);
            for l in w.letters() {
                at = add(at, l);
                prop_assert!(at.0 >= 0 && at.1 >= 0);
            }
            let before = scheme.instantiate(&path).unwrap().effect().unwrap();
            prop_assert_eq!((before.x - at.0 + 6, before.y - at.1 + 6), (sh.delta.x, sh.delta.y));
        }
    }

    #[test]
    fn capped_search_matches_the_naive_oracle(
        edges in vec((0usize..2, letter(2), 0usize..2), 1..5),
        s in (0i64..4, 0i64..4),
        t in (0i64..4, 0i64..4),
    ) {
        let edges = edges.into_iter().map(|(from, letter, to)| Edge { from, letter, to }).collect();
        let vass = Vass::new(vec!["p".into(), "q".into()], edges, BTreeSet::from([0]), BTreeSet::from([1])).unwrap();
        let (s, t) = (Point::new(s.0, s.1).unwrap(), Point::new(t.0, t.1).unwrap());
        let got = decide_capped_bfs(&vass, &s, &t, 12).unwrap();
        let want = brute_force_oracle(&vass, &s, &t, 12, 1_000_000).unwrap();
        prop_assert_eq!(got.kind, want.kind);
        prop_assert_eq!(got.length(), want.length());
        prop_assert!(got.check(&vass, &s, &t).is_ok());
    }
}
