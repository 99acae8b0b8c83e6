mod common;

use std::fs;

use common::{code, golden_dir, goldens, stdout, twovass};

#[test]
fn goldens_match_expected_output() {
    let all = goldens();
    assert!(all.len() >= 20);
    for g in &all {
        let out = g.run();
        assert_eq!(code(&out), g.exit, "{}: {}", g.name, String::from_utf8_lossy(&out.stderr));
        assert_eq!(stdout(&out), g.expected, "{}", g.name);
    }
}

#[test]
fn decide_exit_codes() {
    let dir = golden_dir();
    let out = twovass(&dir, &["decide", "01-loop-reach.vass", "--cap", "10"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("kind=Reachable cap=10 length=2 word=-1,1;-1,1"));

    let out = twovass(&dir, &["decide", "02-loop-unreachable.vass", "--cap", "50"]);
    assert_eq!(code(&out), 1);

    let out = twovass(&dir, &["decide", "no-such-file.vass"]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());

    let out = twovass(&dir, &["decide", "11-up.slps"]);
    assert_eq!(code(&out), 2);

    let out = twovass(&dir, &["decide", "01-loop-reach.vass", "--cap", "1"]);
    assert_eq!(code(&out), 2, "cap below the query norm");
}

#[test]
fn cap_and_length_bound_conflict() {
    let out = twovass(&golden_dir(), &["decide", "01-loop-reach.vass", "--cap", "3", "--length-bound", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn instance_without_query_is_an_input_error() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("m.vass"), "vass\nstates q\ninit q\nfinal q\nedge q q 1 0\n").unwrap();
    let out = twovass(tmp.path(), &["decide", "m.vass"]);
    assert_eq!(code(&out), 2);
    fs::write(tmp.path().join("bad.vass"), "vass\nstates q\ninit r\n").unwrap();
    let out = twovass(tmp.path(), &["decide", "bad.vass"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn slps_decide_reports_the_cap() {
    let out = twovass(&golden_dir(), &["slps-decide", "11-up.slps"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("result: reachable=true member=0 exponents=3 maxnorm=3"));
    assert!(text.contains("kind=Reachable cap="));

    let out = twovass(&golden_dir(), &["slps-decide", "12-up-sideways.slps"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("# kind=Unreachable cap="));
}

#[test]
fn verify_accepts_fresh_certificates() {
    let dir = golden_dir();
    let tmp = tempfile::tempdir().unwrap();
    let mut text = String::new();
    for args in [
        &["decide", "06-forced-zero-edge.vass", "--cap", "10"][..],
        &["decide", "09-parity.vass", "--cap", "30"],
        &["slps-decide", "14-dip.slps"],
        &["shorten", "20-far.slps", "--method", "thm9", "--exponents", "40,40"],
    ] {
        text.push_str(&stdout(&twovass(&dir, args)));
    }
    let cert = tmp.path().join("all.cert");
    fs::write(&cert, &text).unwrap();
    let out = twovass(&dir, &["verify", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("4 of 4 certificates valid"));
}

#[test]
fn verify_names_the_broken_invariant() {
    let dir = golden_dir();
    let out = twovass(&dir, &["verify", "24-tampered.cert"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("effect mismatch"));

    let tmp = tempfile::tempdir().unwrap();
    let cert = tmp.path().join("x.cert");
    let inadmissible = "shortening: scheme=20-far.slps original=40,40 reduced=0,40 delta=0,40 source=6,6\n";
    fs::write(&cert, inadmissible).unwrap();
    let out = twovass(&dir, &["verify", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not admissible"));

    let wrong_witness = "instance: 01-loop-reach.vass\nverdict: kind=Reachable cap=10 length=1 word=-1,1 states=q,q\n";
    fs::write(&cert, wrong_witness).unwrap();
    let out = twovass(&dir, &["verify", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("ends at"));

    fs::write(&cert, "verdict kind=Reachable\n").unwrap();
    let out = twovass(&dir, &["verify", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn shorten_rejects_missing_parameters() {
    let dir = golden_dir();
    let out = twovass(&dir, &["shorten", "18-close-away.slps", "--method", "thm5", "--exponents", "5"]);
    assert_eq!(code(&out), 2);
    let out = twovass(&dir, &["shorten", "18-close-away.slps", "--method", "thm5", "--exponents", "5,1", "--m", "2"]);
    assert_eq!(code(&out), 2);
    let out = twovass(&dir, &["shorten", "18-close-away.slps", "--method", "decider", "--exponents", "5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn flatten_members_parse_back() {
    let out = twovass(&golden_dir(), &["flatten", "17-effect-split.lps"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let members: Vec<&str> = text.split("# member").skip(1).collect();
    assert_eq!(members.len(), 3);
    for m in members {
        let body = m.split_once('\n').unwrap().1;
        twovass::instance::parse_instance::<i64>(body).unwrap();
    }
    assert!(text.contains("cyc 3 0"));
}

#[test]
fn fuzz_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let a = twovass(tmp.path(), &["fuzz", "lemma1", "--iters", "1000", "--seed", "7"]);
    let b = twovass(tmp.path(), &["fuzz", "lemma1", "--iters", "1000", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert!(stdout(&a).starts_with("fuzz lemma1 seed=7: 1000/1000 passed"));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn fuzz_bound_prints_the_observed_norm() {
    let tmp = tempfile::tempdir().unwrap();
    let out = twovass(tmp.path(), &["fuzz", "thm10", "--iters", "50", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let line = text.lines().find(|l| l.starts_with("max visited norm")).unwrap();
    let nums: Vec<u64> = line.split_whitespace().filter_map(|w| w.parse().ok()).collect();
    assert_eq!(nums.len(), 2);
    assert!(nums[0] <= nums[1] && nums[1] >= 2915);
}

#[test]
fn fuzz_failure_writes_a_minimized_repro() {
    let tmp = tempfile::tempdir().unwrap();
    let out = twovass(tmp.path(), &["fuzz", "decider", "--iters", "20", "--seed", "4", "--inject-at", "2"]);
    assert_eq!(code(&out), 1);
    let repro = fs::read_to_string(tmp.path().join("decider-seed4.repro")).unwrap();
    assert!(repro.contains("injected"));
    let body: String = repro.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let inst = twovass::instance::parse_instance::<i64>(&body).unwrap();
    match inst.model {
        twovass::instance::Model::Vass(v) => assert_eq!(v.edges().len(), 2),
        other => panic!("unexpected model {}", other.kind()),
    }
}

#[test]
fn bench_tabulates_every_instance() {
    let out = twovass(&golden_dir(), &["bench", ".", "--no-time"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 22);
    assert!(rows.iter().any(|r| r.starts_with("11-up.slps\tslps\tReachable\t5\t")));
    assert!(rows.iter().any(|r| r.starts_with("15-balanced.lps\tlps\t")));
    assert!(rows.iter().all(|r| !r.contains("error")));
    let again = twovass(&golden_dir(), &["bench", ".", "--no-time"]);
    assert_eq!(again.stdout, out.stdout);

    let tmp = tempfile::tempdir().unwrap();
    let out = twovass(tmp.path(), &["bench", "."]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 1);
}
