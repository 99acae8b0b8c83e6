//! `twovass`: deciding, shortening, verifying and fuzzing from the shell.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use twovass::certificate::{check_result, check_shortening, check_verdict, parse_certificates, render_shortening, Certificate};
use twovass::decider::{decide_bounded_witness, decide_capped_bfs, default_cap, DecideError, Verdict, VerdictKind};
use twovass::instance::{parse_instance, Instance, Model, Query};
use twovass::path::{
    cut_by_vector, shorten_away_both, shorten_away_other, shorten_close_away, shorten_far, shorten_one_visit,
    AwayOther, ShortenError, Shortening,
};
use twovass::slps::{lps_reach, norm_bound, slps_reach_with, split_lps, Budget, ReachError, Usage, WitnessResult};
use twovass::{Configuration, PlaneVector, SchemePath, Slps, Vass, Vector, Word};
use twovass_harness::{run, Inject, Target};

#[derive(Parser)]
#[command(name = "twovass", version, about = "Reachability in two-dimensional VASS")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the query of a vass instance by capped search.
    Decide(DecideArgs),
    /// Decide the query of an slps or lps instance under the norm bound.
    SlpsDecide {
        file: PathBuf,
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = Budget::default().max_states)]
        budget: u64,
    },
    /// Shorten a path of an slps instance, starting from its query source.
    Shorten(ShortenArgs),
    /// Split an lps instance into simple schemes.
    Flatten { file: PathBuf },
    /// Re-check every certificate line of a file.
    Verify { file: PathBuf },
    /// Run a seeded invariant suite.
    Fuzz(FuzzArgs),
    /// Decide every instance of a directory and tabulate the results.
    Bench {
        dir: PathBuf,
        /// Leave out the wall-time column.
        #[arg(long)]
        no_time: bool,
    },
}

#[derive(Args)]
struct DecideArgs {
    file: PathBuf,
    #[arg(long, conflicts_with = "length_bound")]
    cap: Option<u64>,
    #[arg(long)]
    length_bound: Option<u64>,
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct ShortenArgs {
    file: PathBuf,
    /// One of lemma6, thm5, thm6, thm7, thm8, thm9.
    #[arg(long)]
    method: Target,
    /// Cycle exponents, comma separated.
    #[arg(long, value_parser = parse_exponents)]
    exponents: SchemePath,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    /// Cycle-count bound; defaults to the scheme's cycle count.
    #[arg(long)]
    k: Option<u64>,
    /// Index of the first point of the upper part (thm8).
    #[arg(long)]
    split: Option<usize>,
    /// Cut direction `x,y` (lemma6).
    #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
    vector: Option<PlaneVector>,
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct FuzzArgs {
    target: Target,
    #[arg(long, default_value_t = 100)]
    iters: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the minimized reproduction on failure.
    #[arg(long)]
    repro: Option<PathBuf>,
    #[arg(long, hide = true)]
    inject_at: Option<usize>,
}

fn parse_exponents(s: &str) -> Result<SchemePath, String> {
    if s == "-" || s.is_empty() {
        return Ok(SchemePath::new(vec![]));
    }
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| format!("exponent `{t}`: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(SchemePath::new)
}

fn parse_vector(s: &str) -> Result<PlaneVector, String> {
    let body = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (x, y) = body.split_once(',').ok_or("expected x,y")?;
    let x = x.trim().parse().map_err(|e| format!("{e}"))?;
    let y = y.trim().parse().map_err(|e| format!("{e}"))?;
    Ok(Vector::new(x, y))
}

/// An exit status with its diagnostic.
struct Fail(u8, String);

impl Fail {
    fn input(msg: impl Into<String>) -> Self {
        Fail(2, msg.into())
    }
}

type Outcome = Result<(String, u8), Fail>;

fn load(path: &Path) -> Result<Instance, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail::input(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Fail::input(format!("{}: {e}", path.display())))
}

fn query(inst: &Instance, path: &Path) -> Result<Query, Fail> {
    inst.query.clone().ok_or_else(|| Fail::input(format!("{}: no query line", path.display())))
}

fn trace_line(out: &mut String, word: &Word, source: &Configuration) {
    if let Ok(run) = word.run(source) {
        let points: Vec<String> = run.visited.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, "# trace: {}", points.join(" "));
    }
}

fn decide_vass(vass: &Vass, q: &Query, cap: Option<u64>, length: Option<u64>) -> Result<(Verdict, bool), Fail> {
    let (s, t) = (&q.source, &q.target);
    let result = match (cap, length) {
        (_, Some(n)) => decide_bounded_witness(vass, s, t, n).map(|v| (v, true)),
        (Some(c), None) => decide_capped_bfs(vass, s, t, c).map(|v| (v, false)),
        (None, None) => {
            let c = default_cap(vass, s, t).map_err(|e| Fail::input(e.to_string()))?;
            decide_capped_bfs(vass, s, t, c).map(|v| (v, false))
        }
    };
    result.map_err(|e| match e {
        DecideError::Budget(_) => Fail(3, e.to_string()),
        other => Fail::input(other.to_string()),
    })
}

fn verdict_code(kind: VerdictKind) -> u8 {
    match kind {
        VerdictKind::Reachable => 0,
        _ => 1,
    }
}

fn cmd_decide(a: &DecideArgs) -> Outcome {
    let inst = load(&a.file)?;
    let Model::Vass(vass) = &inst.model else {
        return Err(Fail::input(format!("{}: decide needs a vass instance, found {}", a.file.display(), inst.model.kind())));
    };
    let q = query(&inst, &a.file)?;
    let (v, by_length) = decide_vass(vass, &q, a.cap, a.length_bound)?;
    let mut out = format!("instance: {}\n{}", a.file.display(), v.render(vass));
    if by_length {
        out.push_str(" mode=length");
    }
    out.push('\n');
    let _ = writeln!(out, "# explored={}", v.explored);
    if let (true, Some(w)) = (a.trace, &v.witness) {
        trace_line(&mut out, &w.word, &q.source);
    }
    Ok((out, verdict_code(v.kind)))
}

fn reach(inst: &Instance, q: &Query, budget: u64) -> Result<(WitnessResult, Option<Slps>), Fail> {
    let budget = Budget { max_states: budget };
    let found = match &inst.model {
        Model::Slps(s) => slps_reach_with(s, &q.source, &q.target, &budget).map(|r| (r, Some(s.clone()))),
        Model::Lps(l) => lps_reach(l, &q.source, &q.target, &budget).and_then(|r| {
            let member = match r.member {
                Some(i) => Some(split_lps(l)?.members[i].scheme.clone()),
                None => None,
            };
            Ok((r, member))
        }),
        Model::Vass(_) => return Err(Fail::input("slps-decide needs an slps or lps instance, found vass")),
    };
    found.map_err(|e| match e {
        ReachError::Budget(_) => Fail(3, e.to_string()),
        ReachError::Defect(_) => Fail(4, e.to_string()),
        other => Fail::input(other.to_string()),
    })
}

fn cmd_slps_decide(file: &Path, trace: bool, budget: u64) -> Outcome {
    let inst = load(file)?;
    let q = query(&inst, file)?;
    let (r, member) = reach(&inst, &q, budget)?;
    let kind = if r.reachable { VerdictKind::Reachable } else { VerdictKind::Unreachable };
    let mut out = format!("instance: {}\n{r}\n# kind={kind} cap={} explored={}\n", file.display(), r.cap, r.explored);
    if let (true, Some(scheme), Some(e)) = (trace, member, &r.exponents) {
        if let Ok(w) = scheme.instantiate(e) {
            trace_line(&mut out, &w, &q.source);
        }
    }
    Ok((out, if r.reachable { 0 } else { 1 }))
}

fn shortening_failure(e: ShortenError) -> Fail {
    match e {
        ShortenError::Precondition { .. } => Fail(1, e.to_string()),
        ShortenError::Defect(_) => Fail(4, e.to_string()),
        ShortenError::Core(_) => Fail::input(e.to_string()),
    }
}

fn cmd_shorten(a: &ShortenArgs) -> Outcome {
    let inst = load(&a.file)?;
    let Model::Slps(scheme) = &inst.model else {
        return Err(Fail::input(format!("{}: shorten needs an slps instance", a.file.display())));
    };
    let s = query(&inst, &a.file)?.source;
    let p = &a.exponents;
    if p.len() != scheme.cycle_count() {
        return Err(Fail::input(format!("{} exponents given, the scheme has {} cycles", p.len(), scheme.cycle_count())));
    }
    let k = a.k.unwrap_or(scheme.cycle_count() as u64);
    let need = |v: Option<u64>, name: &str| v.ok_or_else(|| Fail::input(format!("--method {} needs --{name}", a.method)));
    let mut out = String::new();
    let members: Vec<Shortening> = match a.method {
        Target::Lemma6 => {
            let c = a.vector.clone().ok_or_else(|| Fail::input("--method lemma6 needs --vector"))?;
            cut_by_vector(scheme, p, &s, need(a.n, "n")?, &c).map_err(shortening_failure)?.members
        }
        Target::Thm5 => shorten_close_away(scheme, p, &s, need(a.m, "m")?, k).map_err(shortening_failure)?.members,
        Target::Thm6 => shorten_away_both(scheme, p, &s, need(a.n, "n")?, k).map_err(shortening_failure)?.members,
        Target::Thm7 => match shorten_away_other(scheme, p, &s, need(a.m, "m")?, need(a.n, "n")?, k)
            .map_err(shortening_failure)?
        {
            AwayOther::CaseI(fam) => fam.members,
            AwayOther::CaseII { vector, cycle } => {
                let _ = writeln!(out, "# case II: cycle {cycle} with effect {vector}");
                Vec::new()
            }
        },
        Target::Thm8 => {
            let split = a.split.ok_or_else(|| Fail::input("--method thm8 needs --split"))?;
            shorten_one_visit(scheme, p, &s, split, need(a.m, "m")?, need(a.n, "n")?, k)
                .map_err(shortening_failure)?
                .members
        }
        Target::Thm9 => vec![shorten_far(scheme, p, &s, k).map_err(shortening_failure)?],
        other => return Err(Fail::input(format!("{other} is not a shortening method"))),
    };
    let name = a.file.display().to_string();
    for sh in &members {
        out.push_str(&render_shortening(sh, &name));
        out.push('\n');
        if a.trace {
            if let Ok(w) = scheme.instantiate(&sh.reduced) {
                trace_line(&mut out, &w, &s);
            }
        }
    }
    Ok((out, 0))
}

fn usage_mark(u: &Usage) -> char {
    match u {
        Usage::Zero => '0',
        Usage::Once => '1',
        Usage::Many => '+',
    }
}

fn cmd_flatten(file: &Path) -> Outcome {
    let inst = load(file)?;
    let lps = match &inst.model {
        Model::Lps(l) => l.clone(),
        Model::Slps(s) => s.to_lps(),
        Model::Vass(_) => return Err(Fail::input("flatten needs an lps or slps instance")),
    };
    let family = split_lps(&lps).map_err(|e| Fail::input(e.to_string()))?;
    let mut out = format!("# {} members of {}\n", family.members.len(), lps);
    for (i, m) in family.members.iter().enumerate() {
        let profile: String = m.profile.iter().map(usage_mark).collect();
        let bound = norm_bound(&m.scheme).map(|b| b.to_string()).unwrap_or_else(|e| e.to_string());
        let _ = writeln!(out, "# member {i} profile={} size={} normbound={bound}", if profile.is_empty() { "-" } else { &profile }, m.scheme.len());
        let member = Instance { model: Model::Slps(m.scheme.clone()), query: inst.query.clone() };
        out.push_str(&member.to_string());
    }
    Ok((out, 0))
}

/// Instance paths in a certificate are tried next to the certificate first.
fn resolve(cert_file: &Path, named: &str) -> PathBuf {
    let beside = cert_file.parent().map(|d| d.join(named));
    match beside {
        Some(p) if p.exists() => p,
        _ => PathBuf::from(named),
    }
}

fn cmd_verify(file: &Path) -> Outcome {
    let text = fs::read_to_string(file).map_err(|e| Fail::input(format!("{}: {e}", file.display())))?;
    let certs = parse_certificates(&text).map_err(|e| Fail::input(format!("{}: {e}", file.display())))?;
    let mut out = String::new();
    let mut bad = 0;
    for (i, cert) in certs.iter().enumerate() {
        let checked = match cert {
            Certificate::Shortening { scheme, .. } => {
                let inst = load(&resolve(file, scheme))?;
                match &inst.model {
                    Model::Slps(s) => check_shortening(cert, s),
                    _ => Err(format!("{scheme} is not an slps instance")),
                }
            }
            Certificate::Result { instance, .. } => check_result(cert, &load(&resolve(file, instance))?),
            Certificate::Verdict { instance, .. } => check_verdict(cert, &load(&resolve(file, instance))?),
        };
        match checked {
            Ok(()) => {
                let _ = writeln!(out, "certificate {}: valid", i + 1);
            }
            Err(why) => {
                bad += 1;
                let _ = writeln!(out, "certificate {}: invalid: {why}", i + 1);
            }
        }
    }
    let _ = writeln!(out, "{} of {} certificates valid", certs.len() - bad, certs.len());
    Ok((out, if bad == 0 { 0 } else { 1 }))
}

fn cmd_fuzz(a: &FuzzArgs) -> Outcome {
    let report = run(a.target, a.iters, a.seed, Inject(a.inject_at));
    let mut out = report.to_string();
    if !out.ends_with('\n') {
        out.push('\n');
    }
    if a.target == Target::Thm10 {
        let seen = report.metric("max_visited_norm").unwrap_or(0);
        let bound = report.metric("min_norm_bound").unwrap_or(0);
        let _ = writeln!(out, "max visited norm {seen} vs normBound {bound}");
    }
    let Some(first) = report.failures.first() else {
        return Ok((out, 0));
    };
    let path = a.repro.clone().unwrap_or_else(|| PathBuf::from(format!("{}-seed{}.repro", a.target, a.seed)));
    let text = format!(
        "# fuzz {} seed={} iteration={}\n# {}\n{}",
        a.target, a.seed, first.iteration, first.message, first.minimized
    );
    fs::write(&path, text).map_err(|e| Fail(1, format!("{}: {e}", path.display())))?;
    let _ = writeln!(out, "minimized reproduction written to {}", path.display());
    Ok((out, 1))
}

fn bench_row(path: &Path) -> Result<(String, String, String, u64), String> {
    let inst = load(path).map_err(|Fail(_, m)| m)?;
    let q = query(&inst, path).map_err(|Fail(_, m)| m)?;
    match &inst.model {
        Model::Vass(vass) => {
            let (v, _) = decide_vass(vass, &q, None, None).map_err(|Fail(_, m)| m)?;
            let len = v.length().map_or("-".into(), |n| n.to_string());
            Ok((inst.model.kind().into(), v.kind.to_string(), len, v.explored))
        }
        _ => {
            let (r, member) = reach(&inst, &q, Budget::default().max_states).map_err(|Fail(_, m)| m)?;
            let kind = if r.reachable { VerdictKind::Reachable } else { VerdictKind::Unreachable };
            let len = match (member, &r.exponents) {
                (Some(s), Some(e)) => s.path_len(e).map_or("-".into(), |n| n.to_string()),
                _ => "-".into(),
            };
            Ok((inst.model.kind().into(), kind.to_string(), len, r.explored))
        }
    }
}

fn cmd_bench(dir: &Path, no_time: bool) -> Outcome {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Fail::input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("vass" | "slps" | "lps")))
        .collect();
    files.sort();
    let mut out = String::from("instance\tmodel\tverdict\tlength\texplored");
    out.push_str(if no_time { "\n" } else { "\ttime_ms\n" });
    for f in &files {
        let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let start = Instant::now();
        let row = bench_row(f);
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        match row {
            Ok((model, verdict, len, explored)) => {
                let _ = write!(out, "{name}\t{model}\t{verdict}\t{len}\t{explored}");
            }
            Err(e) => {
                let _ = write!(out, "{name}\t-\terror: {e}\t-\t-");
            }
        }
        if no_time {
            out.push('\n');
        } else {
            let _ = writeln!(out, "\t{ms:.1}");
        }
    }
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Decide(a) => cmd_decide(a),
        Command::SlpsDecide { file, trace, budget } => cmd_slps_decide(file, *trace, *budget),
        Command::Shorten(a) => cmd_shorten(a),
        Command::Flatten { file } => cmd_flatten(file),
        Command::Verify { file } => cmd_verify(file),
        Command::Fuzz(a) => cmd_fuzz(a),
        Command::Bench { dir, no_time } => cmd_bench(dir, *no_time),
    };
    match outcome {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Fail(code, msg)) => {
            eprintln!("twovass: {msg}");
            ExitCode::from(code)
        }
    }
}
