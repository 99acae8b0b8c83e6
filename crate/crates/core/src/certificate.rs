//! One-line certificate formats and their independent re-checking.
//!
//! ```text
//! shortening: scheme=<file> original=<n1,..> reduced=<n1,..> delta=<x,y> source=<x,y>
//! instance: <file>
//! result: reachable=<bool> member=<i> exponents=<n1,..> maxnorm=<n>
//! verdict: kind=<k> cap=<n> length=<n> word=<x1,y1;...> states=<q0,...>
//! ```
//!
//! `result` and `verdict` lines refer to the most recent `instance` line.
//! A verdict produced by length-bounded search carries a trailing
//! `mode=length`, since its `cap` is then a length bound.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::decider::{
    check_witness, decide_bounded_witness, decide_capped_bfs, Verdict, VerdictKind, Witness,
};
use crate::instance::{Instance, Model, Query};
use crate::path::Shortening;
use crate::scheme::SchemePath;
use crate::slps::{slps_reach, split_lps};
use crate::vass::Vass;
use crate::vector::{Point, Vector};
use crate::word::Word;
use crate::{Configuration, PlaneVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Shortening {
        scheme: String,
        original: SchemePath,
        reduced: SchemePath,
        delta: PlaneVector,
        source: Configuration,
    },
    Result {
        instance: String,
        reachable: bool,
        member: Option<usize>,
        exponents: Option<SchemePath>,
        max_norm: Option<u64>,
    },
    Verdict {
        instance: String,
        kind: VerdictKind,
        cap: u64,
        by_length: bool,
        witness: Option<(Word, Vec<String>)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct CertificateParseError {
    pub line: usize,
    pub message: String,
}

/// `shortening: …` for a shortening whose scheme lives in `scheme_file`.
pub fn render_shortening(sh: &Shortening, scheme_file: &str) -> String {
    format!(
        "shortening: scheme={scheme_file} original={} reduced={} delta={},{} source={},{}",
        sh.original,
        sh.reduced,
        sh.delta.x,
        sh.delta.y,
        sh.source.x(),
        sh.source.y()
    )
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dash = |o: Option<String>| o.unwrap_or_else(|| "-".into());
        match self {
            Certificate::Shortening { scheme, original, reduced, delta, source } => write!(
                f,
                "shortening: scheme={scheme} original={original} reduced={reduced} delta={},{} source={},{}",
                delta.x,
                delta.y,
                source.x(),
                source.y()
            ),
            Certificate::Result { reachable, member, exponents, max_norm, .. } => write!(
                f,
                "result: reachable={reachable} member={} exponents={} maxnorm={}",
                dash(member.map(|m| m.to_string())),
                dash(exponents.as_ref().map(|e| e.to_string())),
                dash(max_norm.map(|n| n.to_string()))
            ),
            Certificate::Verdict { kind, cap, by_length, witness, .. } => {
                let (length, word, states) = match witness {
                    Some((w, s)) => (w.len().to_string(), w.to_string(), s.join(",")),
                    None => ("-".into(), "-".into(), "-".into()),
                };
                write!(f, "verdict: kind={kind} cap={cap} length={length} word={word} states={states}")?;
                if *by_length {
                    f.write_str(" mode=length")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses every certificate line of `text`, skipping blanks and `#` comments.
pub fn parse_certificates(text: &str) -> Result<Vec<Certificate>, CertificateParseError> {
    let mut out = Vec::new();
    let mut instance: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| CertificateParseError { line: i + 1, message };
        let (head, rest) = line.split_once(':').ok_or_else(|| err("missing ':' after the line kind".into()))?;
        if head == "instance" {
            instance = Some(rest.trim().to_string());
            continue;
        }
        let fields = fields(rest).map_err(err)?;
        let cert = match head {
            "shortening" => parse_shortening(&fields),
            "result" => {
                let inst = instance.clone().ok_or_else(|| err("result line without a preceding instance line".into()))?;
                parse_result(&fields, inst)
            }
            "verdict" => {
                let inst = instance.clone().ok_or_else(|| err("verdict line without a preceding instance line".into()))?;
                parse_verdict(&fields, inst)
            }
            other => Err(format!("unknown certificate kind {other}")),
        };
        out.push(cert.map_err(err)?);
    }
    Ok(out)
}

type Fields<'a> = HashMap<&'a str, &'a str>;

fn fields(rest: &str) -> Result<Fields<'_>, String> {
    let mut map = HashMap::new();
    for tok in rest.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| format!("expected key=value, found {tok}"))?;
        if map.insert(k, v).is_some() {
            return Err(format!("field {k} given twice"));
        }
    }
    Ok(map)
}

fn field<'a>(f: &Fields<'a>, key: &str) -> Result<&'a str, String> {
    f.get(key).copied().ok_or_else(|| format!("missing field {key}"))
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Result<T, String> {
    s.parse().map_err(|_| format!("{what}: {s} is not a valid number"))
}

fn exponents(s: &str) -> Result<SchemePath, String> {
    if s == "-" {
        return Ok(SchemePath::new(vec![]));
    }
    s.split(',').map(|n| number::<u64>(n, "exponent")).collect::<Result<Vec<_>, _>>().map(SchemePath::new)
}

fn pair(s: &str) -> Result<PlaneVector, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, found {s}"))?;
    Ok(Vector::new(number(x, "coordinate")?, number(y, "coordinate")?))
}

fn dashed<T>(s: &str, f: impl Fn(&str) -> Result<T, String>) -> Result<Option<T>, String> {
    if s == "-" {
        Ok(None)
    } else {
        f(s).map(Some)
    }
}

fn parse_shortening(f: &Fields) -> Result<Certificate, String> {
    let source = pair(field(f, "source")?)?;
    Ok(Certificate::Shortening {
        scheme: field(f, "scheme")?.to_string(),
        original: exponents(field(f, "original")?)?,
        reduced: exponents(field(f, "reduced")?)?,
        delta: pair(field(f, "delta")?)?,
        source: Point::new(source.x, source.y).map_err(|e| e.to_string())?,
    })
}

fn parse_result(f: &Fields, instance: String) -> Result<Certificate, String> {
    let reachable = match field(f, "reachable")? {
        "true" => true,
        "false" => false,
        other => return Err(format!("reachable must be true or false, found {other}")),
    };
    Ok(Certificate::Result {
        instance,
        reachable,
        member: dashed(field(f, "member")?, |s| number(s, "member"))?,
        exponents: dashed(field(f, "exponents")?, exponents)?,
        max_norm: dashed(field(f, "maxnorm")?, |s| number(s, "maxnorm"))?,
    })
}

fn parse_verdict(f: &Fields, instance: String) -> Result<Certificate, String> {
    let kind = field(f, "kind")?.parse()?;
    let cap = number(field(f, "cap")?, "cap")?;
    let by_length = match f.get("mode") {
        None => false,
        Some(&"length") => true,
        Some(other) => return Err(format!("unknown mode {other}")),
    };
    let length: Option<usize> = dashed(field(f, "length")?, |s| number(s, "length"))?;
    let witness = match length {
        None => None,
        Some(n) => {
            let word_text = field(f, "word")?;
            let letters = if word_text.is_empty() {
                vec![]
            } else {
                word_text.split(';').map(pair).collect::<Result<Vec<_>, _>>()?
            };
            if letters.len() != n {
                return Err(format!("length {n} does not match a word of {} letters", letters.len()));
            }
            let states = field(f, "states")?.split(',').map(str::to_string).collect();
            Some((Word::new(letters), states))
        }
    };
    Ok(Certificate::Verdict { instance, kind, cap, by_length, witness })
}

fn query(instance: &Instance) -> Result<&Query, String> {
    instance.query.as_ref().ok_or_else(|| "instance has no query line".to_string())
}

/// Re-checks a `result` certificate against its instance. Negative claims
/// are re-decided.
pub fn check_result(cert: &Certificate, instance: &Instance) -> Result<(), String> {
    let Certificate::Result { reachable, member, exponents, max_norm, .. } = cert else {
        return Err("not a result certificate".into());
    };
    let q = query(instance)?;
    let schemes = match &instance.model {
        Model::Slps(s) => vec![s.clone()],
        Model::Lps(l) => split_lps(l).map_err(|e| e.to_string())?.members.into_iter().map(|m| m.scheme).collect(),
        Model::Vass(_) => return Err("result certificates need an slps or lps instance".into()),
    };
    if !reachable {
        for s in &schemes {
            if slps_reach(s, &q.source, &q.target).map_err(|e| e.to_string())?.reachable {
                return Err("claimed unreachable, but a witness exists".into());
            }
        }
        return Ok(());
    }
    let Some(m) = member else {
        return Err("reachable result without a member".into());
    };
    // a scheme without cycles prints its empty exponent tuple as "-"
    let e = exponents.clone().unwrap_or_else(|| SchemePath::new(vec![]));
    let scheme = schemes.get(*m).ok_or_else(|| format!("member {m} does not exist"))?;
    let run = scheme.instantiate(&e).and_then(|w| w.run(&q.source)).map_err(|e| e.to_string())?;
    if let Some(i) = run.first_violation {
        return Err(format!("witness run leaves N² at point {i}"));
    }
    if run.target() != &q.target.to_vector() {
        return Err(format!("witness ends at {}, not {}", run.target(), q.target));
    }
    let seen = run.max_norm().map_err(|e| e.to_string())? as u64;
    if let Some(n) = max_norm {
        if *n != seen {
            return Err(format!("maxnorm {n} does not match the replayed {seen}"));
        }
    }
    Ok(())
}

fn witness_of(vass: &Vass, word: &Word, states: &[String]) -> Result<Witness, String> {
    let states = states
        .iter()
        .map(|s| vass.state_index(s).ok_or_else(|| format!("unknown state {s}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Witness { word: word.clone(), states })
}

/// Re-checks a `verdict` certificate. Reachable claims are replayed; the
/// other kinds are re-decided with the same cap.
pub fn check_verdict(cert: &Certificate, instance: &Instance) -> Result<(), String> {
    let Certificate::Verdict { kind, cap, by_length, witness, .. } = cert else {
        return Err("not a verdict certificate".into());
    };
    let Model::Vass(vass) = &instance.model else {
        return Err("verdict certificates need a vass instance".into());
    };
    let q = query(instance)?;
    match (kind, witness) {
        (VerdictKind::Reachable, Some((word, states))) => {
            check_witness(vass, &q.source, &q.target, &witness_of(vass, word, states)?)?;
            if *by_length && word.len() as u64 > *cap {
                return Err(format!("witness longer than the length bound {cap}"));
            }
            if !by_length {
                let run = word.run(&q.source).map_err(|e| e.to_string())?;
                if run.visited.iter().any(|p| p.x as u64 > *cap || p.y as u64 > *cap) {
                    return Err(format!("witness leaves the cap {cap}"));
                }
            }
            Ok(())
        }
        (VerdictKind::Reachable, None) => Err("reachable verdict without a witness".into()),
        (VerdictKind::UnreachableWithinCap, None) => {
            let again: Verdict = if *by_length {
                decide_bounded_witness(vass, &q.source, &q.target, *cap)
            } else {
                decide_capped_bfs(vass, &q.source, &q.target, *cap)
            }
            .map_err(|e| e.to_string())?;
            if again.kind != VerdictKind::UnreachableWithinCap {
                return Err("claimed unreachable within the cap, but a witness exists".into());
            }
            Ok(())
        }
        (VerdictKind::Unreachable, _) => Err("general automata never get an unconditional verdict".into()),
        (_, Some(_)) => Err("unreachable verdict carries a witness".into()),
    }
}

/// Re-checks a `shortening` certificate against the scheme it names.
pub fn check_shortening(cert: &Certificate, scheme: &crate::Slps) -> Result<(), String> {
    let Certificate::Shortening { original, reduced, delta, source, .. } = cert else {
        return Err("not a shortening certificate".into());
    };
    Shortening {
        scheme: scheme.clone(),
        original: original.clone(),
        reduced: reduced.clone(),
        delta: delta.clone(),
        source: source.clone(),
    }
    .check()
    .map_err(|v| v.to_string())
}

/// The certificate for a verdict of `vass` on `instance_file`.
pub fn verdict_certificate(v: &Verdict, vass: &Vass, instance_file: &str, by_length: bool) -> Certificate {
    Certificate::Verdict {
        instance: instance_file.to_string(),
        kind: v.kind,
        cap: v.cap,
        by_length,
        witness: v.witness.as_ref().map(|w| {
            (w.word.clone(), w.states.iter().map(|&q| vass.state_name(q).to_string()).collect())
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::parse_instance;

    const LOOP: &str = "vass\nstates q\ninit q\nfinal q\nedge q q -1 1\nquery 2 0 -> 0 2\n";
    const UP: &str = "slps\nseg 0 0\ncyc 0 1\nseg 0 0\nquery 0 0 -> 0 3\n";

    #[test]
    fn round_trip_lines() {
        let text = "shortening: scheme=up.slps original=3 reduced=2 delta=0,1 source=6,6\n\
                    instance: loop.vass\n\
                    verdict: kind=Reachable cap=10 length=2 word=-1,1;-1,1 states=q,q,q\n\
                    result: reachable=false member=- exponents=- maxnorm=-\n";
        let certs = parse_certificates(text).unwrap();
        assert_eq!(certs.len(), 3);
        let rendered: Vec<String> = certs.iter().map(|c| c.to_string()).collect();
        assert_eq!(rendered[0], "shortening: scheme=up.slps original=3 reduced=2 delta=0,1 source=6,6");
        assert_eq!(rendered[1], "verdict: kind=Reachable cap=10 length=2 word=-1,1;-1,1 states=q,q,q");
        assert_eq!(rendered[2], "result: reachable=false member=- exponents=- maxnorm=-");
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_certificates("\nresult: reachable=true").unwrap_err();
        assert_eq!(err.line, 2);
        let err = parse_certificates("shortening: scheme=a original=1 reduced=x delta=0,0 source=0,0").unwrap_err();
        assert!(err.message.contains("exponent"));
    }

    #[test]
    fn verdicts_recheck() {
        let inst = parse_instance::<i64>(LOOP).unwrap();
        let good = parse_certificates(
            "instance: x\nverdict: kind=Reachable cap=10 length=2 word=-1,1;-1,1 states=q,q,q",
        )
        .unwrap();
        check_verdict(&good[0], &inst).unwrap();
        let bad = parse_certificates("instance: x\nverdict: kind=UnreachableWithinCap cap=10 length=- word=- states=-")
            .unwrap();
        assert!(check_verdict(&bad[0], &inst).is_err());
        let short = parse_certificates(
            "instance: x\nverdict: kind=UnreachableWithinCap cap=1 length=- word=- states=- mode=length",
        )
        .unwrap();
        check_verdict(&short[0], &inst).unwrap();
    }

    #[test]
    fn results_recheck() {
        let inst = parse_instance::<i64>(UP).unwrap();
        let good = parse_certificates("instance: x\nresult: reachable=true member=0 exponents=3 maxnorm=3").unwrap();
        check_result(&good[0], &inst).unwrap();
        let wrong = parse_certificates("instance: x\nresult: reachable=true member=0 exponents=2 maxnorm=2").unwrap();
        assert!(check_result(&wrong[0], &inst).is_err());
        let denied = parse_certificates("instance: x\nresult: reachable=false member=- exponents=- maxnorm=-").unwrap();
        assert!(check_result(&denied[0], &inst).is_err());
    }
}
