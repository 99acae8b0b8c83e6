//! Instance files: a `vass`, `lps` or `slps` model plus an optional
//! reachability query.
//!
//! ```text
//! vass
//! states q0 q1
//! init q0
//! final q1
//! edge q0 q0 -1 1
//! edge q0 q1 0 0
//! query 2 0 -> 0 2
//! ```
//!
//! Schemes list their segments with `seg` and cycles with `cyc`. In `slps`
//! files the payload is one vector (`seg 0 0`, `seg 0,0` or `seg (0,0)`); in
//! `lps` files it is a space separated list of `x,y` pairs, possibly empty
//! for `seg`. A scheme can also be written inline on the header line, with
//! cycles in brackets: `slps (0,0) [(0,1)]* (0,0)`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::scheme::{Lps, Slps};
use crate::vass::{Edge, Vass};
use crate::vector::{Point, Vector};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model<T = i64> {
    Vass(Vass<T>),
    Lps(Lps<T>),
    Slps(Slps<T>),
}

impl<T> Model<T> {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Vass(_) => "vass",
            Model::Lps(_) => "lps",
            Model::Slps(_) => "slps",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query<T = i64> {
    pub source: Point<T>,
    pub target: Point<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance<T = i64> {
    pub model: Model<T>,
    pub query: Option<Query<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected `{token}`, expected {expected}")]
    Syntax { token: String, expected: &'static str },
    #[error("`{0}` is not an integer")]
    NotInteger(String),
    #[error("state `{0}` is not declared")]
    UndeclaredState(String),
    #[error("{0}")]
    Semantic(String),
    #[error("missing header line (vass, lps or slps)")]
    MissingHeader,
}

type Parsed<T> = Result<T, ParseError>;

/// A whitespace-delimited token with its 1-based position.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column: self.column, kind }
    }

    fn syntax(&self, expected: &'static str) -> ParseError {
        self.err(ParseErrorKind::Syntax { token: self.text.to_string(), expected })
    }
}

fn tokenize(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let content = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token { text: &content[s..i], line: line_no, column: content[..s].chars().count() + 1 });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &content[s..], line: line_no, column: content[..s].chars().count() + 1 });
    }
    out
}

fn integer<T: Scalar>(tok: &Token<'_>, text: &str) -> Parsed<T> {
    if text.is_empty() {
        return Err(tok.syntax("an integer"));
    }
    text.parse::<T>().map_err(|_| tok.err(ParseErrorKind::NotInteger(text.to_string())))
}

/// `x,y` or `(x,y)` as a single token.
fn pair<T: Scalar>(tok: &Token<'_>) -> Parsed<Vector<T>> {
    let body = match tok.text.strip_prefix('(') {
        Some(rest) => rest.strip_suffix(')').ok_or_else(|| tok.syntax("a vector `(x,y)`"))?,
        None => tok.text,
    };
    let (x, y) = body.split_once(',').ok_or_else(|| tok.syntax("a vector `x,y`"))?;
    if x.is_empty() || y.is_empty() || y.contains(',') {
        return Err(tok.syntax("a vector `x,y`"));
    }
    Ok(Vector::new(integer(tok, x)?, integer(tok, y)?))
}

fn point<T: Scalar>(x: &Token<'_>, y: &Token<'_>) -> Parsed<Point<T>> {
    Point::new(integer(x, x.text)?, integer(y, y.text)?)
        .map_err(|e| x.err(ParseErrorKind::Semantic(e.to_string())))
}

pub fn parse_instance<T: Scalar>(text: &str) -> Parsed<Instance<T>> {
    let lines: Vec<Vec<Token<'_>>> = text
        .lines()
        .enumerate()
        .map(|(i, l)| tokenize(i + 1, l))
        .filter(|toks| !toks.is_empty())
        .collect();
    let Some((header, body)) = lines.split_first() else {
        return Err(ParseError { line: 1, column: 1, kind: ParseErrorKind::MissingHeader });
    };
    let mut query = None;
    let mut rest = Vec::new();
    for toks in body {
        if toks[0].text == "query" {
            if query.is_some() {
                return Err(toks[0].err(ParseErrorKind::Semantic("duplicate query line".into())));
            }
            query = Some(parse_query(toks)?);
        } else {
            rest.push(toks.as_slice());
        }
    }
    let model = match header[0].text {
        "vass" => {
            if let Some(extra) = header.get(1) {
                return Err(extra.syntax("end of line after `vass`"));
            }
            Model::Vass(parse_vass(&rest)?)
        }
        "lps" => Model::Lps(parse_scheme_lines(header, &rest, false)?),
        "slps" => {
            let lps = parse_scheme_lines(header, &rest, true)?;
            Model::Slps(lps.to_simple().map_err(|e| header[0].err(ParseErrorKind::Semantic(e.to_string())))?)
        }
        _ => return Err(header[0].syntax("a header `vass`, `lps` or `slps`")),
    };
    Ok(Instance { model, query })
}

fn parse_query<T: Scalar>(toks: &[Token<'_>]) -> Parsed<Query<T>> {
    if toks.len() != 6 {
        let at = toks.get(6).or(toks.last()).unwrap();
        return Err(at.syntax("`query sx sy -> tx ty`"));
    }
    if toks[3].text != "->" {
        return Err(toks[3].syntax("`->`"));
    }
    Ok(Query { source: point(&toks[1], &toks[2])?, target: point(&toks[4], &toks[5])? })
}

fn parse_vass<T: Scalar>(lines: &[&[Token<'_>]]) -> Parsed<Vass<T>> {
    let mut states: Vec<String> = Vec::new();
    for toks in lines.iter().filter(|t| t[0].text == "states") {
        for tok in &toks[1..] {
            if states.iter().any(|s| s == tok.text) {
                return Err(tok.err(ParseErrorKind::Semantic(format!("state `{}` declared twice", tok.text))));
            }
            states.push(tok.text.to_string());
        }
    }
    let resolve = |tok: &Token<'_>| -> Parsed<usize> {
        states
            .iter()
            .position(|s| s == tok.text)
            .ok_or_else(|| tok.err(ParseErrorKind::UndeclaredState(tok.text.to_string())))
    };
    let mut edges = Vec::new();
    let mut initial = BTreeSet::new();
    let mut accepting = BTreeSet::new();
    for toks in lines {
        match toks[0].text {
            "states" => {}
            "init" => {
                for tok in &toks[1..] {
                    initial.insert(resolve(tok)?);
                }
            }
            "final" => {
                for tok in &toks[1..] {
                    accepting.insert(resolve(tok)?);
                }
            }
            "edge" => {
                let letter = match toks.len() {
                    5 => Vector::new(integer(&toks[3], toks[3].text)?, integer(&toks[4], toks[4].text)?),
                    4 => pair(&toks[3])?,
                    _ => {
                        let at = toks.get(5).or(toks.last()).unwrap();
                        return Err(at.syntax("`edge from to x y`"));
                    }
                };
                edges.push(Edge { from: resolve(&toks[1])?, letter, to: resolve(&toks[2])? });
            }
            _ => return Err(toks[0].syntax("`states`, `init`, `final`, `edge` or `query`")),
        }
    }
    Vass::new(states, edges, initial, accepting)
        .map_err(|e| lines.first().map_or(ParseError { line: 1, column: 1, kind: ParseErrorKind::Semantic(e.to_string()) }, |t| t[0].err(ParseErrorKind::Semantic(e.to_string()))))
}

#[derive(Debug)]
enum Part<T> {
    Seg(Word<T>),
    Cyc(Word<T>),
}

fn parse_scheme_lines<T: Scalar>(header: &[Token<'_>], lines: &[&[Token<'_>]], simple: bool) -> Parsed<Lps<T>> {
    let mut parts = Vec::new();
    if header.len() > 1 {
        parse_inline(&header[1..], &mut parts)?;
        if let Some(toks) = lines.first() {
            return Err(toks[0].syntax("nothing after an inline scheme"));
        }
    }
    for toks in lines {
        let head = &toks[0];
        let payload = &toks[1..];
        let bare = |t: &Token<'_>| !t.text.contains(',') && !t.text.starts_with('(');
        let word = if simple && payload.len() == 2 && payload.iter().all(bare) {
            Word::new(vec![Vector::new(integer(&payload[0], payload[0].text)?, integer(&payload[1], payload[1].text)?)])
        } else {
            payload.iter().map(pair).collect::<Parsed<Word<T>>>()?
        };
        match head.text {
            "seg" => parts.push((*head, Part::Seg(word))),
            "cyc" => {
                if word.is_empty() {
                    return Err(head.err(ParseErrorKind::Semantic("a cycle needs at least one letter".into())));
                }
                parts.push((*head, Part::Cyc(word)));
            }
            _ => return Err(head.syntax("`seg`, `cyc` or `query`")),
        }
    }
    assemble(header[0], parts, simple)
}

/// Parses `(x,y)(x,y) [(x,y)]* (x,y)` style tokens.
fn parse_inline<'a, T: Scalar>(toks: &[Token<'a>], parts: &mut Vec<(Token<'a>, Part<T>)>) -> Parsed<()> {
    let mut current: Option<(Token<'a>, Word<T>)> = None;
    let mut in_cycle = false;
    for tok in toks {
        let mut rest = tok.text;
        let mut column = tok.column;
        while !rest.is_empty() {
            let sub = Token { text: rest, line: tok.line, column };
            let consumed;
            if let Some(after) = rest.strip_prefix('[') {
                if in_cycle {
                    return Err(sub.syntax("`]` before a new cycle"));
                }
                if let Some((start, word)) = current.take() {
                    parts.push((start, Part::Seg(word)));
                }
                current = Some((sub, Word::empty()));
                in_cycle = true;
                consumed = rest.len() - after.len();
            } else if let Some(after) = rest.strip_prefix(']') {
                if !in_cycle {
                    return Err(sub.syntax("`[` before `]`"));
                }
                let (start, word) = current.take().unwrap();
                if word.is_empty() {
                    return Err(start.err(ParseErrorKind::Semantic("a cycle needs at least one letter".into())));
                }
                parts.push((start, Part::Cyc(word)));
                in_cycle = false;
                let after = after.strip_prefix('*').unwrap_or(after);
                consumed = rest.len() - after.len();
            } else if rest.starts_with('(') {
                let end = rest.find(')').map(|i| i + 1).unwrap_or(rest.len());
                let vtok = Token { text: &rest[..end], line: tok.line, column };
                let v = pair(&vtok)?;
                current.get_or_insert_with(|| (vtok, Word::empty())).1.push(v);
                consumed = end;
            } else {
                return Err(sub.syntax("`(x,y)`, `[` or `]`"));
            }
            column += rest[..consumed].chars().count();
            rest = &rest[consumed..];
        }
    }
    if in_cycle {
        let (start, _) = current.unwrap();
        return Err(start.syntax("a closing `]`"));
    }
    if let Some((start, word)) = current {
        parts.push((start, Part::Seg(word)));
    }
    Ok(())
}

fn assemble<T: Scalar>(header: Token<'_>, parts: Vec<(Token<'_>, Part<T>)>, simple: bool) -> Parsed<Lps<T>> {
    let mut segments: Vec<Word<T>> = Vec::new();
    let mut cycles = Vec::new();
    let mut expect_segment = true;
    for (tok, part) in parts {
        match part {
            Part::Seg(word) => {
                if !expect_segment {
                    if simple {
                        return Err(tok.syntax("`cyc` between two segments"));
                    }
                    let last = segments.last_mut().unwrap();
                    last.extend_from(&word);
                } else {
                    segments.push(word);
                    expect_segment = false;
                }
            }
            Part::Cyc(word) => {
                if expect_segment {
                    if simple {
                        return Err(tok.syntax("`seg` before a cycle"));
                    }
                    segments.push(Word::empty());
                }
                cycles.push(word);
                expect_segment = true;
            }
        }
    }
    if expect_segment {
        if simple {
            return Err(header.err(ParseErrorKind::Semantic("a simple scheme must end with a segment".into())));
        }
        segments.push(Word::empty());
    }
    Lps::new(segments, cycles).map_err(|e| header.err(ParseErrorKind::Semantic(e.to_string())))
}

fn write_pairs<T: fmt::Display>(f: &mut fmt::Formatter<'_>, word: &[Vector<T>]) -> fmt::Result {
    for v in word {
        write!(f, " {},{}", v.x, v.y)?;
    }
    Ok(())
}

impl<T: Scalar> fmt::Display for Instance<T> {
    /// Canonical line-based form; parsing it back yields an equal instance.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.model {
            Model::Vass(v) => {
                writeln!(f, "vass")?;
                write!(f, "states")?;
                for s in v.state_names() {
                    write!(f, " {s}")?;
                }
                writeln!(f)?;
                write!(f, "init")?;
                for &q in v.initial() {
                    write!(f, " {}", v.state_name(q))?;
                }
                writeln!(f)?;
                write!(f, "final")?;
                for &q in v.accepting() {
                    write!(f, " {}", v.state_name(q))?;
                }
                writeln!(f)?;
                for e in v.edges() {
                    writeln!(f, "edge {} {} {} {}", v.state_name(e.from), v.state_name(e.to), e.letter.x, e.letter.y)?;
                }
            }
            Model::Slps(s) => {
                writeln!(f, "slps")?;
                for (i, seg) in s.segments().iter().enumerate() {
                    if i > 0 {
                        let c = &s.cycles()[i - 1];
                        writeln!(f, "cyc {} {}", c.x, c.y)?;
                    }
                    writeln!(f, "seg {} {}", seg.x, seg.y)?;
                }
            }
            Model::Lps(l) => {
                writeln!(f, "lps")?;
                for (i, seg) in l.segments().iter().enumerate() {
                    if i > 0 {
                        write!(f, "cyc")?;
                        write_pairs(f, l.cycles()[i - 1].letters())?;
                        writeln!(f)?;
                    }
                    write!(f, "seg")?;
                    write_pairs(f, seg.letters())?;
                    writeln!(f)?;
                }
            }
        }
        if let Some(q) = &self.query {
            writeln!(f, "query {} {} -> {} {}", q.source.x(), q.source.y(), q.target.x(), q.target.y())?;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Display for Slps<T> {
    /// Inline notation, e.g. `(0,0) [(0,1)]* (0,0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, seg) in self.segments().iter().enumerate() {
            if i > 0 {
                write!(f, " [{}]* ", self.cycles()[i - 1])?;
            }
            write!(f, "{seg}")?;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Display for Lps<T> {
    /// Inline notation; empty segments are left out.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !std::mem::take(&mut first) {
                f.write_str(" ")?;
            }
            Ok(())
        };
        for (i, seg) in self.segments().iter().enumerate() {
            if i > 0 {
                sep(f)?;
                f.write_str("[")?;
                for v in self.cycles()[i - 1].letters() {
                    write!(f, "{v}")?;
                }
                f.write_str("]*")?;
            }
            if !seg.is_empty() {
                sep(f)?;
                for v in seg.letters() {
                    write!(f, "{v}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const VASS: &str = "vass\nstates q0 q1\ninit q0\nfinal q1\nedge q0 q0 -1 1\nedge q0 q1 0 0\nquery 2 0 -> 0 2\n";
    const SLPS: &str = "slps\nseg 0 0\ncyc 0 1\nseg 0 0\nquery 6 6 -> 6 9\n";

    #[test]
    fn vass_with_two_edges() {
        let inst = parse_instance::<i64>(VASS).unwrap();
        let Model::Vass(v) = &inst.model else { panic!("expected vass") };
        assert_eq!(v.edges().len(), 2);
        assert_eq!(v.state_count(), 2);
        let q = inst.query.unwrap();
        assert_eq!(q.source, Point::new(2, 0).unwrap());
        assert_eq!(q.target, Point::new(0, 2).unwrap());
    }

    #[test]
    fn slps_file_and_inline() {
        let inst = parse_instance::<i64>(SLPS).unwrap();
        let Model::Slps(s) = &inst.model else { panic!("expected slps") };
        assert_eq!(s.cycle_count(), 1);

        let inline = parse_instance::<i64>("slps (0,0) [(0,1)] (0,0)").unwrap();
        let Model::Slps(t) = &inline.model else { panic!("expected slps") };
        assert_eq!(t.cycle_count(), 1);
        assert_eq!(s, t);
    }

    #[test]
    fn malformed_coordinate() {
        let err = parse_instance::<i64>("lps\nseg (1,)\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.column, 5);
        assert!(matches!(err.kind, ParseErrorKind::Syntax { ref token, .. } if token == "(1,)"));

        let err = parse_instance::<i64>("slps (0,0) [(1,)]* (0,0)").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Syntax { ref token, .. } if token == "(1,)"));
    }

    #[test]
    fn semantic_errors() {
        let err = parse_instance::<i64>("vass\nstates a\nedge a b 0 0\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UndeclaredState("b".into()));
        assert_eq!((err.line, err.column), (3, 8));

        let err = parse_instance::<i64>("vass\nstates a\nedge a a x 0\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NotInteger("x".into()));

        let err = parse_instance::<i64>("slps\nseg 0 0\ncyc 0 1\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Semantic(_)));

        assert_eq!(parse_instance::<i64>("# nothing\n").unwrap_err().kind, ParseErrorKind::MissingHeader);
    }

    #[test]
    fn lps_with_words_and_implicit_segments() {
        let inst = parse_instance::<i64>("lps\nseg 1,0\ncyc 0,1 (0,-1)\nseg -1,0\n").unwrap();
        let Model::Lps(l) = &inst.model else { panic!("expected lps") };
        assert_eq!(l.len(), 4);
        assert_eq!(l.cycles()[0].len(), 2);

        let inline = parse_instance::<i64>("lps [(1,1)(2,-1)]*").unwrap();
        let Model::Lps(l) = &inline.model else { panic!("expected lps") };
        assert_eq!(l.segments().len(), 2);
        assert!(l.segments().iter().all(Word::is_empty));
    }

    #[test]
    fn canonical_round_trip() {
        for text in [VASS, SLPS, "lps\nseg 1,0\ncyc 0,1 0,-1\nseg\ncyc 2,2\nseg -1,0\n"] {
            let inst = parse_instance::<i64>(text).unwrap();
            let printed = inst.to_string();
            let again = parse_instance::<i64>(&printed).unwrap();
            assert_eq!(inst, again);
            assert_eq!(printed, again.to_string());
        }
    }

    #[test]
    fn inline_display_parses_back() {
        let inst = parse_instance::<i64>("lps\nseg 1,0\ncyc 0,1 0,-1\nseg\ncyc 2,2\nseg -1,0\n").unwrap();
        let Model::Lps(l) = &inst.model else { unreachable!() };
        let inline = format!("lps {l}");
        let again = parse_instance::<i64>(&inline).unwrap();
        assert_eq!(again.model, inst.model);

        let s = parse_instance::<i64>(SLPS).unwrap();
        let Model::Slps(s) = &s.model else { unreachable!() };
        assert_eq!(s.to_string(), "(0,0) [(0,1)]* (0,0)");
    }
}
