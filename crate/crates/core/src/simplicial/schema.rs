//! Line-based text format for explicit simplicial algebras.
//!
//! ```text
//! # comment
//! field q                      # or fp:<p>
//! truncation <N> <W>
//! gen <degree> <symbol> [<weight>]
//! face <i> <n> <symbol> = <combination>
//! degen <i> <n> <symbol> = <combination>
//! mul <n> <a> <b> = <combination>
//! ```
//!
//! A combination is `0` or terms joined by `+`/`-`; a term is
//! `[<coef>*]<symbol>` with an integer or `a/b` coefficient. Symbols are
//! runs of characters other than whitespace and `+ - * = #`, and do not start
//! with a digit. Generators may be declared in any order. Omitting every
//! weight gives an ungraded input; mixing is an error. A `mul` line records
//! both orders; faces, degeneracies and products not listed are zero.

use std::fmt::Write as _;

use super::explicit::ExplicitAlgebra;
use super::space::{SimplicialAlgebra, Truncation};
use crate::error::{Error, Result};
use crate::exactlin::{render_combination, Field, Scalar};
use crate::freealg::Element;

#[derive(Clone, Debug)]
enum Record {
    Gen { degree: usize, symbol: String, weight: Option<usize> },
    Face { i: usize, n: usize, symbol: String, image: Vec<(String, Scalar)> },
    Degen { i: usize, n: usize, symbol: String, image: Vec<(String, Scalar)> },
    Mul { n: usize, a: String, b: String, image: Vec<(String, Scalar)> },
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn err(&self, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.number, col, msg: msg.into() }
    }

    /// Whitespace-separated tokens with 1-based columns, up to an optional `=`.
    fn tokens(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (k, ch) in self.text.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    out.push((s, &self.text[s..k]));
                }
            } else if start.is_none() {
                start = Some(k);
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[s..]));
        }
        out.into_iter().map(|(s, t)| (col_of(self.text, s), t)).collect()
    }
}

fn col_of(text: &str, byte: usize) -> usize {
    text[..byte].chars().count() + 1
}

fn strip_comment(s: &str) -> &str {
    match s.find('#') {
        Some(k) => &s[..k],
        None => s,
    }
}

fn is_symbol(s: &str) -> bool {
    !s.is_empty()
        && !s.starts_with(|c: char| c.is_ascii_digit())
        && !s.chars().any(|c| c.is_whitespace() || matches!(c, '+' | '-' | '*' | '=' | '#'))
}

fn parse_usize(line: &Line, tok: Option<&(usize, &str)>, what: &str) -> Result<usize> {
    let Some((col, t)) = tok else {
        return Err(line.err(line.text.chars().count() + 1, format!("missing {what}")));
    };
    t.parse().map_err(|_| line.err(*col, format!("expected {what}, found `{t}`")))
}

fn parse_symbol(line: &Line, tok: Option<&(usize, &str)>) -> Result<String> {
    let Some((col, t)) = tok else {
        return Err(line.err(line.text.chars().count() + 1, "missing symbol"));
    };
    if !is_symbol(t) {
        return Err(line.err(*col, format!("invalid symbol `{t}`")));
    }
    Ok(t.to_string())
}

/// Parses the right-hand side of `=`, starting at byte offset `start` of the line.
fn parse_combination(line: &Line, start: usize, field: Field) -> Result<Vec<(String, Scalar)>> {
    let text = line.text;
    let bytes: Vec<(usize, char)> = text[start..].char_indices().map(|(k, c)| (k + start, c)).collect();
    let mut pos = 0;
    let skip = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].1.is_whitespace() {
            *pos += 1;
        }
    };
    let here = |pos: usize| if pos < bytes.len() { col_of(text, bytes[pos].0) } else { text.chars().count() + 1 };
    skip(&mut pos);
    let rest: String = bytes[pos..].iter().map(|(_, c)| c).collect();
    if rest.trim() == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut first = true;
    loop {
        skip(&mut pos);
        if pos >= bytes.len() {
            if first {
                return Err(line.err(here(pos), "empty combination"));
            }
            break;
        }
        let mut negative = false;
        match bytes[pos].1 {
            '+' if !first => pos += 1,
            '-' => {
                negative = true;
                pos += 1;
            }
            _ if first => {}
            c => return Err(line.err(here(pos), format!("expected `+` or `-`, found `{c}`"))),
        }
        first = false;
        skip(&mut pos);
        let tok_start = pos;
        while pos < bytes.len() && !bytes[pos].1.is_whitespace() && !matches!(bytes[pos].1, '+' | '-') {
            pos += 1;
        }
        if tok_start == pos {
            return Err(line.err(here(pos), "expected a term"));
        }
        let tok: String = bytes[tok_start..pos].iter().map(|(_, c)| c).collect();
        let (coef, sym, sym_col) = match tok.split_once('*') {
            Some((c, s)) => {
                let coef = field.parse_scalar(c).map_err(|e| line.err(here(tok_start), e.to_string()))?;
                (coef, s.to_string(), here(tok_start) + c.chars().count() + 1)
            }
            None => (field.one(), tok.clone(), here(tok_start)),
        };
        if !is_symbol(&sym) {
            return Err(line.err(sym_col, format!("invalid symbol `{sym}`")));
        }
        out.push((sym, if negative { -coef } else { coef }));
    }
    Ok(out)
}

/// Parses an input file into an explicit algebra.
pub fn parse_algebra(name: &str, text: &str) -> Result<ExplicitAlgebra> {
    let mut field: Option<Field> = None;
    let mut truncation: Option<Truncation> = None;
    let mut records: Vec<(usize, usize, Record)> = Vec::new();
    let lines: Vec<&str> = text.lines().collect();
    for (k, raw) in lines.iter().enumerate() {
        let line = Line { number: k + 1, text: strip_comment(raw) };
        let (head, rhs) = match line.text.find('=') {
            Some(eq) => (Line { number: line.number, text: &line.text[..eq] }, Some(eq + 1)),
            None => (Line { number: line.number, text: line.text }, None),
        };
        let toks = head.tokens();
        let Some(&(col, keyword)) = toks.first() else { continue };
        let needs_rhs = matches!(keyword, "face" | "degen" | "mul");
        if needs_rhs != rhs.is_some() {
            let msg = if needs_rhs { format!("`{keyword}` line needs `= <combination>`") } else { "unexpected `=`".into() };
            return Err(line.err(col, msg));
        }
        let arity = |n: usize| -> Result<()> {
            if toks.len() > n + 1 {
                return Err(line.err(toks[n + 1].0, format!("unexpected token `{}`", toks[n + 1].1)));
            }
            Ok(())
        };
        match keyword {
            "field" => {
                arity(1)?;
                let Some(&(c, f)) = toks.get(1) else { return Err(line.err(col, "missing field")) };
                field = Some(f.parse().map_err(|e: Error| line.err(c, e.to_string()))?);
            }
            "truncation" => {
                arity(2)?;
                let n = parse_usize(&line, toks.get(1), "maximal degree")?;
                let w = parse_usize(&line, toks.get(2), "maximal weight")?;
                if n < 1 || w < 1 {
                    return Err(line.err(toks[1].0, "truncation bounds must be at least 1"));
                }
                truncation = Some(Truncation::new(n, w));
            }
            "gen" => {
                arity(3)?;
                let degree = parse_usize(&line, toks.get(1), "degree")?;
                let symbol = parse_symbol(&line, toks.get(2))?;
                let weight = match toks.get(3) {
                    Some(t) => Some(parse_usize(&line, Some(t), "weight")?),
                    None => None,
                };
                records.push((line.number, col, Record::Gen { degree, symbol, weight }));
            }
            "face" | "degen" => {
                arity(3)?;
                let i = parse_usize(&line, toks.get(1), "index")?;
                let n = parse_usize(&line, toks.get(2), "degree")?;
                let symbol = parse_symbol(&line, toks.get(3))?;
                let f = field.ok_or_else(|| line.err(col, "`field` must precede maps"))?;
                let image = parse_combination(&line, rhs.unwrap(), f)?;
                let r = if keyword == "face" {
                    Record::Face { i, n, symbol, image }
                } else {
                    Record::Degen { i, n, symbol, image }
                };
                records.push((line.number, col, r));
            }
            "mul" => {
                arity(3)?;
                let n = parse_usize(&line, toks.get(1), "degree")?;
                let a = parse_symbol(&line, toks.get(2))?;
                let b = parse_symbol(&line, toks.get(3))?;
                let f = field.ok_or_else(|| line.err(col, "`field` must precede maps"))?;
                let image = parse_combination(&line, rhs.unwrap(), f)?;
                records.push((line.number, col, Record::Mul { n, a, b, image }));
            }
            other => return Err(line.err(col, format!("unknown keyword `{other}`"))),
        }
    }
    let last = lines.len().max(1);
    let field = field.ok_or(Error::Parse { line: last, col: 1, msg: "missing `field` line".into() })?;
    let truncation = truncation.ok_or(Error::Parse { line: last, col: 1, msg: "missing `truncation` line".into() })?;
    let gens: Vec<_> = records.iter().filter_map(|(l, c, r)| matches!(r, Record::Gen { .. }).then_some((*l, *c, r))).collect();
    let graded = gens.first().map(|(_, _, r)| matches!(r, Record::Gen { weight: Some(_), .. })).unwrap_or(true);
    let mut b = ExplicitAlgebra::builder(name, field, truncation, graded);
    let at = |l: usize, c: usize| move |e: Error| Error::Parse { line: l, col: c, msg: e.to_string() };
    for (l, c, r) in &gens {
        if let Record::Gen { degree, symbol, weight } = r {
            if weight.is_some() != graded {
                return Err(Error::Parse { line: *l, col: *c, msg: "either every generator has a weight or none does".into() });
            }
            b.generator(*degree, symbol, *weight).map_err(at(*l, *c))?;
        }
    }
    for (l, c, r) in &records {
        match r {
            Record::Gen { .. } => {}
            Record::Face { i, n, symbol, image } => {
                b.face(*i, *n, symbol, image).map_err(at(*l, *c))?;
            }
            Record::Degen { i, n, symbol, image } => {
                b.degeneracy(*i, *n, symbol, image).map_err(at(*l, *c))?;
            }
            Record::Mul { n, a, b: bb, image } => {
                b.product(*n, a, bb, image).map_err(at(*l, *c))?;
            }
        }
    }
    Ok(b.build())
}

fn render(e: &Element) -> String {
    render_combination(e.iter().map(|(t, c)| (t.to_string(), c)))
}

/// Writes any term-level algebra in the text format, listing every generator,
/// nonzero face and degeneracy, and every nonzero product within the truncation.
pub fn export_algebra(alg: &dyn SimplicialAlgebra) -> Result<String> {
    let t = alg.truncation();
    let mut out = String::new();
    writeln!(out, "# {}", alg.name()).unwrap();
    writeln!(out, "field {}", alg.field()).unwrap();
    writeln!(out, "truncation {} {}", t.max_degree, t.max_weight).unwrap();
    let weights = alg.weights();
    for n in 0..=t.max_degree {
        for &w in &weights {
            for g in alg.basis(n, w)?.labels() {
                if alg.graded() {
                    writeln!(out, "gen {n} {g} {w}").unwrap();
                } else {
                    writeln!(out, "gen {n} {g}").unwrap();
                }
            }
        }
    }
    for n in 0..=t.max_degree {
        for &w in &weights {
            let basis = alg.basis(n, w)?;
            for g in basis.labels() {
                if n > 0 {
                    for i in 0..=n {
                        let e = alg.face_term(i, n, g)?;
                        if !e.is_zero() {
                            writeln!(out, "face {i} {n} {g} = {}", render(&e)).unwrap();
                        }
                    }
                }
                if n < t.max_degree {
                    for i in 0..=n {
                        let e = alg.degeneracy_term(i, n, g)?;
                        if !e.is_zero() {
                            writeln!(out, "degen {i} {n} {g} = {}", render(&e)).unwrap();
                        }
                    }
                }
            }
        }
        let mut all = Vec::new();
        for &w in &weights {
            all.extend(alg.basis(n, w)?.labels().iter().map(|g| (w, g.clone())));
        }
        all.sort_by(|a, b| a.1.cmp(&b.1));
        for (k, (wa, a)) in all.iter().enumerate() {
            for (wb, b) in &all[k..] {
                if alg.graded() && wa + wb > t.max_weight {
                    continue;
                }
                let e = alg.product(n, &[a.clone(), b.clone()])?;
                if !e.is_zero() {
                    writeln!(out, "mul {n} {a} {b} = {}", render(&e)).unwrap();
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "field q\ntruncation 2 2\ngen 1 x 1\ngen 2 s0x 1\ngen 2 s1x 1\ndegen 0 1 x = s0x\ndegen 1 1 x = s1x\nface 0 2 s0x = x\nface 1 2 s0x = x\nface 1 2 s1x = x\nface 2 2 s1x = x\n";

    #[test]
    fn parses_small_input() {
        let a = parse_algebra("k1", SMALL).unwrap();
        assert_eq!(a.generators(2).len(), 2);
        assert_eq!(a.face_of(1, 2, "s0x").len(), 1);
    }

    #[test]
    fn errors_carry_positions() {
        let bad = "field q\ntruncation 2 2\ngen 1 x 1\nface 0 1 x = 2*\n";
        match parse_algebra("bad", bad) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (4, 16)),
            other => panic!("unexpected {:?}", other.err()),
        }
        match parse_algebra("bad", "field q\ntruncation 1 1\ngen 1 x 1\nfoo 1\n") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (4, 1)),
            other => panic!("unexpected {:?}", other.err()),
        }
        match parse_algebra("bad", "field q\ntruncation 1 1\ngen 1 x 1\nface 1 1 y = 0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {:?}", other.err()),
        }
        match parse_algebra("bad", "field fp:4\n") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (1, 7)),
            other => panic!("unexpected {:?}", other.err()),
        }
    }

    #[test]
    fn combinations() {
        let line = Line { number: 1, text: "= 2*a - 1/2*b + c" };
        let v = parse_combination(&line, 1, Field::Rational).unwrap();
        let s: Vec<String> = v.iter().map(|(s, c)| format!("{c}{s}")).collect();
        assert_eq!(s, vec!["2a", "-1/2b", "1c"]);
    }

    #[test]
    fn export_round_trip() {
        let a = parse_algebra("k1", SMALL).unwrap();
        let text = export_algebra(&a).unwrap();
        let b = parse_algebra("k1", &text).unwrap();
        assert_eq!(export_algebra(&b).unwrap(), text);
    }
}
