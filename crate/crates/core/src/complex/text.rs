//! Line-oriented text format shared by every module.
//!
//! ```text
//! # a torus
//! vertex v
//! edge a v v
//! edge b v v
//! face f a+ b+ a- b-
//! ```
//!
//! Maps use `vmap <v> <v>`, `emap <e> <e><+|->` and
//! `fmap <f> <f> rot=<k> refl=<0|1>` lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{is_well_formed_id, AttachingWord, DirectedEdge, Id, Sign, TwoComplex, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> ParseError {
        ParseError { line, message: message.into() }
    }
}

/// Non-empty, comment-stripped lines split into tokens, with 1-based line numbers.
pub fn tokenized_lines(s: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    s.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub(crate) fn parse_id(line: usize, token: &str) -> Result<Id, ParseError> {
    if is_well_formed_id(token) {
        Ok(Id::new(token))
    } else {
        Err(ParseError::new(line, format!("malformed id {token:?}")))
    }
}

pub(crate) fn parse_letter(line: usize, token: &str) -> Result<DirectedEdge, ParseError> {
    DirectedEdge::parse(token).ok_or_else(|| ParseError::new(line, format!("malformed letter {token:?}")))
}

/// Handles a `vertex`/`edge`/`face` declaration. Returns `Ok(false)` for any
/// other keyword so callers can layer extra line kinds on top.
pub(crate) fn parse_complex_line(
    complex: &mut TwoComplex,
    line: usize,
    tokens: &[&str],
) -> Result<bool, ParseError> {
    let err = |e: super::ComplexError| ParseError::new(line, e.to_string());
    match tokens[0] {
        "vertex" => {
            let [_, id] = tokens else {
                return Err(ParseError::new(line, "expected `vertex <id>`"));
            };
            complex.add_vertex(parse_id(line, id)?).map_err(err)?;
        }
        "edge" => {
            let [_, id, tail, head] = tokens else {
                return Err(ParseError::new(line, "expected `edge <id> <tail> <head>`"));
            };
            complex
                .add_edge(parse_id(line, id)?, parse_id(line, tail)?, parse_id(line, head)?)
                .map_err(err)?;
        }
        "face" => {
            if tokens.len() < 2 {
                return Err(ParseError::new(line, "expected `face <id> <letters...>`"));
            }
            let letters =
                tokens[2..].iter().map(|t| parse_letter(line, t)).collect::<Result<Vec<_>, _>>()?;
            complex.add_face(parse_id(line, tokens[1])?, AttachingWord::new(letters)).map_err(err)?;
        }
        _ => return Ok(false),
    }
    Ok(true)
}

/// Parses the complex text format. Structural invariants are left to
/// [`TwoComplex::validate`]; only syntax, malformed ids and duplicates fail here.
pub fn parse_complex(s: &str) -> Result<TwoComplex, ParseError> {
    let mut complex = TwoComplex::new();
    for (line, tokens) in tokenized_lines(s) {
        if !parse_complex_line(&mut complex, line, &tokens)? {
            return Err(ParseError::new(line, format!("unknown declaration {:?}", tokens[0])));
        }
    }
    Ok(complex)
}

pub fn write_complex(x: &TwoComplex) -> String {
    let mut out = String::new();
    for v in x.vertices() {
        writeln!(out, "vertex {v}").unwrap();
    }
    for (e, ends) in x.edges() {
        writeln!(out, "edge {e} {} {}", ends.tail, ends.head).unwrap();
    }
    for (f, word) in x.faces() {
        if word.is_empty() {
            writeln!(out, "face {f}").unwrap();
        } else {
            writeln!(out, "face {f} {word}").unwrap();
        }
    }
    out
}

/// Raw cell assignments of a combinatorial map, as read from text.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MapEntries {
    pub vertices: BTreeMap<Id, Id>,
    pub edges: BTreeMap<Id, (Id, Sign)>,
    pub faces: BTreeMap<Id, (Id, Option<Witness>)>,
}

impl MapEntries {
    /// Handles `vmap`/`emap`/`fmap`; `Ok(false)` for other keywords.
    pub fn parse_line(&mut self, line: usize, tokens: &[&str]) -> Result<bool, ParseError> {
        match tokens[0] {
            "vmap" => {
                let [_, a, b] = tokens else {
                    return Err(ParseError::new(line, "expected `vmap <v> <v>`"));
                };
                let a = parse_id(line, a)?;
                if self.vertices.insert(a.clone(), parse_id(line, b)?).is_some() {
                    return Err(ParseError::new(line, format!("vertex {a} mapped twice")));
                }
            }
            "emap" => {
                let [_, a, b] = tokens else {
                    return Err(ParseError::new(line, "expected `emap <e> <e><+|->`"));
                };
                let a = parse_id(line, a)?;
                let b = parse_letter(line, b)?;
                if self.edges.insert(a.clone(), (b.edge, b.sign)).is_some() {
                    return Err(ParseError::new(line, format!("edge {a} mapped twice")));
                }
            }
            "fmap" => {
                if tokens.len() != 3 && tokens.len() != 5 {
                    return Err(ParseError::new(line, "expected `fmap <f> <f> [rot=<k> refl=<0|1>]`"));
                }
                let a = parse_id(line, tokens[1])?;
                let b = parse_id(line, tokens[2])?;
                let witness = if tokens.len() == 5 {
                    let rot = tokens[3]
                        .strip_prefix("rot=")
                        .and_then(|k| k.parse::<usize>().ok())
                        .ok_or_else(|| ParseError::new(line, "expected rot=<k>"))?;
                    let reflected = match tokens[4] {
                        "refl=0" => false,
                        "refl=1" => true,
                        _ => return Err(ParseError::new(line, "expected refl=<0|1>")),
                    };
                    Some(Witness { rotation: rot, reflected })
                } else {
                    None
                };
                if self.faces.insert(a.clone(), (b, witness)).is_some() {
                    return Err(ParseError::new(line, format!("face {a} mapped twice")));
                }
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty() && self.faces.is_empty()
    }
}

pub fn write_map_entries(out: &mut String, entries: &MapEntries) {
    for (a, b) in &entries.vertices {
        writeln!(out, "vmap {a} {b}").unwrap();
    }
    for (a, (b, s)) in &entries.edges {
        writeln!(out, "emap {a} {b}{}", s.symbol()).unwrap();
    }
    for (a, (b, w)) in &entries.faces {
        match w {
            Some(w) => writeln!(out, "fmap {a} {b} rot={} refl={}", w.rotation, u8::from(w.reflected)).unwrap(),
            None => writeln!(out, "fmap {a} {b}").unwrap(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let src = "# torus\nvertex v\nedge a v v   # loop\nedge b v v\nface f a+ b+ a- b-\n";
        let x = parse_complex(src).unwrap();
        assert_eq!(x.num_edges(), 2);
        assert_eq!(parse_complex(&write_complex(&x)).unwrap(), x);
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let e = parse_complex("vertex v\nedge a v\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_complex("vertex v\nvertex v\n").unwrap_err();
        assert!(e.message.contains("duplicate"));
        let e = parse_complex("vertex v\nface f a*\n").unwrap_err();
        assert!(e.message.contains("malformed letter"));
        assert!(parse_complex("blob x\n").is_err());
    }

    #[test]
    fn map_lines() {
        let mut m = MapEntries::default();
        for (i, l) in ["vmap a b", "emap e f-", "fmap r s rot=2 refl=1", "fmap t u"].iter().enumerate() {
            let tokens: Vec<&str> = l.split_whitespace().collect();
            assert!(m.parse_line(i + 1, &tokens).unwrap());
        }
        assert_eq!(m.edges[&Id::new("e")], (Id::new("f"), Sign::Minus));
        assert_eq!(m.faces[&Id::new("r")].1, Some(Witness { rotation: 2, reflected: true }));
        assert_eq!(m.faces[&Id::new("t")].1, None);
        let mut s = String::new();
        write_map_entries(&mut s, &m);
        let mut back = MapEntries::default();
        for (line, tokens) in tokenized_lines(&s) {
            back.parse_line(line, &tokens).unwrap();
        }
        assert_eq!(back, m);
    }
}
