//! Diagram text: the complex format plus `rotation <v> <edge-end>...`,
//! `outer <start> <letters...>` (absent for spheres) and the
//! `vmap`/`emap`/`fmap` lines of the map into the target.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::complex::text::{parse_complex_line, parse_id, parse_letter, tokenized_lines, write_complex, write_map_entries, MapEntries, ParseError};
use crate::complex::{CellularMap, Path, TwoComplex};

use super::{Diagram, DiagramError, DiagramInX};

pub fn write_diagram(d: &DiagramInX) -> String {
    let mut out = write_complex(d.diagram.complex());
    for (v, r) in d.diagram.rotation() {
        let ends: Vec<String> = r.iter().map(ToString::to_string).collect();
        if ends.is_empty() {
            writeln!(out, "rotation {v}").unwrap();
        } else {
            writeln!(out, "rotation {v} {}", ends.join(" ")).unwrap();
        }
    }
    if let Some(outer) = d.diagram.outer() {
        write!(out, "outer {}", outer.start).unwrap();
        for l in &outer.letters {
            write!(out, " {l}").unwrap();
        }
        out.push('\n');
    }
    write_map_entries(&mut out, &d.map.entries());
    out
}

pub fn parse_diagram(s: &str, target: Arc<TwoComplex>) -> Result<DiagramInX, DiagramError> {
    let mut complex = TwoComplex::new();
    let mut rotation = BTreeMap::new();
    let mut outer = None;
    let mut entries = MapEntries::default();
    for (line, tokens) in tokenized_lines(s) {
        if parse_complex_line(&mut complex, line, &tokens)? || entries.parse_line(line, &tokens)? {
            continue;
        }
        match tokens[0] {
            "rotation" => {
                if tokens.len() < 2 {
                    return Err(ParseError::new(line, "expected `rotation <vertex> <edge-end>...`").into());
                }
                let v = parse_id(line, tokens[1])?;
                let ends = tokens[2..].iter().map(|t| parse_letter(line, t)).collect::<Result<Vec<_>, _>>()?;
                if rotation.insert(v.clone(), ends).is_some() {
                    return Err(ParseError::new(line, format!("rotation at {v} given twice")).into());
                }
            }
            "outer" => {
                if tokens.len() < 2 || outer.is_some() {
                    return Err(ParseError::new(line, "expected one `outer <start> <letters...>`").into());
                }
                let start = parse_id(line, tokens[1])?;
                let letters = tokens[2..].iter().map(|t| parse_letter(line, t)).collect::<Result<Vec<_>, _>>()?;
                outer = Some(Path::new(start, letters));
            }
            other => return Err(ParseError::new(line, format!("unknown declaration {other:?}")).into()),
        }
    }
    let complex = Arc::new(complex);
    let diagram = Diagram::new(complex.clone(), rotation, outer)?;
    let map = CellularMap::from_entries(complex, target, &entries)?;
    DiagramInX::new(diagram, map)
}
