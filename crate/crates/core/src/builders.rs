//! Presentation complexes, the standard corpus and seeded random complexes.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::action::{close_group, ActionError, GroupAction};
use crate::complex::{barycentric_subdivision, AttachingWord, CellularMap, DirectedEdge, Id, Sign, TwoComplex};
use crate::dr::DrStatus;
use crate::homotopy::SpanningTree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("{0}")]
    Invalid(String),
}

fn parse_err(position: usize, message: impl Into<String>) -> BuildError {
    BuildError::Parse { position, message: message.into() }
}

/// A generator letter: index into the generator list and whether it is inverted.
pub type GenLetter = (usize, bool);

/// Parses a relator such as `a b A B`, `a b a^-1 b^-1` or, when every
/// generator is a single character, `abAB`. Upper case stands for the
/// inverse of a lower-case generator.
pub fn parse_word(generators: &[String], word: &str) -> Result<Vec<GenLetter>, BuildError> {
    let lookup = |name: &str| generators.iter().position(|g| g == name);
    let single_chars = generators.iter().all(|g| g.chars().count() == 1);
    let mut out = Vec::new();
    let mut offset = 0;
    for token in word.split_whitespace() {
        let position = word[offset..].find(token).map_or(offset, |p| p + offset);
        offset = position + token.len();
        let pieces: Vec<String> = if lookup(token.trim_end_matches("^-1")).is_some() || !single_chars {
            vec![token.to_string()]
        } else {
            let mut v: Vec<String> = Vec::new();
            for c in token.chars() {
                if c == '^' || c == '-' || c == '1' {
                    match v.last_mut() {
                        Some(last) => last.push(c),
                        None => return Err(parse_err(position, "exponent without a generator")),
                    }
                } else {
                    v.push(c.to_string());
                }
            }
            v
        };
        for piece in pieces {
            let (name, inverted) = match piece.strip_suffix("^-1") {
                Some(base) => (base.to_string(), true),
                None => (piece.clone(), false),
            };
            if name.is_empty() || name.contains('^') {
                return Err(parse_err(position, format!("bad token {piece:?}")));
            }
            if let Some(i) = lookup(&name) {
                out.push((i, inverted));
                continue;
            }
            let lower = name.to_lowercase();
            match (name != lower, lookup(&lower)) {
                (true, Some(i)) if !inverted => out.push((i, true)),
                _ => return Err(BuildError::UnknownGenerator(name)),
            }
        }
    }
    if out.is_empty() {
        return Err(parse_err(0, "empty relator"));
    }
    Ok(out)
}

/// Prints a word in the form accepted by [`parse_word`].
pub fn format_word(generators: &[String], word: &[GenLetter]) -> String {
    let parts: Vec<String> = word
        .iter()
        .map(|&(i, inv)| {
            let g = &generators[i];
            let upper = g.to_uppercase();
            if !inv {
                g.clone()
            } else if g.chars().count() == 1 && upper != *g && !generators.contains(&upper) {
                upper
            } else {
                format!("{g}^-1")
            }
        })
        .collect();
    parts.join(" ")
}

/// One vertex `v`, a loop per generator and a face `r{i}` per relator.
pub fn presentation_complex(generators: &[&str], relators: &[&str]) -> Result<TwoComplex, BuildError> {
    let gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
    let mut x = TwoComplex::new();
    let bad = |e: crate::complex::ComplexError| BuildError::Invalid(e.to_string());
    x.add_vertex("v").map_err(bad)?;
    for g in &gens {
        x.add_edge(g.as_str(), "v", "v").map_err(bad)?;
    }
    for (i, r) in relators.iter().enumerate() {
        let word = parse_word(&gens, r)?;
        let letters = word
            .iter()
            .map(|&(g, inv)| DirectedEdge::new(gens[g].as_str(), if inv { Sign::Minus } else { Sign::Plus }))
            .collect();
        x.add_face(format!("r{}", i + 1), AttachingWord::new(letters)).map_err(bad)?;
    }
    Ok(x)
}

/// Parses `a, b | a b A B, a a` into a presentation complex.
pub fn parse_presentation(s: &str) -> Result<TwoComplex, BuildError> {
    let s = s.trim().trim_start_matches('<').trim_end_matches('>');
    let (gens, rels) = s.split_once('|').ok_or_else(|| parse_err(0, "expected `generators | relators`"))?;
    let gens: Vec<&str> = gens.split(|c: char| c == ',' || c.is_whitespace()).filter(|g| !g.is_empty()).collect();
    let rels: Vec<&str> = rels.split(',').map(str::trim).filter(|r| !r.is_empty()).collect();
    if gens.is_empty() {
        return Err(parse_err(0, "no generators"));
    }
    presentation_complex(&gens, &rels)
}

fn text(s: &str) -> TwoComplex {
    TwoComplex::from_text(s).expect("builtin complex")
}

pub fn triangle_disk() -> TwoComplex {
    text("vertex x\nvertex y\nvertex z\nedge e1 x y\nedge e2 y z\nedge e3 z x\nface f e1+ e2+ e3+\n")
}

/// Vertices `v0..`, edges `e{i}: v{i} -> v{i+1}`, one face `f`.
pub fn n_gon_disk(n: usize) -> TwoComplex {
    assert!(n >= 1);
    let mut x = TwoComplex::new();
    for i in 0..n {
        x.add_vertex(format!("v{i}")).unwrap();
    }
    for i in 0..n {
        x.add_edge(format!("e{i}"), format!("v{i}"), format!("v{}", (i + 1) % n)).unwrap();
    }
    let word = (0..n).map(|i| DirectedEdge::plus(format!("e{i}"))).collect();
    x.add_face("f", AttachingWord::new(word)).unwrap();
    x
}

pub fn bigon_sphere() -> TwoComplex {
    text("vertex p\nvertex q\nedge e1 p q\nedge e2 p q\nface f1 e1+ e2-\nface f2 e1+ e2-\n")
}

pub fn torus() -> TwoComplex {
    text("vertex v\nedge a v v\nedge b v v\nface f a+ b+ a- b-\n")
}

pub fn theta_graph() -> TwoComplex {
    text("vertex u\nvertex v\nedge a u v\nedge b u v\nedge c u v\n")
}

/// Rooted tree: the root is `t`, the children of `t01` are `t010, t011, ...`.
pub fn tree(depth: usize, arity: usize) -> TwoComplex {
    let mut x = TwoComplex::new();
    x.add_vertex("t").unwrap();
    let mut level = vec!["t".to_string()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &level {
            for k in 0..arity {
                let c = format!("{p}{k}");
                x.add_vertex(c.as_str()).unwrap();
                x.add_edge(format!("d{c}"), p.as_str(), c.as_str()).unwrap();
                next.push(c);
            }
        }
        level = next;
    }
    x
}

/// Two triangles sharing the edge `s` from `a` to `b`.
pub fn two_triangles() -> TwoComplex {
    text(
        "vertex a\nvertex b\nvertex c\nvertex d\nedge s a b\nedge p b c\nedge q c a\nedge r b d\nedge t d a\n\
         face f1 s+ p+ q+\nface f2 s- t- r-\n",
    )
}

pub fn subdivided(x: &TwoComplex, k: usize) -> TwoComplex {
    let mut cur = x.clone();
    for _ in 0..k {
        cur = (*barycentric_subdivision(&cur).complex).clone();
    }
    cur
}

/// Looks up a standard complex: `triangle_disk`, `n_gon_disk:<n>`,
/// `bigon_sphere`, `torus`, `theta_graph`, `tree:<depth>:<arity>`,
/// `two_triangles`, `projective_plane`, `presentation_disk`,
/// `presentation_sphere`, `subdivided:<name>:<k>`.
pub fn standard(name: &str) -> Result<TwoComplex, BuildError> {
    let unknown = || BuildError::UnknownName(name.to_string());
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    let parts: Vec<&str> = name.split(':').collect();
    Ok(match parts[..] {
        ["triangle_disk"] => triangle_disk(),
        ["n_gon_disk", n] => {
            let n = num(n)?;
            if n == 0 {
                return Err(unknown());
            }
            n_gon_disk(n)
        }
        ["bigon_sphere"] => bigon_sphere(),
        ["torus"] => torus(),
        ["theta_graph"] => theta_graph(),
        ["tree", d, a] => tree(num(d)?, num(a)?),
        ["two_triangles"] => two_triangles(),
        ["projective_plane"] => presentation_complex(&["a"], &["a a"])?,
        ["presentation_disk"] => presentation_complex(&["a"], &["a"])?,
        ["presentation_sphere"] => presentation_complex(&["a"], &["a", "a"])?,
        ["subdivided", ..] if parts.len() >= 3 => {
            let k = num(parts[parts.len() - 1])?;
            subdivided(&standard(&parts[1..parts.len() - 1].join(":"))?, k)
        }
        _ => return Err(unknown()),
    })
}

/// Invariants of a corpus complex worked out by hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub euler: i64,
    pub betti: [usize; 3],
    pub torsion1: Vec<u64>,
    pub simply_connected: bool,
    pub dr: DrStatus,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: TwoComplex,
    pub expected: Expected,
}

fn entry(name: &str, euler: i64, betti: [usize; 3], torsion1: &[u64], sc: bool, dr: DrStatus) -> CorpusEntry {
    CorpusEntry {
        name: name.to_string(),
        complex: standard(name).expect("corpus name"),
        expected: Expected { euler, betti, torsion1: torsion1.to_vec(), simply_connected: sc, dr },
    }
}

/// The standard complexes with their expected invariants.
pub fn corpus() -> Vec<CorpusEntry> {
    use DrStatus::*;
    vec![
        entry("triangle_disk", 1, [1, 0, 0], &[], true, Dr),
        entry("n_gon_disk:1", 1, [1, 0, 0], &[], true, Dr),
        entry("n_gon_disk:2", 1, [1, 0, 0], &[], true, Dr),
        entry("n_gon_disk:4", 1, [1, 0, 0], &[], true, Dr),
        entry("n_gon_disk:6", 1, [1, 0, 0], &[], true, Dr),
        entry("bigon_sphere", 2, [1, 0, 1], &[], true, NotDr),
        entry("torus", 0, [1, 2, 1], &[], false, Unknown),
        entry("theta_graph", -1, [1, 2, 0], &[], false, Unknown),
        entry("tree:2:2", 1, [1, 0, 0], &[], true, Dr),
        entry("two_triangles", 1, [1, 0, 0], &[], true, Dr),
        entry("projective_plane", 1, [1, 0, 0], &[2], false, Unknown),
        entry("presentation_disk", 1, [1, 0, 0], &[], true, Dr),
        entry("presentation_sphere", 2, [1, 0, 1], &[], true, NotDr),
        entry("subdivided:triangle_disk:1", 1, [1, 0, 0], &[], true, Dr),
        entry("subdivided:two_triangles:1", 1, [1, 0, 0], &[], true, Dr),
        entry("subdivided:bigon_sphere:1", 2, [1, 0, 1], &[], true, NotDr),
        entry("subdivided:torus:1", 0, [1, 2, 1], &[], false, Unknown),
    ]
}

fn automorphism(
    x: &Arc<TwoComplex>,
    vertices: &[(String, String)],
    edges: &[(String, String, Sign)],
    faces: &[(String, String)],
) -> Result<CellularMap, ActionError> {
    let v = vertices.iter().map(|(a, b)| (Id::new(a), Id::new(b))).collect();
    let e = edges.iter().map(|(a, b, s)| (Id::new(a), (Id::new(b), *s))).collect();
    let f: BTreeMap<Id, Id> = faces.iter().map(|(a, b)| (Id::new(a), Id::new(b))).collect();
    Ok(CellularMap::infer(x.clone(), x.clone(), v, e, f)?)
}

fn rotation_of(x: &Arc<TwoComplex>, n: usize) -> Result<CellularMap, ActionError> {
    let vs: Vec<(String, String)> = (0..n).map(|i| (format!("v{i}"), format!("v{}", (i + 1) % n))).collect();
    let es: Vec<(String, String, Sign)> = (0..n).map(|i| (format!("e{i}"), format!("e{}", (i + 1) % n), Sign::Plus)).collect();
    automorphism(x, &vs, &es, &[("f".into(), "f".into())])
}

/// `v_i -> v_{-i}`: edge `e_i` goes backwards along `e_{-i-1}`.
fn reflection_of(x: &Arc<TwoComplex>, n: usize) -> Result<CellularMap, ActionError> {
    let vs: Vec<(String, String)> = (0..n).map(|i| (format!("v{i}"), format!("v{}", (n - i) % n))).collect();
    let es: Vec<(String, String, Sign)> =
        (0..n).map(|i| (format!("e{i}"), format!("e{}", (2 * n - i - 1) % n), Sign::Minus)).collect();
    automorphism(x, &vs, &es, &[("f".into(), "f".into())])
}

/// Looks up a standard action: `cyclic_rotation:<n>` and `dihedral:<n>` and
/// `reflection:<n>` on `n_gon_disk:<n>`, `edge_flip` on a single edge,
/// `face_swap` on `bigon_sphere`, `triangle_swap` on `two_triangles`,
/// `star_rotation` on `tree:1:3`, `trivial:<complex>`.
pub fn standard_action(name: &str) -> Result<GroupAction, BuildError> {
    let unknown = || BuildError::UnknownName(name.to_string());
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    let act = |e: ActionError| BuildError::Invalid(e.to_string());
    let s = |a: &str, b: &str| (a.to_string(), b.to_string());
    let es = |a: &str, b: &str, sign: Sign| (a.to_string(), b.to_string(), sign);
    let parts: Vec<&str> = name.split(':').collect();
    let (x, gens) = match parts[..] {
        ["cyclic_rotation", n] | ["dihedral", n] | ["reflection", n] => {
            let n = num(n)?;
            if n < 2 {
                return Err(unknown());
            }
            let x = Arc::new(n_gon_disk(n));
            let mut gens = Vec::new();
            if parts[0] != "reflection" {
                gens.push(("r".to_string(), rotation_of(&x, n).map_err(act)?));
            }
            if parts[0] != "cyclic_rotation" {
                gens.push(("m".to_string(), reflection_of(&x, n).map_err(act)?));
            }
            (x, gens)
        }
        ["edge_flip"] => {
            let x = Arc::new(text("vertex p\nvertex q\nedge e p q\n"));
            let g = automorphism(&x, &[s("p", "q"), s("q", "p")], &[es("e", "e", Sign::Minus)], &[]).map_err(act)?;
            (x, vec![("s".to_string(), g)])
        }
        ["face_swap"] => {
            let x = Arc::new(bigon_sphere());
            let g = automorphism(
                &x,
                &[s("p", "p"), s("q", "q")],
                &[es("e1", "e1", Sign::Plus), es("e2", "e2", Sign::Plus)],
                &[s("f1", "f2"), s("f2", "f1")],
            )
            .map_err(act)?;
            (x, vec![("s".to_string(), g)])
        }
        ["triangle_swap"] => {
            let x = Arc::new(two_triangles());
            let g = automorphism(
                &x,
                &[s("a", "a"), s("b", "b"), s("c", "d"), s("d", "c")],
                &[
                    es("s", "s", Sign::Plus),
                    es("p", "r", Sign::Plus),
                    es("r", "p", Sign::Plus),
                    es("q", "t", Sign::Plus),
                    es("t", "q", Sign::Plus),
                ],
                &[s("f1", "f2"), s("f2", "f1")],
            )
            .map_err(act)?;
            (x, vec![("s".to_string(), g)])
        }
        ["star_rotation"] => {
            let x = Arc::new(tree(1, 3));
            let g = automorphism(
                &x,
                &[s("t", "t"), s("t0", "t1"), s("t1", "t2"), s("t2", "t0")],
                &[es("dt0", "dt1", Sign::Plus), es("dt1", "dt2", Sign::Plus), es("dt2", "dt0", Sign::Plus)],
                &[],
            )
            .map_err(act)?;
            (x, vec![("r".to_string(), g)])
        }
        ["trivial", ..] if parts.len() >= 2 => {
            let x = Arc::new(standard(&parts[1..].join(":"))?);
            return Ok(GroupAction::trivial(x));
        }
        _ => return Err(unknown()),
    };
    close_group(x, gens, 24).map_err(act)
}

/// Actions on simply-connected DR complexes used by the fixed-point checks.
pub fn action_corpus() -> Vec<(String, GroupAction)> {
    [
        "cyclic_rotation:3",
        "cyclic_rotation:4",
        "cyclic_rotation:5",
        "reflection:3",
        "reflection:4",
        "dihedral:2",
        "dihedral:3",
        "edge_flip",
        "triangle_swap",
        "star_rotation",
        "trivial:triangle_disk",
        "trivial:tree:2:2",
    ]
    .iter()
    .map(|n| (n.to_string(), standard_action(n).expect("corpus action")))
    .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Requirement {
    Any,
    /// Built by inverse collapses, hence collapsible.
    SimplyConnectedDr,
}

/// A seeded random complex. With [`Requirement::SimplyConnectedDr`] the
/// complex is grown from a point by adding leaves and free pairs, so it
/// collapses back to a point.
pub fn random_complex(seed: u64, max_faces: usize, max_word_length: usize, require: Requirement) -> TwoComplex {
    assert!(max_faces >= 1 && max_word_length >= 1, "bounds must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match require {
        Requirement::SimplyConnectedDr => grow_collapsible(&mut rng, max_faces, max_word_length),
        Requirement::Any => any_complex(&mut rng, max_faces, max_word_length),
    }
}

fn random_walk(rng: &mut ChaCha8Rng, x: &TwoComplex, start: &Id, len: usize) -> (Vec<DirectedEdge>, Id) {
    let adjacency = x.adjacency();
    let mut at = start.clone();
    let mut out = Vec::new();
    for _ in 0..len {
        let Some((l, w)) = adjacency[&at].choose(rng) else { break };
        out.push(l.clone());
        at = (*w).clone();
    }
    (out, at)
}

fn grow_collapsible(rng: &mut ChaCha8Rng, max_faces: usize, max_word_length: usize) -> TwoComplex {
    let mut x = TwoComplex::new();
    x.add_vertex("v0").unwrap();
    let faces = rng.gen_range(1..=max_faces);
    let (mut nv, mut ne) = (1, 0);
    for fi in 0..faces {
        for _ in 0..rng.gen_range(0..=2) {
            let vertices: Vec<Id> = x.vertices().cloned().collect();
            let u = vertices.choose(rng).unwrap().clone();
            let v = format!("v{nv}");
            nv += 1;
            x.add_vertex(v.as_str()).unwrap();
            let e = format!("e{ne}");
            ne += 1;
            if rng.gen_bool(0.5) {
                x.add_edge(e, u, v).unwrap();
            } else {
                x.add_edge(e, v, u).unwrap();
            }
        }
        let vertices: Vec<Id> = x.vertices().cloned().collect();
        let u = vertices.choose(rng).unwrap().clone();
        let len = rng.gen_range(0..max_word_length);
        let (mut word, w) = random_walk(rng, &x, &u, len);
        let e = format!("e{ne}");
        ne += 1;
        if rng.gen_bool(0.5) {
            x.add_edge(e.as_str(), w, u).unwrap();
            word.push(DirectedEdge::plus(e));
        } else {
            x.add_edge(e.as_str(), u, w).unwrap();
            word.push(DirectedEdge::minus(e));
        }
        let k = rng.gen_range(0..word.len());
        word.rotate_left(k);
        x.add_face(format!("f{fi}"), AttachingWord::new(word)).unwrap();
    }
    x
}

fn any_complex(rng: &mut ChaCha8Rng, max_faces: usize, max_word_length: usize) -> TwoComplex {
    let mut x = TwoComplex::new();
    let nv = rng.gen_range(1..=3);
    for i in 0..nv {
        x.add_vertex(format!("v{i}")).unwrap();
    }
    for i in 0..rng.gen_range(1..=4) {
        let a = rng.gen_range(0..nv);
        let b = rng.gen_range(0..nv);
        x.add_edge(format!("e{i}"), format!("v{a}"), format!("v{b}")).unwrap();
    }
    let tree = SpanningTree::rooted(&x, &Id::new("v0"));
    let faces = rng.gen_range(0..=max_faces);
    let mut made = 0;
    for _ in 0..faces * 4 {
        if made == faces {
            break;
        }
        let len = rng.gen_range(1..=max_word_length);
        let (mut word, end) = random_walk(rng, &x, &Id::new("v0"), len);
        if end.as_str() != "v0" {
            let Some(t) = &tree else { continue };
            word.extend(t.path_from_root(&x, &end).iter().rev().map(DirectedEdge::inverse));
        }
        if word.is_empty() || word.len() > max_word_length {
            continue;
        }
        x.add_face(format!("f{made}"), AttachingWord::new(word)).unwrap();
        made += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dr::decide_dr;
    use crate::homotopy::homology;

    #[test]
    fn presentations() {
        assert_eq!(presentation_complex(&["a", "b"], &["a b A B"]).unwrap().euler_characteristic(), 0);
        let t = presentation_complex(&["a", "b"], &["a b a^-1 b^-1"]).unwrap();
        assert_eq!(t, presentation_complex(&["a", "b"], &["abAB"]).unwrap());
        assert_eq!(homology(&t).betti, [1, 2, 1]);
        assert!(matches!(presentation_complex(&["a"], &["a c"]), Err(BuildError::UnknownGenerator(_))));
        assert!(presentation_complex(&["a"], &[""]).is_err());
        let gens = vec!["a".to_string(), "bb".to_string()];
        let w = parse_word(&gens, "a bb^-1 A bb").unwrap();
        assert_eq!(format_word(&gens, &w), "a bb^-1 A bb");
        assert_eq!(parse_presentation("<a | a a>").unwrap().num_faces(), 1);
    }

    #[test]
    fn corpus_matches_expectations() {
        for e in corpus() {
            assert!(e.complex.is_valid(), "{}", e.name);
            assert_eq!(e.complex.euler_characteristic(), e.expected.euler, "{}", e.name);
        }
        assert!(standard("nope").is_err());
        assert_eq!(standard("subdivided:n_gon_disk:3:1").unwrap().num_faces(), 6);
    }

    #[test]
    fn actions_build() {
        for (name, a) in action_corpus() {
            a.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert_eq!(standard_action("dihedral:3").unwrap().order(), 6);
        assert_eq!(standard_action("face_swap").unwrap().order(), 2);
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        for seed in 0..20 {
            let a = random_complex(seed, 5, 4, Requirement::SimplyConnectedDr);
            assert_eq!(a, random_complex(seed, 5, 4, Requirement::SimplyConnectedDr));
            assert!(a.is_valid());
            let b = random_complex(seed, 6, 4, Requirement::Any);
            assert!(b.is_valid(), "{}", b.validate());
        }
        let x = random_complex(1, 5, 4, Requirement::SimplyConnectedDr);
        assert_eq!(decide_dr(&x, &Default::default()).status, DrStatus::Dr);
    }
}
