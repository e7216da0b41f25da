//! Replayable certificates as JSON documents.
//!
//! Every document carries the input complex verbatim, its SHA-256, a claim,
//! the bounds in force when it was produced, a witness and a seal over all
//! of the above. [`verify`] checks the input hash, replays the witness
//! against the input and finally checks the seal.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::action::{parse_generators, write_action, GroupAction};
use crate::complex::{parse_letters, Cell, Cycle, DirectedEdge, Id, TwoComplex};
use crate::diagram::text::{parse_diagram, write_diagram};
use crate::diagram::{DiagramInX, FillBounds};
use crate::dr::{CoreResult, DrCertificate, DrStatus, DrVerdict};
use crate::homotopy::{
    replay_collapse, smith_normal_form, ChainData, CollapseStep, HomologyProfile, IntMatrix, SimpleConnectivity,
    SimplyConnectedCertificate, SnfOp,
};

pub const FORMAT: &str = "drtoolkit-certificate/1";

/// Search limits recorded in every certificate.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    pub max_area: usize,
    pub max_perimeter: usize,
    pub max_states: usize,
    pub group_limit: usize,
    pub oracle_face_limit: usize,
    pub sphere_area: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        let fill = FillBounds::default();
        Bounds {
            max_area: fill.max_area,
            max_perimeter: fill.max_perimeter,
            max_states: fill.max_states,
            group_limit: 24,
            oracle_face_limit: crate::dr::ORACLE_FACE_LIMIT,
            sphere_area: 4,
        }
    }
}

impl Bounds {
    pub fn fill(&self) -> FillBounds {
        FillBounds { max_area: self.max_area, max_perimeter: self.max_perimeter, max_states: self.max_states }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Claim {
    Dr,
    NotDr,
    SimplyConnected,
    Filling { cycle: String, area: usize },
    Homology { betti: [usize; 3], torsion1: Vec<String> },
    Collapsible,
    FixedPoint { vertex: Id },
}

/// Fillings of the fundamental loops of a spanning tree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopFillings {
    pub root: Id,
    pub tree: Vec<Id>,
    pub fillings: Vec<(Id, String)>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Witness {
    FreeFaceOrder { order: Vec<(Id, Id)>, loops: LoopFillings },
    Core { faces: Vec<Id>, loops: LoopFillings },
    Loops { loops: LoopFillings },
    Sphere { area: usize, diagram: String },
    Disk { area: usize, diagram: String },
    Smith { d1: Vec<SnfOp>, d2: Vec<SnfOp> },
    Collapse { steps: Vec<CollapseStep> },
    Fixed { action: String },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub format: String,
    pub input: String,
    pub input_sha256: String,
    pub claim: Claim,
    pub bounds: Bounds,
    pub witness: Witness,
    pub seal: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("input hash mismatch: recorded {recorded}, computed {computed}")]
    HashMismatch { recorded: String, computed: String },
    #[error("replay failed at {step}: {reason}")]
    ReplayFailure { step: String, reason: String },
    #[error("seal mismatch")]
    SealMismatch,
    #[error("nothing to certify: {0}")]
    Unsupported(String),
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn fail(step: impl Into<String>, reason: impl Into<String>) -> CertificateError {
    CertificateError::ReplayFailure { step: step.into(), reason: reason.into() }
}

impl Certificate {
    fn new(x: &TwoComplex, claim: Claim, bounds: Bounds, witness: Witness) -> Certificate {
        let input = x.to_text();
        let mut c = Certificate {
            format: FORMAT.into(),
            input_sha256: sha256_hex(input.as_bytes()),
            input,
            claim,
            bounds,
            witness,
            seal: String::new(),
        };
        c.seal = c.compute_seal();
        c
    }

    fn compute_seal(&self) -> String {
        let mut unsealed = self.clone();
        unsealed.seal.clear();
        sha256_hex(serde_json::to_string(&unsealed).expect("serializable").as_bytes())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Certificate, CertificateError> {
        serde_json::from_str(s).map_err(|e| CertificateError::Malformed(e.to_string()))
    }
}

fn loop_fillings(x: &TwoComplex, sc: &SimplyConnectedCertificate) -> LoopFillings {
    let looped: BTreeSet<&Id> = sc.loops.iter().map(|(e, _, _)| e).collect();
    LoopFillings {
        root: sc.root.clone(),
        tree: x.edge_ids().filter(|e| !looped.contains(e)).cloned().collect(),
        fillings: sc.loops.iter().map(|(e, _, d)| (e.clone(), write_diagram(d))).collect(),
    }
}

/// Certificate for a DR or NotDR verdict; `Unknown` verdicts have none.
pub fn emit_dr(x: &TwoComplex, verdict: &DrVerdict, bounds: Bounds) -> Result<Certificate, CertificateError> {
    match (&verdict.status, &verdict.certificate, &verdict.simple_connectivity) {
        (DrStatus::Dr, DrCertificate::Core(CoreResult::Collapsible(order)), SimpleConnectivity::Certified(sc)) => {
            let witness = Witness::FreeFaceOrder { order: order.clone(), loops: loop_fillings(x, sc) };
            Ok(Certificate::new(x, Claim::Dr, bounds, witness))
        }
        (DrStatus::NotDr, DrCertificate::Core(CoreResult::Core(faces)), SimpleConnectivity::Certified(sc)) => {
            let witness = Witness::Core { faces: faces.clone(), loops: loop_fillings(x, sc) };
            Ok(Certificate::new(x, Claim::NotDr, bounds, witness))
        }
        (DrStatus::NotDr, DrCertificate::Sphere(s), _) => Ok(emit_sphere(x, s, bounds)),
        (status, _, _) => Err(CertificateError::Unsupported(format!("verdict {status}"))),
    }
}

pub fn emit_sphere(x: &TwoComplex, sphere: &DiagramInX, bounds: Bounds) -> Certificate {
    let witness = Witness::Sphere { area: sphere.area(), diagram: write_diagram(sphere) };
    Certificate::new(x, Claim::NotDr, bounds, witness)
}

pub fn emit_simply_connected(x: &TwoComplex, sc: &SimplyConnectedCertificate, bounds: Bounds) -> Certificate {
    Certificate::new(x, Claim::SimplyConnected, bounds, Witness::Loops { loops: loop_fillings(x, sc) })
}

pub fn emit_filling(x: &TwoComplex, cycle: &Cycle, disk: &DiagramInX, bounds: Bounds) -> Certificate {
    let letters: Vec<String> = cycle.letters().iter().map(ToString::to_string).collect();
    let claim = Claim::Filling { cycle: letters.join(" "), area: disk.area() };
    Certificate::new(x, claim, bounds, Witness::Disk { area: disk.area(), diagram: write_diagram(disk) })
}

pub fn emit_homology(x: &TwoComplex, bounds: Bounds) -> Certificate {
    let chains = ChainData::new(x);
    let s1 = smith_normal_form(&chains.d1);
    let s2 = smith_normal_form(&chains.d2);
    let (r1, r2) = (s1.rank(), s2.rank());
    let profile = HomologyProfile {
        betti: [chains.vertices.len() - r1, chains.edges.len() - r1 - r2, chains.faces.len() - r2],
        torsion1: s2.torsion(),
    };
    let claim = Claim::Homology { betti: profile.betti, torsion1: profile.torsion1.iter().map(ToString::to_string).collect() };
    Certificate::new(x, claim, bounds, Witness::Smith { d1: s1.ops, d2: s2.ops })
}

pub fn emit_collapse(x: &TwoComplex, steps: &[CollapseStep], bounds: Bounds) -> Certificate {
    Certificate::new(x, Claim::Collapsible, bounds, Witness::Collapse { steps: steps.to_vec() })
}

/// A vertex fixed by every generator of `a`.
pub fn emit_fixed_point(a: &GroupAction, vertex: &Id, bounds: Bounds) -> Certificate {
    let claim = Claim::FixedPoint { vertex: vertex.clone() };
    Certificate::new(a.complex(), claim, bounds, Witness::Fixed { action: write_action(a) })
}

/// Parses and verifies a certificate document.
pub fn verify_json(s: &str) -> Result<Certificate, CertificateError> {
    let c = Certificate::from_json(s)?;
    verify(&c)?;
    Ok(c)
}

pub fn verify(c: &Certificate) -> Result<(), CertificateError> {
    if c.format != FORMAT {
        return Err(CertificateError::Malformed(format!("unknown format {:?}", c.format)));
    }
    let computed = sha256_hex(c.input.as_bytes());
    if computed != c.input_sha256 {
        return Err(CertificateError::HashMismatch { recorded: c.input_sha256.clone(), computed });
    }
    let x = TwoComplex::from_text(&c.input).map_err(|e| fail("input", e.to_string()))?;
    if !x.is_valid() {
        return Err(fail("input", x.validate().to_string()));
    }
    replay(&x, &c.claim, &c.witness)?;
    if c.compute_seal() != c.seal {
        return Err(CertificateError::SealMismatch);
    }
    Ok(())
}

fn replay(x: &TwoComplex, claim: &Claim, witness: &Witness) -> Result<(), CertificateError> {
    let shared = Arc::new(x.clone());
    match (claim, witness) {
        (Claim::Dr, Witness::FreeFaceOrder { order, loops }) => {
            replay_loops(&shared, loops)?;
            let mut cur = x.clone();
            for (i, (e, f)) in order.iter().enumerate() {
                cur = cur.collapse(e, f).map_err(|err| fail(format!("collapse step {i} ({e}, {f})"), err.to_string()))?;
            }
            if cur.num_faces() > 0 {
                return Err(fail("collapse order", format!("{} faces left", cur.num_faces())));
            }
            Ok(())
        }
        (Claim::NotDr, Witness::Core { faces, loops }) => {
            replay_loops(&shared, loops)?;
            let set: BTreeSet<&Id> = faces.iter().collect();
            if set.is_empty() || set.len() != faces.len() {
                return Err(fail("core", "core must be a non-empty set of faces"));
            }
            let mut counts: BTreeMap<&Id, usize> = BTreeMap::new();
            for f in &set {
                let word = x.face(*f).ok_or_else(|| fail("core", format!("unknown face {f}")))?;
                for l in word.letters() {
                    *counts.entry(&l.edge).or_default() += 1;
                }
            }
            match counts.iter().find(|(_, &n)| n == 1) {
                Some((e, _)) => Err(fail("core", format!("edge {e} is free"))),
                None => Ok(()),
            }
        }
        (Claim::NotDr, Witness::Sphere { area, diagram }) => {
            let d = parse_diagram(diagram, shared).map_err(|e| fail("sphere", e.to_string()))?;
            if !d.diagram.is_sphere() {
                return Err(fail("sphere", "diagram has a boundary"));
            }
            if d.area() != *area {
                return Err(fail("sphere", format!("area is {}, recorded {area}", d.area())));
            }
            if !d.map.is_near_immersion() {
                return Err(fail("sphere", "map folds at an edge"));
            }
            Ok(())
        }
        (Claim::SimplyConnected, Witness::Loops { loops }) => replay_loops(&shared, loops),
        (Claim::Filling { cycle, area }, Witness::Disk { area: witnessed, diagram }) => {
            let letters = parse_letters(cycle).ok_or_else(|| fail("cycle", "unreadable cycle"))?;
            let gamma = Cycle::from_letters(x, letters).ok_or_else(|| fail("cycle", "not a closed walk"))?;
            let d = parse_diagram(diagram, shared).map_err(|e| fail("disk", e.to_string()))?;
            if d.area() != *area || d.area() != *witnessed {
                return Err(fail("disk", format!("area is {}, recorded {area} and {witnessed}", d.area())));
            }
            check_boundary(x, &d, &gamma, "disk")
        }
        (Claim::Homology { betti, torsion1 }, Witness::Smith { d1, d2 }) => {
            let chains = ChainData::new(x);
            if !chains.d2.mul(&chains.d1).is_zero() {
                return Err(fail("chain complex", "boundary of boundary is not zero"));
            }
            let f1 = replay_snf(&chains.d1, d1, "d1")?;
            let f2 = replay_snf(&chains.d2, d2, "d2")?;
            let (r1, r2) = (f1.len(), f2.len());
            let computed = [
                chains.vertices.len() as i64 - r1 as i64,
                chains.edges.len() as i64 - r1 as i64 - r2 as i64,
                chains.faces.len() as i64 - r2 as i64,
            ];
            if computed != betti.map(|b| b as i64) {
                return Err(fail("betti", format!("replayed {computed:?}, recorded {betti:?}")));
            }
            let torsion: Vec<String> = f2.iter().filter(|d| **d > BigInt::from(1)).map(ToString::to_string).collect();
            if &torsion != torsion1 {
                return Err(fail("torsion", format!("replayed {torsion:?}, recorded {torsion1:?}")));
            }
            Ok(())
        }
        (Claim::Collapsible, Witness::Collapse { steps }) => {
            let end = replay_collapse(x, steps).map_err(|(i, e)| fail(format!("collapse step {i}"), e.to_string()))?;
            if end.num_vertices() != 1 || end.num_edges() != 0 || end.num_faces() != 0 {
                return Err(fail("collapse", "does not end at a single vertex"));
            }
            Ok(())
        }
        (Claim::FixedPoint { vertex }, Witness::Fixed { action }) => {
            if !x.has_vertex(vertex) {
                return Err(fail("fixed point", format!("unknown vertex {vertex}")));
            }
            let gens = parse_generators(&shared, action).map_err(|e| fail("action", e.to_string()))?;
            for (name, g) in &gens {
                if !g.is_bijective() {
                    return Err(fail(format!("generator {name}"), "not an automorphism"));
                }
                if g.cell(&Cell::Vertex(vertex.clone())) != Some(Cell::Vertex(vertex.clone())) {
                    return Err(fail(format!("generator {name}"), format!("moves {vertex}")));
                }
            }
            Ok(())
        }
        _ => Err(fail("witness", "witness kind does not match the claim")),
    }
}

/// Replays unimodular operations and returns the absolute diagonal, which
/// must form a divisibility chain.
fn replay_snf(m: &IntMatrix, ops: &[SnfOp], name: &str) -> Result<Vec<BigInt>, CertificateError> {
    let mut work = m.clone();
    for (i, op) in ops.iter().enumerate() {
        let (a, b, rows) = match op {
            SnfOp::SwapRows(a, b) => (*a, *b, true),
            SnfOp::AddRow { from, to, .. } => (*from, *to, true),
            SnfOp::SwapCols(a, b) => (*a, *b, false),
            SnfOp::AddCol { from, to, .. } => (*from, *to, false),
            SnfOp::NegateRow(a) => (*a, *a, true),
        };
        let n = if rows { work.rows() } else { work.cols() };
        let same = matches!(op, SnfOp::AddRow { .. } | SnfOp::AddCol { .. }) && a == b;
        if a >= n || b >= n || same {
            return Err(fail(format!("{name} op {i}"), "not a unimodular operation on this matrix"));
        }
        work.apply(op);
    }
    if !work.is_diagonal() {
        return Err(fail(name, "replayed matrix is not diagonal"));
    }
    let diag: Vec<BigInt> = (0..work.rows().min(work.cols())).map(|i| work.get(i, i).abs()).collect();
    let nonzero = diag.iter().take_while(|d| !d.is_zero()).count();
    if diag[nonzero..].iter().any(|d| !d.is_zero()) {
        return Err(fail(name, "zero entries precede non-zero ones on the diagonal"));
    }
    let factors = diag[..nonzero].to_vec();
    if factors.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
        return Err(fail(name, "diagonal is not a divisibility chain"));
    }
    Ok(factors)
}

fn check_boundary(x: &TwoComplex, d: &DiagramInX, gamma: &Cycle, step: &str) -> Result<(), CertificateError> {
    if !d.diagram.is_disk() {
        return Err(fail(step, "diagram has no boundary"));
    }
    let path = d.boundary_in_target().map_err(|e| fail(step, e.to_string()))?;
    let boundary = Cycle { path };
    if !boundary.same_cycle(gamma, x) {
        return Err(fail(step, format!("boundary {boundary} differs from {gamma}")));
    }
    Ok(())
}

fn replay_loops(x: &Arc<TwoComplex>, loops: &LoopFillings) -> Result<(), CertificateError> {
    let tree: BTreeSet<&Id> = loops.tree.iter().collect();
    if tree.len() != loops.tree.len() {
        return Err(fail("spanning tree", "repeated edge"));
    }
    if !x.has_vertex(&loops.root) {
        return Err(fail("spanning tree", format!("unknown root {}", loops.root)));
    }
    let mut links: BTreeMap<&Id, Vec<(DirectedEdge, &Id)>> = x.vertices().map(|v| (v, Vec::new())).collect();
    for e in &tree {
        let ends = x.edge(*e).ok_or_else(|| fail("spanning tree", format!("unknown edge {e}")))?;
        links.get_mut(&ends.tail).unwrap().push((DirectedEdge::plus((*e).clone()), &ends.head));
        links.get_mut(&ends.head).unwrap().push((DirectedEdge::minus((*e).clone()), &ends.tail));
    }
    let mut to_root: BTreeMap<&Id, Vec<DirectedEdge>> = BTreeMap::new();
    to_root.insert(&loops.root, Vec::new());
    let mut queue = VecDeque::from([&loops.root]);
    while let Some(v) = queue.pop_front() {
        for (l, w) in &links[v] {
            if !to_root.contains_key(w) {
                let mut p = to_root[v].clone();
                p.push(l.clone());
                to_root.insert(w, p);
                queue.push_back(w);
            }
        }
    }
    if to_root.len() != x.num_vertices() || tree.len() + 1 != x.num_vertices() {
        return Err(fail("spanning tree", "edges do not form a spanning tree"));
    }
    let fillings: BTreeMap<&Id, &String> = loops.fillings.iter().map(|(e, d)| (e, d)).collect();
    if fillings.len() != loops.fillings.len() {
        return Err(fail("loops", "edge filled twice"));
    }
    for e in x.edge_ids().filter(|e| !tree.contains(e)) {
        let step = format!("loop of {e}");
        let text = fillings.get(e).ok_or_else(|| fail(&step, "no filling"))?;
        let ends = x.edge(e).unwrap();
        let mut letters = to_root[&ends.tail].clone();
        letters.push(DirectedEdge::plus(e.clone()));
        letters.extend(to_root[&ends.head].iter().rev().map(DirectedEdge::inverse));
        let gamma = Cycle::new(loops.root.clone(), letters);
        let d = parse_diagram(text, x.clone()).map_err(|err| fail(&step, err.to_string()))?;
        check_boundary(x, &d, &gamma, &step)?;
    }
    if let Some(extra) = fillings.keys().find(|e| tree.contains(*e) || x.edge(**e).is_none()) {
        return Err(fail("loops", format!("filling for non-loop edge {extra}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{bigon_sphere, n_gon_disk, standard_action, torus, triangle_disk};
    use crate::dr::{decide_dr, sphere_search, DrBounds};
    use crate::homotopy::collapsible;

    fn roundtrip(c: &Certificate) -> Result<Certificate, CertificateError> {
        verify_json(&c.to_json())
    }

    #[test]
    fn dr_certificates_verify() {
        let b = Bounds::default();
        let x = triangle_disk();
        let c = emit_dr(&x, &decide_dr(&x, &DrBounds::default()), b).unwrap();
        assert_eq!(c.claim, Claim::Dr);
        roundtrip(&c).unwrap();
        let s = bigon_sphere();
        let c = emit_dr(&s, &decide_dr(&s, &DrBounds::default()), b).unwrap();
        assert!(matches!(c.witness, Witness::Core { .. }));
        roundtrip(&c).unwrap();
        assert!(emit_dr(&torus(), &decide_dr(&torus(), &DrBounds::default()), b).is_err());
    }

    #[test]
    fn sphere_and_area_tamper() {
        let s = bigon_sphere();
        let sphere = sphere_search(&s, 2).sphere.unwrap();
        let c = emit_sphere(&s, &sphere, Bounds::default());
        roundtrip(&c).unwrap();
        let mut bad = c.clone();
        bad.witness = match bad.witness {
            Witness::Sphere { diagram, .. } => Witness::Sphere { area: 3, diagram },
            w => w,
        };
        assert!(matches!(verify(&bad), Err(CertificateError::ReplayFailure { .. })));
    }

    #[test]
    fn collapse_order_tamper_names_step() {
        let x = n_gon_disk(3);
        let steps = collapsible(&x).unwrap();
        let c = emit_collapse(&x, &steps, Bounds::default());
        roundtrip(&c).unwrap();
        let mut bad = c.clone();
        if let Witness::Collapse { steps } = &mut bad.witness {
            steps.swap(0, 1);
        }
        match verify(&bad) {
            Err(CertificateError::ReplayFailure { step, .. }) => assert!(step.starts_with("collapse step 0")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn homology_and_fixed_point() {
        let c = emit_homology(&torus(), Bounds::default());
        assert_eq!(c.claim, Claim::Homology { betti: [1, 2, 1], torsion1: vec![] });
        roundtrip(&c).unwrap();
        let rp2 = crate::builders::standard("projective_plane").unwrap();
        roundtrip(&emit_homology(&rp2, Bounds::default())).unwrap();
        let a = standard_action("star_rotation").unwrap();
        let c = emit_fixed_point(&a, &Id::new("t"), Bounds::default());
        roundtrip(&c).unwrap();
        let mut bad = c.clone();
        bad.claim = Claim::FixedPoint { vertex: Id::new("t0") };
        assert!(verify(&bad).is_err());
    }

    #[test]
    fn hash_then_seal() {
        let x = triangle_disk();
        let c = emit_homology(&x, Bounds::default());
        let mut bad = c.clone();
        bad.input.push_str("vertex w\n");
        assert!(matches!(verify(&bad), Err(CertificateError::HashMismatch { .. })));
        let mut bad = c.clone();
        bad.bounds.max_area += 1;
        assert_eq!(verify(&bad), Err(CertificateError::SealMismatch));
    }
}
