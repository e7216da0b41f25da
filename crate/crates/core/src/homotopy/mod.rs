//! Integral homology, collapsing and the bounded simple-connectivity test.

mod snf;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::{ComplexError, Cycle, DirectedEdge, Id, Sign, TwoComplex};
use crate::diagram::{fill_cycle, DiagramError, DiagramInX, FillBounds};

pub use snf::{smith_normal_form, IntMatrix, SmithForm, SnfOp};

/// Boundary matrices with one row per higher-dimensional cell, in sorted id
/// order: `d1` is edges x vertices (head minus tail), `d2` is faces x edges
/// (signed occurrence counts). `d2 * d1 = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainData {
    pub vertices: Vec<Id>,
    pub edges: Vec<Id>,
    pub faces: Vec<Id>,
    pub d1: IntMatrix,
    pub d2: IntMatrix,
}

impl ChainData {
    pub fn new(x: &TwoComplex) -> ChainData {
        let vertices: Vec<Id> = x.vertices().cloned().collect();
        let edges: Vec<Id> = x.edge_ids().cloned().collect();
        let faces: Vec<Id> = x.face_ids().cloned().collect();
        let vpos: BTreeMap<&Id, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let epos: BTreeMap<&Id, usize> = edges.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut d1 = IntMatrix::zeros(edges.len(), vertices.len());
        for (i, (_, ends)) in x.edges().enumerate() {
            if let (Some(&t), Some(&h)) = (vpos.get(&ends.tail), vpos.get(&ends.head)) {
                d1.add_to(i, h, 1);
                d1.add_to(i, t, -1);
            }
        }
        let mut d2 = IntMatrix::zeros(faces.len(), edges.len());
        for (i, (_, word)) in x.faces().enumerate() {
            for l in word.letters() {
                if let Some(&e) = epos.get(&l.edge) {
                    d2.add_to(i, e, if l.sign == Sign::Plus { 1 } else { -1 });
                }
            }
        }
        ChainData { vertices, edges, faces, d1, d2 }
    }

    pub fn boundaries_compose_to_zero(&self) -> bool {
        self.d2.mul(&self.d1).is_zero()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub betti: [usize; 3],
    /// Invariant factors greater than one of the first homology.
    pub torsion1: Vec<BigInt>,
}

impl HomologyProfile {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti[0] as i64 - self.betti[1] as i64 + self.betti[2] as i64
    }

    /// Homology of a point.
    pub fn is_trivial(&self) -> bool {
        self.betti == [1, 0, 0] && self.torsion1.is_empty()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "betti {} {} {}", self.betti[0], self.betti[1], self.betti[2])?;
        if !self.torsion1.is_empty() {
            let t: Vec<String> = self.torsion1.iter().map(ToString::to_string).collect();
            write!(f, " torsion {}", t.join(" "))?;
        }
        Ok(())
    }
}

pub fn homology(x: &TwoComplex) -> HomologyProfile {
    let chains = ChainData::new(x);
    let s1 = smith_normal_form(&chains.d1);
    let s2 = smith_normal_form(&chains.d2);
    let (v, e, f) = (chains.vertices.len(), chains.edges.len(), chains.faces.len());
    let profile = HomologyProfile {
        betti: [v - s1.rank(), e - s1.rank() - s2.rank(), f - s2.rank()],
        torsion1: s2.torsion(),
    };
    debug_assert_eq!(profile.euler_characteristic(), x.euler_characteristic());
    profile
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CollapseStep {
    /// Remove a free edge together with its face.
    Collapse { edge: Id, face: Id },
    /// Remove a leaf edge together with its degree-one vertex.
    Prune { edge: Id, vertex: Id },
}

impl fmt::Display for CollapseStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollapseStep::Collapse { edge, face } => write!(f, "collapse {edge} {face}"),
            CollapseStep::Prune { edge, vertex } => write!(f, "prune {edge} {vertex}"),
        }
    }
}

pub fn apply_step(x: &TwoComplex, step: &CollapseStep) -> Result<TwoComplex, ComplexError> {
    match step {
        CollapseStep::Collapse { edge, face } => x.collapse(edge, face),
        CollapseStep::Prune { edge, vertex } => x.prune_leaf(edge, vertex),
    }
}

/// Replays a collapse sequence, returning the final complex.
pub fn replay_collapse(x: &TwoComplex, steps: &[CollapseStep]) -> Result<TwoComplex, (usize, ComplexError)> {
    let mut cur = x.clone();
    for (i, s) in steps.iter().enumerate() {
        cur = apply_step(&cur, s).map_err(|e| (i, e))?;
    }
    Ok(cur)
}

/// Collapses free faces (least edge first) and then prunes leaves of the
/// remaining graph down to a single vertex.
pub fn collapsible(x: &TwoComplex) -> Option<Vec<CollapseStep>> {
    if !x.is_valid() {
        return None;
    }
    let mut cur = x.clone();
    let mut steps = Vec::new();
    while let Some((edge, face)) = cur.free_edges().into_iter().next() {
        cur = cur.collapse(&edge, &face).ok()?;
        steps.push(CollapseStep::Collapse { edge, face });
    }
    if !cur.is_tree() {
        return None;
    }
    while cur.num_edges() > 0 {
        let degrees = cur.degrees();
        let (edge, vertex) = cur.edges().find_map(|(e, ends)| {
            [&ends.tail, &ends.head].into_iter().find(|v| degrees[v] == 1).map(|v| (e.clone(), v.clone()))
        })?;
        cur = cur.prune_leaf(&edge, &vertex).ok()?;
        steps.push(CollapseStep::Prune { edge, vertex });
    }
    Some(steps)
}

/// A spanning tree of the 1-skeleton grown breadth first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpanningTree {
    pub root: Id,
    /// For every vertex other than the root, the letter reaching it from its parent.
    pub parent: BTreeMap<Id, DirectedEdge>,
}

impl SpanningTree {
    /// Rooted at a vertex of largest degree (least id on ties).
    pub fn new(x: &TwoComplex) -> Option<SpanningTree> {
        let degrees = x.degrees();
        let root = degrees.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))?.0;
        SpanningTree::rooted(x, root)
    }

    pub fn rooted(x: &TwoComplex, root: &Id) -> Option<SpanningTree> {
        let adjacency = x.adjacency();
        let mut parent = BTreeMap::new();
        let mut seen = BTreeSet::from([root]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for (l, w) in adjacency.get(v)? {
                if seen.insert(w) {
                    parent.insert((*w).clone(), l.clone());
                    queue.push_back(w);
                }
            }
        }
        (seen.len() == x.num_vertices()).then(|| SpanningTree { root: root.clone(), parent })
    }

    pub fn tree_edges(&self) -> BTreeSet<&Id> {
        self.parent.values().map(|l| &l.edge).collect()
    }

    /// Letters of the tree path from the root to `v`.
    pub fn path_from_root(&self, x: &TwoComplex, v: &Id) -> Vec<DirectedEdge> {
        let mut out = Vec::new();
        let mut at = v.clone();
        while let Some(l) = self.parent.get(&at) {
            out.push(l.clone());
            at = x.tail(l).expect("tree letter").clone();
        }
        out.reverse();
        out
    }

    /// One loop at the root for every edge outside the tree.
    pub fn generator_loops(&self, x: &TwoComplex) -> Vec<(Id, Cycle)> {
        let tree = self.tree_edges();
        x.edges()
            .filter(|(e, _)| !tree.contains(e))
            .map(|(e, ends)| {
                let mut letters = self.path_from_root(x, &ends.tail);
                letters.push(DirectedEdge::plus(e.clone()));
                letters.extend(self.path_from_root(x, &ends.head).iter().rev().map(DirectedEdge::inverse));
                (e.clone(), Cycle::new(self.root.clone(), letters))
            })
            .collect()
    }
}

/// Fillings of every generator loop of a spanning tree.
#[derive(Clone, Debug)]
pub struct SimplyConnectedCertificate {
    pub root: Id,
    pub loops: Vec<(Id, Cycle, DiagramInX)>,
}

#[derive(Clone, Debug)]
pub enum SimpleConnectivity {
    Certified(SimplyConnectedCertificate),
    NotSimplyConnected(String),
    /// Loops that hit the search bounds.
    Unknown(Vec<Cycle>),
}

impl SimpleConnectivity {
    pub fn is_certified(&self) -> bool {
        matches!(self, SimpleConnectivity::Certified(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            SimpleConnectivity::Certified(_) => "certified",
            SimpleConnectivity::NotSimplyConnected(_) => "not-simply-connected",
            SimpleConnectivity::Unknown(_) => "unknown",
        }
    }
}

pub fn certify_simply_connected(x: &TwoComplex, bounds: &FillBounds) -> SimpleConnectivity {
    if !x.is_valid() {
        return SimpleConnectivity::NotSimplyConnected(format!("invalid complex: {}", x.validate()));
    }
    if !x.is_connected() {
        return SimpleConnectivity::NotSimplyConnected("disconnected".into());
    }
    let h = homology(x);
    if h.betti[1] > 0 || !h.torsion1.is_empty() {
        return SimpleConnectivity::NotSimplyConnected(format!("first homology is non-trivial ({h})"));
    }
    let tree = SpanningTree::new(x).expect("connected");
    let shared = Arc::new(x.clone());
    let mut loops = Vec::new();
    let mut stuck = Vec::new();
    for (edge, gamma) in tree.generator_loops(x) {
        match fill_cycle(&shared, &gamma, bounds) {
            Ok(Some(d)) => loops.push((edge, gamma, d)),
            Ok(None) => return SimpleConnectivity::NotSimplyConnected(format!("loop {gamma} bounds no disk")),
            Err(DiagramError::BoundsExhausted) => stuck.push(gamma),
            Err(e) => return SimpleConnectivity::NotSimplyConnected(e.to_string()),
        }
    }
    if stuck.is_empty() {
        SimpleConnectivity::Certified(SimplyConnectedCertificate { root: tree.root, loops })
    } else {
        SimpleConnectivity::Unknown(stuck)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Contractibility {
    Contractible,
    NotContractible,
    Unknown,
}

impl fmt::Display for Contractibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Contractibility::Contractible => "contractible",
            Contractibility::NotContractible => "not-contractible",
            Contractibility::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug)]
pub enum ContractibilityEvidence {
    Collapse(Vec<CollapseStep>),
    /// Simply connected with the homology of a point.
    Acyclic(HomologyProfile, SimplyConnectedCertificate),
    Obstruction(HomologyProfile),
    Inconclusive(HomologyProfile),
}

#[derive(Clone, Debug)]
pub struct ContractibilityReport {
    pub verdict: Contractibility,
    pub evidence: ContractibilityEvidence,
}

pub fn contractibility_verdict(x: &TwoComplex, bounds: &FillBounds) -> ContractibilityReport {
    if let Some(steps) = collapsible(x) {
        return ContractibilityReport { verdict: Contractibility::Contractible, evidence: ContractibilityEvidence::Collapse(steps) };
    }
    let h = homology(x);
    if !h.is_trivial() {
        return ContractibilityReport { verdict: Contractibility::NotContractible, evidence: ContractibilityEvidence::Obstruction(h) };
    }
    match certify_simply_connected(x, bounds) {
        SimpleConnectivity::Certified(c) => {
            ContractibilityReport { verdict: Contractibility::Contractible, evidence: ContractibilityEvidence::Acyclic(h, c) }
        }
        SimpleConnectivity::NotSimplyConnected(_) => {
            ContractibilityReport { verdict: Contractibility::NotContractible, evidence: ContractibilityEvidence::Inconclusive(h) }
        }
        SimpleConnectivity::Unknown(_) => {
            ContractibilityReport { verdict: Contractibility::Unknown, evidence: ContractibilityEvidence::Inconclusive(h) }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(s: &str) -> TwoComplex {
        TwoComplex::from_text(s).unwrap()
    }

    fn torus() -> TwoComplex {
        cx("vertex v\nedge a v v\nedge b v v\nface f a+ b+ a- b-\n")
    }

    fn bigon_sphere() -> TwoComplex {
        cx("vertex p\nvertex q\nedge e1 p q\nedge e2 p q\nface f1 e1+ e2-\nface f2 e1+ e2-\n")
    }

    fn triangle() -> TwoComplex {
        cx("vertex x\nvertex y\nvertex z\nedge e1 x y\nedge e2 y z\nedge e3 z x\nface f e1+ e2+ e3+\n")
    }

    #[test]
    fn homology_of_standard_complexes() {
        assert_eq!(homology(&torus()).betti, [1, 2, 1]);
        assert_eq!(homology(&bigon_sphere()).betti, [1, 0, 1]);
        assert!(homology(&triangle()).is_trivial());
        let rp2 = cx("vertex v\nedge a v v\nface f a+ a+\n");
        let h = homology(&rp2);
        assert_eq!(h.betti, [1, 0, 0]);
        assert_eq!(h.torsion1, vec![BigInt::from(2)]);
        for x in [torus(), bigon_sphere(), triangle(), rp2] {
            assert!(ChainData::new(&x).boundaries_compose_to_zero());
        }
    }

    #[test]
    fn collapsing() {
        let steps = collapsible(&triangle()).unwrap();
        assert_eq!(steps.len(), 3);
        let end = replay_collapse(&triangle(), &steps).unwrap();
        assert_eq!((end.num_vertices(), end.num_edges()), (1, 0));
        assert!(collapsible(&torus()).is_none());
        assert!(collapsible(&bigon_sphere()).is_none());
    }

    #[test]
    fn simple_connectivity() {
        let b = FillBounds::default();
        match certify_simply_connected(&bigon_sphere(), &b) {
            SimpleConnectivity::Certified(c) => {
                assert_eq!(c.loops.len(), 1);
                assert_eq!(c.loops[0].2.area(), 1);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(certify_simply_connected(&torus(), &b), SimpleConnectivity::NotSimplyConnected(_)));
        assert!(certify_simply_connected(&triangle(), &b).is_certified());
    }

    #[test]
    fn contractibility() {
        let b = FillBounds::default();
        assert_eq!(contractibility_verdict(&triangle(), &b).verdict, Contractibility::Contractible);
        assert_eq!(contractibility_verdict(&bigon_sphere(), &b).verdict, Contractibility::NotContractible);
        assert_eq!(contractibility_verdict(&cx("vertex p\n"), &b).verdict, Contractibility::Contractible);
    }
}
