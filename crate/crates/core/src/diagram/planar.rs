//! Integer-indexed planar maps used while building diagrams.
//!
//! Dart `2i` runs along edge `i` from its tail to its head, dart `2i + 1`
//! back. `rot[v]` is the cyclic order of darts leaving `v`; faces are traced
//! by `phi(d) = sigma(rev d)`. The outer walk is traced forwards and each
//! inner face is traced as the inverse of its attaching word.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{AttachingWord, CellularMap, DirectedEdge, Id, IndexedComplex, Letter, Path, TwoComplex, Witness};

use super::{Diagram, DiagramError, DiagramInX};

#[derive(Clone, Debug)]
pub(crate) struct PlanarFace {
    pub darts: Vec<u32>,
    pub xface: u32,
    pub witness: Witness,
}

#[derive(Clone, Debug)]
pub(crate) struct Planar {
    pub vlabel: Vec<u32>,
    pub tail: Vec<u32>,
    pub label: Vec<Letter>,
    pub rot: Vec<Vec<u32>>,
    pub faces: Vec<PlanarFace>,
    pub outer: Vec<u32>,
    pub base: u32,
}

fn rev(d: u32) -> u32 {
    d ^ 1
}

impl Planar {
    pub fn trivial(vertex: u32) -> Planar {
        Planar {
            vlabel: vec![vertex],
            tail: Vec::new(),
            label: Vec::new(),
            rot: vec![Vec::new()],
            faces: Vec::new(),
            outer: Vec::new(),
            base: 0,
        }
    }

    pub fn area(&self) -> usize {
        self.faces.len()
    }

    fn corner_vertex(&self, q: usize) -> u32 {
        if self.outer.is_empty() {
            self.base
        } else {
            self.tail[self.outer[q % self.outer.len()] as usize]
        }
    }

    /// Puts `new` immediately before the outer dart leaving corner `q`.
    fn insert_at_corner(&mut self, q: usize, new: &[u32]) {
        let v = self.corner_vertex(q) as usize;
        if self.outer.is_empty() {
            self.rot[v].extend_from_slice(new);
            return;
        }
        let before = self.outer[q % self.outer.len()];
        let at = self.rot[v].iter().position(|&d| d == before).expect("outer dart in rotation");
        self.rot[v].splice(at..at, new.iter().copied());
    }

    fn new_vertex(&mut self, label: u32) -> u32 {
        self.vlabel.push(label);
        self.rot.push(Vec::new());
        (self.vlabel.len() - 1) as u32
    }

    fn new_edge(&mut self, from: u32, to: u32, label: Letter) -> u32 {
        let d = self.tail.len() as u32;
        self.tail.push(from);
        self.tail.push(to);
        self.label.push(label);
        self.label.push(label ^ 1);
        d
    }

    /// A leaf edge labelled `x` hanging into the outer face at corner `q`;
    /// the outer walk gains `x x^-1` at position `q`.
    pub fn add_spur(&mut self, ix: &IndexedComplex, q: usize, x: Letter) {
        let v = self.corner_vertex(q);
        debug_assert_eq!(ix.tail(x), self.vlabel[v as usize]);
        let u = self.new_vertex(ix.head(x));
        let n = self.new_edge(v, u, x);
        self.insert_at_corner(q, &[n]);
        self.rot[u as usize].push(rev(n));
        self.outer.splice(q..q, [n, rev(n)]);
    }

    /// A leaf edge labelled `x` whose free end becomes the new start of the
    /// outer walk, which turns into `x W x^-1`.
    pub fn add_wrap(&mut self, ix: &IndexedComplex, x: Letter) {
        let v = self.corner_vertex(0);
        debug_assert_eq!(ix.head(x), self.vlabel[v as usize]);
        let u = self.new_vertex(ix.tail(x));
        let n = self.new_edge(u, v, x);
        self.insert_at_corner(0, &[rev(n)]);
        self.rot[u as usize].push(n);
        self.outer.insert(0, n);
        self.outer.push(rev(n));
    }

    /// Attaches a face along the outer path at positions `i..i+m` with a new
    /// edge labelled `x`; the outer walk loses that path and gains `x`.
    pub fn add_face(&mut self, i: usize, m: usize, x: Letter, xface: u32, witness: Witness) {
        let len = self.outer.len();
        debug_assert!(i + m <= len.max(i));
        let a = self.corner_vertex(i);
        let b = self.corner_vertex(i + m);
        let n = self.new_edge(a, b, x);
        if len == 0 {
            self.rot[self.base as usize] = vec![n, rev(n)];
        } else if m == 0 {
            self.insert_at_corner(i, &[n, rev(n)]);
        } else if m == len {
            self.insert_at_corner(i, &[rev(n), n]);
        } else {
            self.insert_at_corner(i, &[n]);
            self.insert_at_corner(i + m, &[rev(n)]);
        }
        let mut darts = vec![n];
        darts.extend(self.outer[i..i + m].iter().rev().map(|&d| rev(d)));
        self.faces.push(PlanarFace { darts, xface, witness });
        self.outer.splice(i..i + m, [n]);
    }

    /// Joins `inner` (based at the head of `x`) and `outer` (based at its
    /// tail) by a bridge labelled `x`: the walk becomes `x W1 x^-1 W2`.
    pub fn bridge(inner: &Planar, outer: &Planar, x: Letter) -> Planar {
        let mut d = inner.clone();
        let voff = d.vlabel.len() as u32;
        let doff = d.tail.len() as u32;
        d.vlabel.extend_from_slice(&outer.vlabel);
        d.tail.extend(outer.tail.iter().map(|v| v + voff));
        d.label.extend_from_slice(&outer.label);
        d.rot.extend(outer.rot.iter().map(|r| r.iter().map(|x| x + doff).collect::<Vec<_>>()));
        d.faces.extend(outer.faces.iter().map(|f| PlanarFace {
            darts: f.darts.iter().map(|x| x + doff).collect(),
            xface: f.xface,
            witness: f.witness,
        }));
        let outer_walk: Vec<u32> = outer.outer.iter().map(|x| x + doff).collect();
        let v1 = inner.corner_vertex(0);
        let v2 = outer.corner_vertex(0) + voff;
        let n = d.new_edge(v2, v1, x);
        d.insert_at_corner(0, &[rev(n)]);
        match outer_walk.first() {
            None => d.rot[v2 as usize].push(n),
            Some(&first) => {
                let r = &mut d.rot[v2 as usize];
                let at = r.iter().position(|&y| y == first).expect("outer dart in rotation");
                r.insert(at, n);
            }
        }
        let mut walk = vec![n];
        walk.extend_from_slice(&inner.outer);
        walk.push(rev(n));
        walk.extend(outer_walk);
        d.outer = walk;
        d
    }

    /// Moves the start of the outer walk forward by `shift` positions.
    pub fn rotate_outer(&mut self, shift: usize) {
        if !self.outer.is_empty() {
            let len = self.outer.len();
            self.outer.rotate_left(shift % len);
        }
    }

    pub fn outer_labels(&self) -> Vec<Letter> {
        self.outer.iter().map(|&d| self.label[d as usize]).collect()
    }

    pub fn into_diagram(self, ix: &IndexedComplex, target: &Arc<TwoComplex>) -> Result<DiagramInX, DiagramError> {
        let vname = |v: u32| Id::new(format!("v{v}"));
        let ename = |e: u32| Id::new(format!("e{e}"));
        let dart = |d: u32| {
            let e = ename(d >> 1);
            if d & 1 == 0 {
                DirectedEdge::plus(e)
            } else {
                DirectedEdge::minus(e)
            }
        };
        let mut complex = TwoComplex::new();
        for v in 0..self.vlabel.len() as u32 {
            complex.insert_vertex_unchecked(vname(v));
        }
        for e in 0..(self.tail.len() / 2) as u32 {
            complex.insert_edge_unchecked(ename(e), vname(self.tail[2 * e as usize]), vname(self.tail[2 * e as usize + 1]));
        }
        for (k, f) in self.faces.iter().enumerate() {
            let word = f.darts.iter().map(|&d| dart(d)).collect();
            complex.insert_face_unchecked(Id::new(format!("f{k}")), AttachingWord::new(word));
        }
        let rotation = self
            .rot
            .iter()
            .enumerate()
            .map(|(v, r)| (vname(v as u32), r.iter().map(|&d| dart(d)).collect()))
            .collect();
        let start = if self.outer.is_empty() { self.base } else { self.tail[self.outer[0] as usize] };
        let outer = Path::new(vname(start), self.outer.iter().map(|&d| dart(d)).collect());
        let complex = Arc::new(complex);
        let diagram = Diagram::new(complex.clone(), rotation, Some(outer))?;
        let vertices = self.vlabel.iter().enumerate().map(|(v, &x)| (vname(v as u32), ix.vertex_id(x).clone())).collect();
        let edges = (0..(self.tail.len() / 2) as u32)
            .map(|e| {
                let l = ix.directed(self.label[2 * e as usize]);
                (ename(e), (l.edge, l.sign))
            })
            .collect();
        let faces: BTreeMap<Id, (Id, Witness)> = self
            .faces
            .iter()
            .enumerate()
            .map(|(k, f)| (Id::new(format!("f{k}")), (ix.face_id(f.xface).clone(), f.witness)))
            .collect();
        let map = CellularMap::new(complex, target.clone(), vertices, edges, faces)?;
        DiagramInX::new(diagram, map)
    }
}
