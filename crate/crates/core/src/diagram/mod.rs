//! Disk and spherical diagrams.
//!
//! A [`Diagram`] is a complex together with a rotation system: the cyclic
//! order of edge-ends (darts) leaving each vertex. Tracing
//! `phi(d) = sigma(rev d)` recovers the faces of the embedding, so planarity,
//! disk-ness and sphere-ness are all checked combinatorially.

mod fill;
mod planar;
pub mod text;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::complex::{compose, CellularMap, Cycle, DirectedEdge, Id, MapError, Path, Sign, TwoComplex, Witness};

pub use fill::{enumerate_fillings, fill_cycle, Enumeration, FillBounds};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("not a disk diagram")]
    NotADisk,
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("bounds exhausted before a filling was found")]
    BoundsExhausted,
    #[error("boundary cycles do not correspond")]
    BoundaryMismatch,
    #[error("diagram is singular")]
    SingularDiagram,
    #[error("cycle is not embedded")]
    NotEmbedded,
    #[error("cycle is not a closed walk in the target")]
    NotACycle,
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Parse(#[from] crate::complex::text::ParseError),
}

fn invalid(msg: impl Into<String>) -> DiagramError {
    DiagramError::Invalid(msg.into())
}

/// Least rotation or reflection of a cyclic letter sequence.
pub fn canonical_letters(letters: &[DirectedEdge]) -> Vec<DirectedEdge> {
    let n = letters.len();
    let reversed: Vec<DirectedEdge> = letters.iter().rev().map(DirectedEdge::inverse).collect();
    let mut best: Option<Vec<DirectedEdge>> = None;
    for seq in [letters, &reversed[..]] {
        for k in 0..n {
            let cand: Vec<DirectedEdge> = (0..n).map(|i| seq[(k + i) % n].clone()).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

fn same_rotation_class(a: &[DirectedEdge], b: &[DirectedEdge]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|k| (0..a.len()).all(|i| a[(k + i) % a.len()] == b[i])))
}

/// A complex with a rotation system and, for disks, the outer boundary walk.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagram {
    complex: Arc<TwoComplex>,
    rotation: BTreeMap<Id, Vec<DirectedEdge>>,
    outer: Option<Path>,
}

impl Diagram {
    pub fn new(
        complex: Arc<TwoComplex>,
        rotation: BTreeMap<Id, Vec<DirectedEdge>>,
        outer: Option<Path>,
    ) -> Result<Diagram, DiagramError> {
        let d = Diagram { complex, rotation, outer };
        d.check()?;
        Ok(d)
    }

    pub fn complex(&self) -> &Arc<TwoComplex> {
        &self.complex
    }

    pub fn rotation(&self) -> &BTreeMap<Id, Vec<DirectedEdge>> {
        &self.rotation
    }

    pub fn outer(&self) -> Option<&Path> {
        self.outer.as_ref()
    }

    pub fn is_disk(&self) -> bool {
        self.outer.is_some()
    }

    pub fn is_sphere(&self) -> bool {
        self.outer.is_none()
    }

    pub fn area(&self) -> usize {
        self.complex.num_faces()
    }

    /// The next dart after `d` around its tail.
    pub fn sigma(&self, d: &DirectedEdge) -> Option<DirectedEdge> {
        let v = self.complex.tail(d)?;
        let r = self.rotation.get(v)?;
        let i = r.iter().position(|x| x == d)?;
        Some(r[(i + 1) % r.len()].clone())
    }

    pub fn sigma_inverse(&self, d: &DirectedEdge) -> Option<DirectedEdge> {
        let v = self.complex.tail(d)?;
        let r = self.rotation.get(v)?;
        let i = r.iter().position(|x| x == d)?;
        Some(r[(i + r.len() - 1) % r.len()].clone())
    }

    /// Face-tracing permutation.
    pub fn phi(&self, d: &DirectedEdge) -> Option<DirectedEdge> {
        self.sigma(&d.inverse())
    }

    pub fn darts(&self) -> Vec<DirectedEdge> {
        self.complex
            .edge_ids()
            .flat_map(|e| [DirectedEdge::plus(e.clone()), DirectedEdge::minus(e.clone())])
            .collect()
    }

    /// All orbits of [`Diagram::phi`], each starting at its least dart.
    pub fn traced_orbits(&self) -> Vec<Vec<DirectedEdge>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for d in self.darts() {
            if seen.contains(&d) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut cur = d.clone();
            loop {
                if !seen.insert(cur.clone()) {
                    break;
                }
                orbit.push(cur.clone());
                match self.phi(&cur) {
                    Some(next) => cur = next,
                    None => break,
                }
            }
            out.push(orbit);
        }
        out
    }

    fn check(&self) -> Result<(), DiagramError> {
        let x = &*self.complex;
        let report = x.validate();
        if !report.is_valid() {
            return Err(invalid(report.to_string().trim().to_string()));
        }
        if !x.is_connected() {
            return Err(invalid("not connected"));
        }
        let mut leaving: BTreeMap<&Id, BTreeSet<DirectedEdge>> = x.vertices().map(|v| (v, BTreeSet::new())).collect();
        for (e, ends) in x.edges() {
            leaving.get_mut(&ends.tail).unwrap().insert(DirectedEdge::plus(e.clone()));
            leaving.get_mut(&ends.head).unwrap().insert(DirectedEdge::minus(e.clone()));
        }
        if self.rotation.len() != leaving.len() {
            return Err(invalid("rotation must list every vertex exactly once"));
        }
        for (v, darts) in &leaving {
            let r = self.rotation.get(*v).ok_or_else(|| invalid(format!("no rotation at {v}")))?;
            let listed: BTreeSet<DirectedEdge> = r.iter().cloned().collect();
            if listed.len() != r.len() || &listed != darts {
                return Err(invalid(format!("rotation at {v} is not a cyclic order of its edge-ends")));
            }
        }
        let mut orbits: Vec<Vec<DirectedEdge>> = self.traced_orbits();
        match &self.outer {
            Some(outer) => {
                if !(Cycle { path: outer.clone() }).is_closed_walk(x) {
                    return Err(invalid("outer walk is not closed"));
                }
                if outer.is_empty() {
                    if x.num_vertices() != 1 || x.num_edges() != 0 {
                        return Err(invalid("empty outer walk on a non-trivial diagram"));
                    }
                } else {
                    let i = orbits
                        .iter()
                        .position(|o| same_rotation_class(o, &outer.letters))
                        .ok_or_else(|| invalid("outer walk is not a traced face"))?;
                    orbits.remove(i);
                }
                if x.euler_characteristic() != 1 {
                    return Err(invalid("Euler characteristic of a disk must be 1"));
                }
            }
            None => {
                if x.euler_characteristic() != 2 {
                    return Err(invalid("Euler characteristic of a sphere must be 2"));
                }
                if x.edge_occurrences().values().any(|&c| c != 2) {
                    return Err(invalid("every edge of a sphere carries two sides"));
                }
                if self.rotation.values().any(Vec::is_empty) {
                    return Err(invalid("isolated vertex in a sphere"));
                }
            }
        }
        let mut traced: Vec<Vec<DirectedEdge>> = orbits.iter().map(|o| canonical_letters(o)).collect();
        let mut words: Vec<Vec<DirectedEdge>> = x.faces().map(|(_, w)| canonical_letters(w.letters())).collect();
        traced.sort();
        words.sort();
        if traced != words {
            return Err(invalid("traced faces do not match the attached faces"));
        }
        Ok(())
    }

    /// The outer walk as a canonical cycle.
    pub fn boundary_cycle(&self) -> Result<Cycle, DiagramError> {
        let outer = self.outer.as_ref().ok_or(DiagramError::NotADisk)?;
        Ok(Cycle { path: outer.clone() }.canonical(&self.complex))
    }

    /// A disk is singular when its boundary walk revisits a vertex (the
    /// trivial diagram counts as singular).
    pub fn is_singular(&self) -> bool {
        match &self.outer {
            Some(outer) => outer.is_empty() || !Cycle { path: outer.clone() }.is_embedded(&self.complex),
            None => false,
        }
    }

    /// The same complex with every rotation reversed.
    pub fn mirror(&self) -> Diagram {
        let rotation = self.rotation.iter().map(|(v, r)| (v.clone(), r.iter().rev().cloned().collect())).collect();
        let outer = self.outer.as_ref().map(|o| {
            let letters: Vec<DirectedEdge> = o.letters.iter().rev().map(DirectedEdge::inverse).collect();
            Path::new(o.start.clone(), letters)
        });
        Diagram { complex: self.complex.clone(), rotation, outer }
    }

    /// The traced orbit bounding face `f`.
    pub fn face_orbit(&self, f: &Id) -> Option<Vec<DirectedEdge>> {
        let word = self.complex.face(f)?.letters();
        let inverse: Vec<DirectedEdge> = word.iter().rev().map(DirectedEdge::inverse).collect();
        self.traced_orbits()
            .into_iter()
            .find(|o| same_rotation_class(o, &inverse) || same_rotation_class(o, word))
    }
}

/// A diagram with a cellular map into a target complex.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagramInX {
    pub diagram: Diagram,
    pub map: CellularMap,
}

impl DiagramInX {
    pub fn new(diagram: Diagram, map: CellularMap) -> Result<DiagramInX, DiagramError> {
        if !(Arc::ptr_eq(diagram.complex(), map.source()) || **diagram.complex() == **map.source()) {
            return Err(invalid("map source is not the diagram complex"));
        }
        map.check()?;
        Ok(DiagramInX { diagram, map })
    }

    pub fn target(&self) -> &Arc<TwoComplex> {
        self.map.target()
    }

    pub fn area(&self) -> usize {
        self.diagram.area()
    }

    pub fn boundary_cycle(&self) -> Result<Cycle, DiagramError> {
        self.diagram.boundary_cycle()
    }

    /// The outer walk pushed into the target.
    pub fn boundary_in_target(&self) -> Result<Path, DiagramError> {
        let outer = self.diagram.outer().ok_or(DiagramError::NotADisk)?;
        self.map.path(outer).ok_or_else(|| invalid("outer walk leaves the map domain"))
    }

    pub fn is_near_immersion(&self) -> bool {
        self.map.is_near_immersion()
    }

    pub fn mirror(&self) -> DiagramInX {
        DiagramInX { diagram: self.diagram.mirror(), map: self.map.clone() }
    }

    pub fn to_text(&self) -> String {
        text::write_diagram(self)
    }
}

/// How the boundary of one disk is laid on the boundary of another:
/// position `j` goes to `offset + j`, or to `offset - j` read backwards.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct BoundaryCorrespondence {
    pub offset: usize,
    pub reversed: bool,
}

impl BoundaryCorrespondence {
    pub const IDENTITY: BoundaryCorrespondence = BoundaryCorrespondence { offset: 0, reversed: false };
}

fn outer_letters(d: &DiagramInX) -> Result<&[DirectedEdge], DiagramError> {
    Ok(&d.diagram.outer().ok_or(DiagramError::NotADisk)?.letters)
}

/// Position `j` of the first boundary as a dart of the second.
fn corresponding_dart(o2: &[DirectedEdge], iota: BoundaryCorrespondence, j: usize) -> DirectedEdge {
    let n = o2.len();
    if iota.reversed {
        o2[(iota.offset % n + n - j % n) % n].inverse()
    } else {
        o2[(iota.offset + j) % n].clone()
    }
}

/// Every correspondence under which the two boundaries have the same image
/// in the target, forward ones first.
pub fn boundary_correspondences(d1: &DiagramInX, d2: &DiagramInX) -> Result<Vec<BoundaryCorrespondence>, DiagramError> {
    let (o1, o2) = (outer_letters(d1)?, outer_letters(d2)?);
    if o1.len() != o2.len() {
        return Ok(Vec::new());
    }
    let n = o1.len();
    if n == 0 {
        let v1 = d1.map.vertex(&d1.diagram.outer().unwrap().start);
        let v2 = d2.map.vertex(&d2.diagram.outer().unwrap().start);
        return Ok(if v1 == v2 { vec![BoundaryCorrespondence::IDENTITY] } else { Vec::new() });
    }
    let l1 = d1.map.letters(o1).ok_or_else(|| invalid("unmapped boundary"))?;
    let l2 = d2.map.letters(o2).ok_or_else(|| invalid("unmapped boundary"))?;
    let mut out = Vec::new();
    for reversed in [false, true] {
        for offset in 0..n {
            let iota = BoundaryCorrespondence { offset, reversed };
            let ok = (0..n).all(|j| {
                let d = corresponding_dart(o2, iota, j);
                let image = d2.map.letter(&d);
                image.as_ref() == Some(&l1[j])
            });
            if ok {
                out.push(iota);
            }
        }
    }
    let _ = l2;
    Ok(out)
}

/// An isomorphism of diagrams over the target: `iota` on the boundary and
/// `jmath` on the whole disk.
#[derive(Clone, Debug)]
pub struct DiagramIsomorphism {
    pub iota: BoundaryCorrespondence,
    pub jmath: CellularMap,
}

/// Extends `iota` to an isomorphism `D1 -> D2` commuting with the maps to
/// the target, by propagation along the rotation systems.
pub fn diagram_isomorphic(d1: &DiagramInX, d2: &DiagramInX, iota: BoundaryCorrespondence) -> Option<DiagramIsomorphism> {
    let (o1, o2) = (outer_letters(d1).ok()?, outer_letters(d2).ok()?);
    if o1.len() != o2.len() || d1.area() != d2.area() {
        return None;
    }
    let (c1, c2) = (d1.diagram.complex(), d2.diagram.complex());
    if c1.num_vertices() != c2.num_vertices() || c1.num_edges() != c2.num_edges() {
        return None;
    }
    let mut vertices = BTreeMap::new();
    let mut edges = BTreeMap::new();
    if o1.is_empty() {
        vertices.insert(d1.diagram.outer()?.start.clone(), d2.diagram.outer()?.start.clone());
    } else {
        let mut darts: HashMap<DirectedEdge, DirectedEdge> = HashMap::new();
        let mut used: HashMap<DirectedEdge, DirectedEdge> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut assign = |a: DirectedEdge, b: DirectedEdge, queue: &mut VecDeque<(DirectedEdge, DirectedEdge)>| -> bool {
            match darts.get(&a) {
                Some(existing) => *existing == b,
                None => {
                    if used.contains_key(&b) {
                        return false;
                    }
                    darts.insert(a.clone(), b.clone());
                    used.insert(b.clone(), a.clone());
                    queue.push_back((a, b));
                    true
                }
            }
        };
        for j in 0..o1.len() {
            if !assign(o1[j].clone(), corresponding_dart(o2, iota, j), &mut queue) {
                return None;
            }
        }
        while let Some((a, b)) = queue.pop_front() {
            if !assign(a.inverse(), b.inverse(), &mut queue) {
                return None;
            }
            let next_b = if iota.reversed { d2.diagram.sigma_inverse(&b)? } else { d2.diagram.sigma(&b)? };
            if !assign(d1.diagram.sigma(&a)?, next_b, &mut queue) {
                return None;
            }
        }
        if darts.len() != 2 * c1.num_edges() {
            return None;
        }
        for (a, b) in &darts {
            let (ta, tb) = (c1.tail(a)?.clone(), c2.tail(b)?.clone());
            if let Some(prev) = vertices.insert(ta, tb.clone()) {
                if prev != tb {
                    return None;
                }
            }
            if a.sign == Sign::Plus {
                edges.insert(a.edge.clone(), (b.edge.clone(), b.sign));
            }
        }
    }
    let mut faces = BTreeMap::new();
    for (f, word) in c1.faces() {
        let image: Vec<DirectedEdge> = word
            .letters()
            .iter()
            .map(|l| {
                edges.get(&l.edge).map(|(e, s): &(Id, Sign)| DirectedEdge::new(e.clone(), l.sign.times(*s)))
            })
            .collect::<Option<_>>()?;
        let orbit1 = d1.diagram.face_orbit(f)?;
        let orbit_image: Vec<DirectedEdge> = orbit1
            .iter()
            .map(|l| edges.get(&l.edge).map(|(e, s)| DirectedEdge::new(e.clone(), l.sign.times(*s))))
            .collect::<Option<_>>()?;
        let mut found = None;
        for (g, w2) in c2.faces() {
            if w2.len() != image.len() {
                continue;
            }
            let Some(o2) = d2.diagram.face_orbit(g) else { continue };
            let reversed_orbit: Vec<DirectedEdge> = orbit_image.iter().rev().map(DirectedEdge::inverse).collect();
            if !(same_rotation_class(&o2, &orbit_image) || same_rotation_class(&o2, &reversed_orbit)) {
                continue;
            }
            if let Some(w) = crate::complex::find_witness(&image, w2.letters()) {
                found = Some((g.clone(), w));
                break;
            }
        }
        let (g, w): (Id, Witness) = found?;
        faces.insert(f.clone(), (g, w));
    }
    let jmath = CellularMap::new(c1.clone(), c2.clone(), vertices, edges, faces).ok()?;
    let composite = compose(&jmath, &d2.map).ok()?;
    composite.same_cells(&d1.map).then_some(DiagramIsomorphism { iota, jmath })
}

/// Glues two non-singular disks with corresponding boundaries into a sphere
/// mapping to the same target. Cells of `d1` get the prefix `a.`, interior
/// cells of `d2` the prefix `b.`.
pub fn glue_to_sphere(d1: &DiagramInX, d2: &DiagramInX) -> Result<DiagramInX, DiagramError> {
    if !d1.diagram.is_disk() || !d2.diagram.is_disk() {
        return Err(DiagramError::NotADisk);
    }
    if d1.diagram.is_singular() || d2.diagram.is_singular() {
        return Err(DiagramError::SingularDiagram);
    }
    if !Arc::ptr_eq(d1.target(), d2.target()) && **d1.target() != **d2.target() {
        return Err(DiagramError::BoundaryMismatch);
    }
    let iota = *boundary_correspondences(d1, d2)?.first().ok_or(DiagramError::BoundaryMismatch)?;
    let (o1, o2) = (outer_letters(d1)?, outer_letters(d2)?);
    let (c1, c2) = (d1.diagram.complex(), d2.diagram.complex());
    let a = |id: &Id| Id::new(format!("a.{id}"));
    let b = |id: &Id| Id::new(format!("b.{id}"));

    // Boundary cells of d2 are renamed onto d1.
    let mut edge2: BTreeMap<Id, (Id, Sign)> = BTreeMap::new();
    let mut vertex2: BTreeMap<Id, Id> = BTreeMap::new();
    for j in 0..o1.len() {
        let d = corresponding_dart(o2, iota, j);
        let target = &o1[j];
        edge2.insert(d.edge.clone(), (a(&target.edge), d.sign.times(target.sign)));
        vertex2.insert(c2.tail(&d).unwrap().clone(), a(c1.tail(target).unwrap()));
    }
    let tr_vertex = |v: &Id| vertex2.get(v).cloned().unwrap_or_else(|| b(v));
    let tr_dart = |d: &DirectedEdge| match edge2.get(&d.edge) {
        Some((e, s)) => DirectedEdge::new(e.clone(), d.sign.times(*s)),
        None => DirectedEdge::new(b(&d.edge), d.sign),
    };

    let mut complex = TwoComplex::new();
    for v in c1.vertices() {
        complex.insert_vertex_unchecked(a(v));
    }
    for v in c2.vertices().filter(|v| !vertex2.contains_key(*v)) {
        complex.insert_vertex_unchecked(b(v));
    }
    for (e, ends) in c1.edges() {
        complex.insert_edge_unchecked(a(e), a(&ends.tail), a(&ends.head));
    }
    for (e, ends) in c2.edges().filter(|(e, _)| !edge2.contains_key(*e)) {
        complex.insert_edge_unchecked(b(e), tr_vertex(&ends.tail), tr_vertex(&ends.head));
    }
    for (f, word) in c1.faces() {
        let letters = word.letters().iter().map(|l| DirectedEdge::new(a(&l.edge), l.sign)).collect();
        complex.insert_face_unchecked(a(f), crate::complex::AttachingWord::new(letters));
    }
    for (f, word) in c2.faces() {
        let letters = word.letters().iter().map(tr_dart).collect();
        complex.insert_face_unchecked(b(f), crate::complex::AttachingWord::new(letters));
    }

    // Inner orbits of both disks; the second is mirrored when its boundary
    // runs the same way as the first.
    let mut orbits: Vec<Vec<DirectedEdge>> = Vec::new();
    for o in d1.diagram.traced_orbits() {
        if !same_rotation_class(&o, o1) {
            orbits.push(o.iter().map(|l| DirectedEdge::new(a(&l.edge), l.sign)).collect());
        }
    }
    for o in d2.diagram.traced_orbits() {
        if same_rotation_class(&o, o2) {
            continue;
        }
        let mapped: Vec<DirectedEdge> = o.iter().map(tr_dart).collect();
        if iota.reversed {
            orbits.push(mapped);
        } else {
            orbits.push(mapped.iter().rev().map(DirectedEdge::inverse).collect());
        }
    }
    let mut next: HashMap<DirectedEdge, DirectedEdge> = HashMap::new();
    for o in &orbits {
        for (i, d) in o.iter().enumerate() {
            if next.insert(d.clone(), o[(i + 1) % o.len()].clone()).is_some() {
                return Err(invalid("glued faces overlap"));
            }
        }
    }
    let mut rotation: BTreeMap<Id, Vec<DirectedEdge>> = BTreeMap::new();
    let mut leaving: BTreeMap<Id, BTreeSet<DirectedEdge>> = complex.vertices().map(|v| (v.clone(), BTreeSet::new())).collect();
    for (e, ends) in complex.edges() {
        leaving.get_mut(&ends.tail).unwrap().insert(DirectedEdge::plus(e.clone()));
        leaving.get_mut(&ends.head).unwrap().insert(DirectedEdge::minus(e.clone()));
    }
    for (v, darts) in &leaving {
        let mut order = Vec::new();
        if let Some(first) = darts.iter().next() {
            let mut cur = first.clone();
            loop {
                order.push(cur.clone());
                cur = next.get(&cur.inverse()).cloned().ok_or_else(|| invalid("glued rotation is incomplete"))?;
                if &cur == first || order.len() > darts.len() {
                    break;
                }
            }
        }
        rotation.insert(v.clone(), order);
    }
    let complex = Arc::new(complex);
    let diagram = Diagram::new(complex.clone(), rotation, None)?;

    let mut vertices = BTreeMap::new();
    let mut edges = BTreeMap::new();
    let mut faces = BTreeMap::new();
    for (v, w) in d1.map.vertex_map() {
        vertices.insert(a(v), w.clone());
    }
    for (v, w) in d2.map.vertex_map() {
        if !vertex2.contains_key(v) {
            vertices.insert(b(v), w.clone());
        }
    }
    for (e, img) in d1.map.edge_map() {
        edges.insert(a(e), img.clone());
    }
    for (e, img) in d2.map.edge_map() {
        if !edge2.contains_key(e) {
            edges.insert(b(e), img.clone());
        }
    }
    for (f, img) in d1.map.face_map() {
        faces.insert(a(f), img.clone());
    }
    for (f, img) in d2.map.face_map() {
        faces.insert(b(f), img.clone());
    }
    let map = CellularMap::new(complex, d1.target().clone(), vertices, edges, faces)?;
    DiagramInX::new(diagram, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Cycle;

    fn arc(s: &str) -> Arc<TwoComplex> {
        Arc::new(TwoComplex::from_text(s).unwrap())
    }

    fn triangle() -> Arc<TwoComplex> {
        arc("vertex x\nvertex y\nvertex z\nedge e1 x y\nedge e2 y z\nedge e3 z x\nface f e1+ e2+ e3+\n")
    }

    fn bigon_sphere() -> Arc<TwoComplex> {
        arc("vertex p\nvertex q\nedge e1 p q\nedge e2 p q\nface f1 e1+ e2-\nface f2 e1+ e2-\n")
    }

    fn torus() -> Arc<TwoComplex> {
        arc("vertex v\nedge a v v\nedge b v v\nface f a+ b+ a- b-\n")
    }

    fn cycle(x: &TwoComplex, s: &str) -> Cycle {
        Cycle::from_letters(x, crate::complex::parse_letters(s).unwrap()).unwrap()
    }

    fn fill(x: &Arc<TwoComplex>, s: &str) -> DiagramInX {
        fill_cycle(x, &cycle(x, s), &FillBounds::default()).unwrap().unwrap()
    }

    #[test]
    fn triangle_fills_with_one_face() {
        let x = triangle();
        let d = fill(&x, "e1+ e2+ e3+");
        assert_eq!(d.area(), 1);
        assert!(d.is_near_immersion());
        assert_eq!(d.boundary_in_target().unwrap().letters, crate::complex::parse_letters("e1+ e2+ e3+").unwrap());
        assert_eq!(d.boundary_cycle().unwrap().len(), 3);
        assert!(!d.diagram.is_singular());
    }

    #[test]
    fn torus_commutator_and_loop() {
        let x = torus();
        assert_eq!(fill(&x, "a+ b+ a- b-").area(), 1);
        let small = FillBounds { max_area: 6, ..FillBounds::default() };
        assert!(fill_cycle(&x, &cycle(&x, "a+"), &small).unwrap().is_none());
        let bs = Arc::new(TwoComplex::from_text("vertex v\nedge a v v\nedge b v v\nface r a+ b+ a- b- b-\n").unwrap());
        let err = fill_cycle(&bs, &cycle(&bs, "b+"), &small).unwrap_err();
        assert_eq!(err, DiagramError::BoundsExhausted);
    }

    #[test]
    fn trivial_and_spur_fillings() {
        let x = triangle();
        let d = fill_cycle(&x, &Cycle::new("x", vec![]), &FillBounds::default()).unwrap().unwrap();
        assert_eq!(d.area(), 0);
        assert_eq!(d.boundary_cycle().unwrap().len(), 0);
        let d = fill(&x, "e1+ e1-");
        assert_eq!(d.area(), 0);
        let d = fill(&x, "e1+ e2+ e2- e1- e3- e3+");
        assert_eq!(d.area(), 0);
        let d = fill(&x, "e3- e3+ e1+ e2+ e3+");
        assert_eq!(d.area(), 1);
    }

    #[test]
    fn two_triangles_outer_cycle() {
        let x = arc(
            "vertex a\nvertex b\nvertex c\nvertex d\nedge s a b\nedge p b c\nedge q c a\nedge r b d\nedge t d a\n\
             face f1 s+ p+ q+\nface f2 s- t- r-\n",
        );
        let d = fill(&x, "p+ q+ t- r-");
        assert_eq!(d.area(), 2);
        assert_eq!(d.boundary_cycle().unwrap().len(), 4);
        assert!(d.is_near_immersion());
    }

    #[test]
    fn bigon_glue_is_reduced() {
        let x = bigon_sphere();
        let e = enumerate_fillings(&x, &cycle(&x, "e1+ e2-"), 1).unwrap();
        assert_eq!(e.fillings.len(), 2);
        let s = glue_to_sphere(&e.fillings[0], &e.fillings[1]).unwrap();
        assert!(s.diagram.is_sphere());
        assert_eq!(s.area(), 2);
        assert_eq!(s.diagram.complex().euler_characteristic(), 2);
        assert!(s.is_near_immersion());
        let folded = glue_to_sphere(&e.fillings[0], &e.fillings[0]).unwrap();
        assert!(!folded.is_near_immersion());
        assert!(diagram_isomorphic(&e.fillings[0], &e.fillings[1], BoundaryCorrespondence::IDENTITY).is_none());
    }

    #[test]
    fn torus_self_glue_folds() {
        let x = torus();
        let d = fill(&x, "a+ b+ a- b-");
        let s = glue_to_sphere(&d, &d).unwrap();
        assert_eq!(s.area(), 2);
        assert!(!s.is_near_immersion());
    }

    #[test]
    fn triangle_self_glue_and_iso() {
        let x = triangle();
        let d = fill(&x, "e1+ e2+ e3+");
        let s = glue_to_sphere(&d, &d).unwrap();
        assert!(!s.is_near_immersion());
        let iso = diagram_isomorphic(&d, &d, BoundaryCorrespondence::IDENTITY).unwrap();
        assert!(iso.jmath.is_identity());
        let mirrored = d.mirror();
        assert!(mirrored.diagram.outer().is_some());
    }

    #[test]
    fn areas_differ_no_iso() {
        let x = triangle();
        let d1 = fill(&x, "e1+ e2+ e3+");
        let d0 = fill(&x, "e1+ e1-");
        assert!(diagram_isomorphic(&d1, &d0, BoundaryCorrespondence::IDENTITY).is_none());
    }

    #[test]
    fn tree_trivial_enumeration() {
        let x = arc("vertex a\nvertex b\nedge e a b\n");
        let e = enumerate_fillings(&x, &Cycle::new("a", vec![]), 6).unwrap();
        assert_eq!(e.fillings.len(), 1);
        assert_eq!(e.fillings[0].area(), 0);
    }

    #[test]
    fn bigon_enumeration_higher_areas() {
        let x = bigon_sphere();
        let e = enumerate_fillings(&x, &cycle(&x, "e1+ e2-"), 6).unwrap();
        let area_one = e.fillings.iter().filter(|d| d.area() == 1).count();
        assert_eq!(area_one, 2);
        for d in &e.fillings {
            assert!(d.is_near_immersion());
            assert_eq!(d.area() % 2, 1);
        }
    }

    #[test]
    fn text_round_trip() {
        let x = torus();
        let d = fill(&x, "a+ b+ a- b-");
        let t = d.to_text();
        let back = text::parse_diagram(&t, x).unwrap();
        assert_eq!(back.to_text(), t);
    }
}
