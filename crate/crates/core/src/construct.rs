//! Path-orbit graphs and the equivariant filling of an invariant graph.
//!
//! One embedded cycle per orbit is filled by a minimal disk; the other cycles
//! of the orbit receive translated copies of that disk, and the copies are
//! glued to the graph along their boundaries. The resulting complex `Y` maps
//! to `X` and carries an action making that map equivariant.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::action::{ActionError, GroupAction};
use crate::complex::{
    compose, embedded_cycles, embedded_paths, AttachingWord, Cell, CellularMap, Cycle, DirectedEdge, Id, MapError, Path,
    Sign, TwoComplex, Witness,
};
use crate::diagram::{boundary_correspondences, diagram_isomorphic, fill_cycle, DiagramError, DiagramInX, FillBounds};
use crate::dr::greedy_core;
use crate::homotopy::certify_simply_connected;

#[derive(Debug, Error, Clone)]
pub enum ConstructError {
    #[error("path is not embedded in the complex")]
    NotEmbedded,
    #[error("endpoint {0} is moved by element #{1}")]
    EndpointsNotFixed(Id, usize),
    #[error("a path of length {0} joins the endpoints")]
    NotMinimal(usize),
    #[error("subcomplex is not invariant: element #{0} moves {1} outside it")]
    NotInvariant(usize, Cell),
    #[error("cycle {0} has no filling within bounds")]
    BoundsExhausted(Cycle),
    #[error("preconditions not certified: {0}")]
    PreconditionsNotCertified(String),
    #[error("induced action has inversions: {0}")]
    InducedInversion(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// The union of the translates of an embedded path of minimal length between
/// two fixed vertices.
pub fn orbit_graph(a: &GroupAction, alpha: &Path) -> Result<TwoComplex, ConstructError> {
    let x = a.complex();
    if !alpha.is_embedded(x) {
        return Err(ConstructError::NotEmbedded);
    }
    let end = alpha.end(x).ok_or(ConstructError::NotEmbedded)?;
    for v in [&alpha.start, &end] {
        if let Some(h) = (0..a.order()).find(|&h| a.element(h).unwrap().vertex(v) != Some(v)) {
            return Err(ConstructError::EndpointsNotFixed(v.clone(), h));
        }
    }
    if !alpha.is_empty() {
        if let Some(p) = embedded_paths(x, &alpha.start, &end, alpha.len() - 1).first() {
            return Err(ConstructError::NotMinimal(p.len()));
        }
    }
    let mut cells: BTreeSet<Cell> = alpha.vertices(x).unwrap().into_iter().map(Cell::Vertex).collect();
    cells.extend(alpha.letters.iter().map(|l| Cell::Edge(l.edge.clone())));
    let orbit: BTreeSet<Cell> = cells.iter().flat_map(|c| (0..a.order()).map(move |h| a.image(h, c))).collect();
    let y0 = x.subcomplex(&orbit).ok_or_else(|| ConstructError::Invalid("translates do not form a subcomplex".into()))?;
    check_invariant(a, &y0)?;
    if !y0.is_connected() {
        return Err(ConstructError::Invalid("orbit graph is disconnected".into()));
    }
    Ok(y0)
}

fn check_invariant(a: &GroupAction, sub: &TwoComplex) -> Result<(), ConstructError> {
    for c in sub.cells() {
        for h in 0..a.order() {
            let img = a.image(h, &c);
            if !sub.has_cell(&img) {
                return Err(ConstructError::NotInvariant(h, c));
            }
        }
    }
    Ok(())
}

/// One orbit of embedded cycles with the filling of its representative.
#[derive(Clone, Debug)]
pub struct CycleOrbit {
    pub representative: Cycle,
    /// Coset representatives: copy `c` of the disk maps onto `cosets[c]` applied to the representative.
    pub cosets: Vec<usize>,
    pub stabilizer: Vec<usize>,
    pub filling: DiagramInX,
}

#[derive(Clone, Debug)]
pub struct EquivariantFilling {
    pub y0: Arc<TwoComplex>,
    pub y: Arc<TwoComplex>,
    pub action: GroupAction,
    /// The equivariant map `Y -> X`.
    pub map: CellularMap,
    pub orbits: Vec<CycleOrbit>,
    /// Cells of `Y` outside `Y0`: (orbit, coset, cell of the disk).
    pub provenance: BTreeMap<Cell, (usize, usize, Cell)>,
}

fn copy_name(copy: usize, id: &Id) -> Id {
    Id::new(format!("y{copy}.{id}"))
}

/// How one disk copy sits in `Y`.
struct Copy {
    index: usize,
    /// Disk to target, already translated.
    delta: CellularMap,
    boundary_vertices: BTreeSet<Id>,
    boundary_edges: BTreeSet<Id>,
}

impl Copy {
    fn vertex(&self, v: &Id) -> Id {
        if self.boundary_vertices.contains(v) {
            self.delta.vertex(v).unwrap().clone()
        } else {
            copy_name(self.index, v)
        }
    }

    fn edge(&self, e: &Id) -> (Id, Sign) {
        if self.boundary_edges.contains(e) {
            self.delta.edge(e).unwrap().clone()
        } else {
            (copy_name(self.index, e), Sign::Plus)
        }
    }

    fn letter(&self, l: &DirectedEdge) -> DirectedEdge {
        let (e, s) = self.edge(&l.edge);
        DirectedEdge::new(e, l.sign.times(s))
    }
}

/// The automorphism `a` of the disk with `delta ∘ a = k ∘ delta`.
fn disk_automorphism(d: &DiagramInX, k: &CellularMap) -> Result<CellularMap, ConstructError> {
    let moved = DiagramInX { diagram: d.diagram.clone(), map: compose(&d.map, k)? };
    for iota in boundary_correspondences(&moved, d)? {
        if let Some(iso) = diagram_isomorphic(&moved, d, iota) {
            return Ok(iso.jmath);
        }
    }
    Err(ConstructError::Invalid("translated filling is not isomorphic to the filling".into()))
}

pub fn equivariant_filling(a: &GroupAction, y0: &TwoComplex, bounds: &FillBounds) -> Result<EquivariantFilling, ConstructError> {
    let x = a.complex().clone();
    if !certify_simply_connected(&x, bounds).is_certified() {
        return Err(ConstructError::PreconditionsNotCertified("simple connectivity".into()));
    }
    if !greedy_core(&x).is_collapsible() {
        return Err(ConstructError::PreconditionsNotCertified("diagrammatic reducibility".into()));
    }
    let inv = a.has_inversions();
    if !inv.is_empty() {
        return Err(ActionError::HasInversions(inv).into());
    }
    if !y0.is_subcomplex_of(&x) || y0.num_faces() > 0 || !y0.is_connected() {
        return Err(ConstructError::Invalid("Y0 must be a connected graph inside the complex".into()));
    }
    check_invariant(a, y0)?;

    let act = |h: usize, g: &Cycle| a.element(h).unwrap().cycle(g).unwrap().canonical(&x);
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for gamma in embedded_cycles(y0) {
        if seen.contains(&gamma) {
            continue;
        }
        let mut images = Vec::new();
        let mut cosets = Vec::new();
        for h in 0..a.order() {
            let c = act(h, &gamma);
            if !images.contains(&c) {
                images.push(c);
                cosets.push(h);
            }
        }
        seen.extend(images);
        let stabilizer: Vec<usize> = (0..a.order()).filter(|&h| act(h, &gamma) == gamma).collect();
        let filling = match fill_cycle(&x, &gamma, bounds) {
            Ok(Some(d)) => d,
            Ok(None) | Err(DiagramError::BoundsExhausted) => return Err(ConstructError::BoundsExhausted(gamma)),
            Err(e) => return Err(e.into()),
        };
        if !filling.is_near_immersion() || filling.diagram.is_singular() {
            return Err(ConstructError::Invalid(format!("filling of {gamma} is not a non-singular near-immersion")));
        }
        orbits.push(CycleOrbit { representative: gamma, cosets, stabilizer, filling });
    }

    // disk copies
    let mut y = y0.clone();
    let mut copies: Vec<Vec<Copy>> = Vec::new();
    let mut provenance = BTreeMap::new();
    let mut fmap_v = BTreeMap::new();
    let mut fmap_e = BTreeMap::new();
    let mut fmap_f = BTreeMap::new();
    for v in y0.vertices() {
        fmap_v.insert(v.clone(), v.clone());
    }
    for e in y0.edge_ids() {
        fmap_e.insert(e.clone(), (e.clone(), Sign::Plus));
    }
    let mut next_copy = 0;
    for (oi, orbit) in orbits.iter().enumerate() {
        let d = &orbit.filling;
        let disk = d.diagram.complex();
        let outer = d.diagram.outer().expect("disk");
        let boundary_vertices: BTreeSet<Id> = outer.vertices(disk).unwrap().into_iter().collect();
        let boundary_edges: BTreeSet<Id> = outer.letters.iter().map(|l| l.edge.clone()).collect();
        let mut row = Vec::new();
        for (ci, &h) in orbit.cosets.iter().enumerate() {
            let copy = Copy {
                index: next_copy,
                delta: compose(&d.map, a.element(h).unwrap())?,
                boundary_vertices: boundary_vertices.clone(),
                boundary_edges: boundary_edges.clone(),
            };
            next_copy += 1;
            let err = |e: crate::complex::ComplexError| ConstructError::Invalid(e.to_string());
            for v in disk.vertices().filter(|v| !boundary_vertices.contains(*v)) {
                let name = copy.vertex(v);
                y.add_vertex(name.clone()).map_err(err)?;
                fmap_v.insert(name.clone(), copy.delta.vertex(v).unwrap().clone());
                provenance.insert(Cell::Vertex(name), (oi, ci, Cell::Vertex(v.clone())));
            }
            for (e, ends) in disk.edges().filter(|(e, _)| !boundary_edges.contains(*e)) {
                let name = copy_name(copy.index, e);
                y.add_edge(name.clone(), copy.vertex(&ends.tail), copy.vertex(&ends.head)).map_err(err)?;
                fmap_e.insert(name.clone(), copy.delta.edge(e).unwrap().clone());
                provenance.insert(Cell::Edge(name), (oi, ci, Cell::Edge(e.clone())));
            }
            for (f, word) in disk.faces() {
                let name = copy_name(copy.index, f);
                let letters = word.letters().iter().map(|l| copy.letter(l)).collect();
                y.add_face(name.clone(), AttachingWord::new(letters)).map_err(err)?;
                fmap_f.insert(name.clone(), copy.delta.face(f).unwrap().clone());
                provenance.insert(Cell::Face(name), (oi, ci, Cell::Face(f.clone())));
            }
            row.push(copy);
        }
        copies.push(row);
    }
    let y = Arc::new(y);
    if !y.is_valid() {
        return Err(ConstructError::Invalid(format!("assembled complex is invalid: {}", y.validate())));
    }
    let map = CellularMap::new(y.clone(), x.clone(), fmap_v, fmap_e, fmap_f)?;

    // induced action
    let mut autos: Vec<BTreeMap<usize, CellularMap>> = Vec::new();
    for orbit in &orbits {
        let mut m = BTreeMap::new();
        for &k in &orbit.stabilizer {
            m.insert(k, disk_automorphism(&orbit.filling, a.element(k).unwrap())?);
        }
        autos.push(m);
    }
    let table = a.table();
    let mut elements = Vec::new();
    for g in 0..a.order() {
        let ag = a.element(g).unwrap();
        let mut vs: BTreeMap<Id, Id> = y0.vertices().map(|v| (v.clone(), ag.vertex(v).unwrap().clone())).collect();
        let mut es: BTreeMap<Id, (Id, Sign)> = y0.edge_ids().map(|e| (e.clone(), ag.edge(e).unwrap().clone())).collect();
        let mut fs: BTreeMap<Id, (Id, Witness)> = BTreeMap::new();
        for (oi, orbit) in orbits.iter().enumerate() {
            let disk = orbit.filling.diagram.complex();
            for (ci, &h) in orbit.cosets.iter().enumerate() {
                let gh = table[g][h];
                let target = act(gh, &orbit.representative);
                let cj = orbit
                    .cosets
                    .iter()
                    .position(|&c| act(c, &orbit.representative) == target)
                    .expect("orbit closed under the group");
                let k = table[a.inverse_of(orbit.cosets[cj])][gh];
                let auto = autos[oi].get(&k).ok_or_else(|| ConstructError::Invalid(format!("element #{k} does not stabilize")))?;
                let (src, dst) = (&copies[oi][ci], &copies[oi][cj]);
                for v in disk.vertices().filter(|v| !src.boundary_vertices.contains(*v)) {
                    vs.insert(src.vertex(v), dst.vertex(auto.vertex(v).unwrap()));
                }
                for e in disk.edge_ids().filter(|e| !src.boundary_edges.contains(*e)) {
                    let (img, s) = auto.edge(e).unwrap();
                    let (name, s2) = dst.edge(img);
                    es.insert(src.edge(e).0, (name, s.times(s2)));
                }
                for f in disk.face_ids() {
                    let (img, w) = auto.face(f).unwrap();
                    fs.insert(copy_name(src.index, f), (copy_name(dst.index, img), *w));
                }
            }
        }
        elements.push(CellularMap::new(y.clone(), y.clone(), vs, es, fs)?);
    }
    let action = GroupAction::from_parts(y.clone(), elements, table.to_vec(), a.generators().to_vec())?;
    let inv = action.has_inversions();
    if !inv.is_empty() {
        return Err(ConstructError::InducedInversion(inv.to_string()));
    }
    Ok(EquivariantFilling { y0: Arc::new(y0.clone()), y, action, map, orbits, provenance })
}

impl EquivariantFilling {
    /// Re-checks every postcondition against the action on `X`.
    pub fn verify(&self, a: &GroupAction, bounds: &FillBounds) -> Result<(), String> {
        if !self.y.is_valid() {
            return Err(format!("Y is invalid: {}", self.y.validate()));
        }
        self.map.check().map_err(|e| e.to_string())?;
        if !self.y0.is_subcomplex_of(&self.y) {
            return Err("Y0 is not a subcomplex of Y".into());
        }
        for c in self.y0.cells() {
            if self.map.cell(&c).as_ref() != Some(&c) {
                return Err(format!("map does not restrict to the inclusion at {c}"));
            }
        }
        self.action.validate().map_err(|e| e.to_string())?;
        if self.action.order() != a.order() {
            return Err("group orders differ".into());
        }
        for h in 0..a.order() {
            let left = compose(&self.action.elements()[h], &self.map).map_err(|e| e.to_string())?;
            let right = compose(&self.map, a.element(h).unwrap()).map_err(|e| e.to_string())?;
            if !left.same_cells(&right) {
                return Err(format!("map is not equivariant for element #{h}"));
            }
        }
        let expected: usize = self.orbits.iter().map(|o| o.cosets.len() * o.filling.area()).sum();
        if self.y.num_faces() != expected {
            return Err(format!("Y has {} faces, expected {expected}", self.y.num_faces()));
        }
        if !certify_simply_connected(&self.y, bounds).is_certified() {
            return Err("Y is not certified simply connected".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::parse_action;

    fn cx(s: &str) -> Arc<TwoComplex> {
        Arc::new(TwoComplex::from_text(s).unwrap())
    }

    fn triangle() -> Arc<TwoComplex> {
        cx("vertex x\nvertex y\nvertex z\nedge e1 x y\nedge e2 y z\nedge e3 z x\nface f e1+ e2+ e3+\n")
    }

    const ROTATION: &str = "generator r\nvmap x y\nvmap y z\nvmap z x\nemap e1 e2+\nemap e2 e3+\nemap e3 e1+\nfmap f f\n";

    #[test]
    fn tree_gives_itself() {
        let a = GroupAction::trivial(triangle());
        let y0 = cx("vertex x\nvertex y\nedge e1 x y\n");
        let ef = equivariant_filling(&a, &y0, &FillBounds::default()).unwrap();
        assert_eq!(*ef.y, *y0);
        ef.verify(&a, &FillBounds::default()).unwrap();
    }

    #[test]
    fn rotated_triangle_boundary() {
        let a = parse_action(triangle(), ROTATION, 24).unwrap();
        let (b, _) = a.remove_inversions().unwrap();
        let y0 = b.complex().one_skeleton();
        let boundary: BTreeSet<Cell> = y0
            .cells()
            .into_iter()
            .filter(|c| match c {
                Cell::Vertex(v) => v.as_str().starts_with("v.") || v.as_str().starts_with("m."),
                Cell::Edge(e) => e.as_str().starts_with('h'),
                Cell::Face(_) => false,
            })
            .collect();
        let y0 = y0.subcomplex(&boundary).unwrap();
        let ef = equivariant_filling(&b, &y0, &FillBounds::default()).unwrap();
        assert_eq!(ef.orbits.len(), 1);
        assert_eq!(ef.y.num_faces(), 6);
        assert_eq!(ef.y.euler_characteristic(), 1);
        ef.verify(&b, &FillBounds::default()).unwrap();
    }

    #[test]
    fn orbit_graphs() {
        let a = GroupAction::trivial(triangle());
        let p = Path::new("x", vec![DirectedEdge::plus("e1")]);
        assert_eq!(orbit_graph(&a, &p).unwrap().num_edges(), 1);
        let empty = Path::new("x", vec![]);
        assert_eq!(orbit_graph(&a, &empty).unwrap().num_vertices(), 1);
        let long = Path::new("x", vec![DirectedEdge::minus("e3"), DirectedEdge::minus("e2")]);
        assert!(matches!(orbit_graph(&a, &long), Err(ConstructError::NotMinimal(1))));
    }
}
