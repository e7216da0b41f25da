use std::collections::BTreeMap;
use std::sync::Arc;

use super::map::find_witness;
use super::{AttachingWord, Cell, CellularMap, DirectedEdge, Id, MapError, Sign, TwoComplex};

/// For every cell of a subdivision, the original cell whose interior contains it.
pub type Provenance = BTreeMap<Cell, Cell>;

/// A barycentric subdivision together with its provenance.
///
/// Naming: original vertex `x` becomes `v.x`; edge `e` gets midpoint `m.e`
/// and halves `h0.e` (tail to midpoint) and `h1.e` (midpoint to head); face
/// `f` gets barycenter `b.f`, corner spokes `c{j}.f`, side spokes `s{j}.f`
/// and triangles `t{i}.f`, indexed by position in the attaching word.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub original: Arc<TwoComplex>,
    pub complex: Arc<TwoComplex>,
    pub provenance: Provenance,
}

pub fn vertex_name(v: &Id) -> Id {
    Id::new(format!("v.{v}"))
}

pub fn midpoint_name(e: &Id) -> Id {
    Id::new(format!("m.{e}"))
}

pub fn barycenter_name(f: &Id) -> Id {
    Id::new(format!("b.{f}"))
}

fn half(e: &Id, i: u8) -> Id {
    Id::new(format!("h{i}.{e}"))
}

fn corner_spoke(f: &Id, j: usize) -> Id {
    Id::new(format!("c{j}.{f}"))
}

fn side_spoke(f: &Id, j: usize) -> Id {
    Id::new(format!("s{j}.{f}"))
}

fn triangle(f: &Id, i: usize) -> Id {
    Id::new(format!("t{i}.{f}"))
}

/// The halves of a letter in walking order.
fn halves(l: &DirectedEdge) -> [DirectedEdge; 2] {
    match l.sign {
        Sign::Plus => [DirectedEdge::plus(half(&l.edge, 0)), DirectedEdge::plus(half(&l.edge, 1))],
        Sign::Minus => [DirectedEdge::minus(half(&l.edge, 1)), DirectedEdge::minus(half(&l.edge, 0))],
    }
}

/// Splits every edge at a midpoint and cones every face of length `n` into
/// `2n` triangles around a barycenter.
pub fn barycentric_subdivision(x: &TwoComplex) -> Subdivision {
    let mut out = TwoComplex::new();
    let mut provenance = Provenance::new();
    for v in x.vertices() {
        out.insert_vertex_unchecked(vertex_name(v));
        provenance.insert(Cell::Vertex(vertex_name(v)), Cell::Vertex(v.clone()));
    }
    for (e, ends) in x.edges() {
        let m = midpoint_name(e);
        out.insert_vertex_unchecked(m.clone());
        out.insert_edge_unchecked(half(e, 0), vertex_name(&ends.tail), m.clone());
        out.insert_edge_unchecked(half(e, 1), m.clone(), vertex_name(&ends.head));
        let origin = Cell::Edge(e.clone());
        provenance.insert(Cell::Vertex(m), origin.clone());
        provenance.insert(Cell::Edge(half(e, 0)), origin.clone());
        provenance.insert(Cell::Edge(half(e, 1)), origin);
    }
    for (f, word) in x.faces() {
        let b = barycenter_name(f);
        let origin = Cell::Face(f.clone());
        out.insert_vertex_unchecked(b.clone());
        provenance.insert(Cell::Vertex(b.clone()), origin.clone());
        let letters = word.letters();
        let n = letters.len();
        for (j, l) in letters.iter().enumerate() {
            let corner = x.tail(l).expect("valid complex");
            out.insert_edge_unchecked(corner_spoke(f, j), b.clone(), vertex_name(corner));
            out.insert_edge_unchecked(side_spoke(f, j), b.clone(), midpoint_name(&l.edge));
            provenance.insert(Cell::Edge(corner_spoke(f, j)), origin.clone());
            provenance.insert(Cell::Edge(side_spoke(f, j)), origin.clone());
        }
        for (j, l) in letters.iter().enumerate() {
            let [first, second] = halves(l);
            let next = (j + 1) % n;
            let t0 = vec![DirectedEdge::plus(corner_spoke(f, j)), first, DirectedEdge::minus(side_spoke(f, j))];
            let t1 = vec![DirectedEdge::plus(side_spoke(f, j)), second, DirectedEdge::minus(corner_spoke(f, next))];
            out.insert_face_unchecked(triangle(f, 2 * j), AttachingWord::new(t0));
            out.insert_face_unchecked(triangle(f, 2 * j + 1), AttachingWord::new(t1));
            provenance.insert(Cell::Face(triangle(f, 2 * j)), origin.clone());
            provenance.insert(Cell::Face(triangle(f, 2 * j + 1)), origin.clone());
        }
    }
    Subdivision { original: Arc::new(x.clone()), complex: Arc::new(out), provenance }
}

impl Subdivision {
    pub fn new(x: &TwoComplex) -> Subdivision {
        barycentric_subdivision(x)
    }

    pub fn origin(&self, cell: &Cell) -> Option<&Cell> {
        self.provenance.get(cell)
    }

    /// The map of subdivisions induced by `phi`, where `target` subdivides
    /// the target of `phi`.
    pub fn lift(&self, target: &Subdivision, phi: &CellularMap) -> Result<CellularMap, MapError> {
        let x = &*self.original;
        let mut vertices = BTreeMap::new();
        let mut edges = BTreeMap::new();
        let mut faces = BTreeMap::new();
        let unmapped = |c: String| MapError::Unmapped(c);
        for v in x.vertices() {
            let w = phi.vertex(v).ok_or_else(|| unmapped(format!("vertex {v}")))?;
            vertices.insert(vertex_name(v), vertex_name(w));
        }
        for e in x.edge_ids() {
            let (img, s) = phi.edge(e).ok_or_else(|| unmapped(format!("edge {e}")))?;
            vertices.insert(midpoint_name(e), midpoint_name(img));
            let (h0, h1) = match s {
                Sign::Plus => ((half(img, 0), Sign::Plus), (half(img, 1), Sign::Plus)),
                Sign::Minus => ((half(img, 1), Sign::Minus), (half(img, 0), Sign::Minus)),
            };
            edges.insert(half(e, 0), h0);
            edges.insert(half(e, 1), h1);
        }
        for (f, word) in x.faces() {
            let (img, w) = phi.face(f).ok_or_else(|| unmapped(format!("face {f}")))?;
            let n = word.len();
            vertices.insert(barycenter_name(f), barycenter_name(img));
            for j in 0..n {
                edges.insert(corner_spoke(f, j), (corner_spoke(img, w.corner(j, n)), Sign::Plus));
                edges.insert(side_spoke(f, j), (side_spoke(img, w.position(j, n)), Sign::Plus));
            }
        }
        let src = &*self.complex;
        let tgt = &*target.complex;
        for (t, tri) in src.faces() {
            let Some(Cell::Face(f)) = self.provenance.get(&Cell::Face(t.clone())) else {
                return Err(MapError::Invalid(format!("face {t} has no provenance")));
            };
            let img_face = &phi.face(f).ok_or_else(|| unmapped(format!("face {f}")))?.0;
            let image: Vec<DirectedEdge> = tri
                .letters()
                .iter()
                .map(|l| {
                    let (e, s) = &edges[&l.edge];
                    DirectedEdge::new(e.clone(), l.sign.times(*s))
                })
                .collect();
            let m = phi.target().face(img_face).map_or(0, |w| w.len());
            let found = (0..2 * m).map(|i| triangle(img_face, i)).find_map(|cand| {
                let word = tgt.face(&cand)?;
                find_witness(&image, word.letters()).map(|w| (cand, w))
            });
            let (cand, w) = found.ok_or_else(|| MapError::NoWitness(t.clone()))?;
            faces.insert(t.clone(), (cand, w));
        }
        CellularMap::new(self.complex.clone(), target.complex.clone(), vertices, edges, faces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_disk() -> TwoComplex {
        TwoComplex::from_text("vertex x\nvertex y\nvertex z\nedge e1 x y\nedge e2 y z\nedge e3 z x\nface f e1+ e2+ e3+\n")
            .unwrap()
    }

    #[test]
    fn triangle_counts() {
        let sd = barycentric_subdivision(&triangle_disk());
        let y = &sd.complex;
        assert!(y.is_valid(), "{}", y.validate());
        assert_eq!((y.num_vertices(), y.num_edges(), y.num_faces()), (7, 12, 6));
        assert_eq!(y.euler_characteristic(), 1);
        assert_eq!(sd.provenance.len(), 25);
    }

    #[test]
    fn torus_keeps_euler() {
        let t = TwoComplex::from_text("vertex v\nedge a v v\nedge b v v\nface f a+ b+ a- b-\n").unwrap();
        let sd = barycentric_subdivision(&t);
        assert!(sd.complex.is_valid(), "{}", sd.complex.validate());
        assert_eq!(sd.complex.euler_characteristic(), 0);
        let again = barycentric_subdivision(&sd.complex);
        assert_eq!(again.complex.euler_characteristic(), 0);
    }

    #[test]
    fn lifted_rotation_and_flip() {
        let x = Arc::new(triangle_disk());
        let vs = ["x", "y", "z"];
        let es = ["e1", "e2", "e3"];
        let sd = barycentric_subdivision(&x);
        // rotation
        let vertices = (0..3).map(|i| (Id::new(vs[i]), Id::new(vs[(i + 1) % 3]))).collect();
        let edges = (0..3).map(|i| (Id::new(es[i]), (Id::new(es[(i + 1) % 3]), Sign::Plus))).collect();
        let faces = BTreeMap::from([(Id::new("f"), Id::new("f"))]);
        let rot = CellularMap::infer(x.clone(), x.clone(), vertices, edges, faces).unwrap();
        let lifted = sd.lift(&sd, &rot).unwrap();
        assert!(lifted.is_bijective());
        assert_eq!(lifted.vertex(&Id::new("b.f")), Some(&Id::new("b.f")));
        // reflection fixing x, swapping y and z
        let vertices = [("x", "x"), ("y", "z"), ("z", "y")].iter().map(|(a, b)| (Id::new(a), Id::new(b))).collect();
        let edges = [("e1", "e3", Sign::Minus), ("e2", "e2", Sign::Minus), ("e3", "e1", Sign::Minus)]
            .iter()
            .map(|(a, b, s)| (Id::new(a), (Id::new(b), *s)))
            .collect();
        let faces = BTreeMap::from([(Id::new("f"), Id::new("f"))]);
        let refl = CellularMap::infer(x.clone(), x, vertices, edges, faces).unwrap();
        assert!(refl.face(&Id::new("f")).unwrap().1.reflected);
        let lifted = sd.lift(&sd, &refl).unwrap();
        assert!(lifted.is_bijective());
        assert_eq!(lifted.vertex(&Id::new("m.e2")), Some(&Id::new("m.e2")));
    }
}
