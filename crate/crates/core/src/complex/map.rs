use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::text::MapEntries;
use super::{DirectedEdge, Id, Sign, TwoComplex};

/// How a source face word sits on its target face word.
///
/// Source position `j` lands on target position `rotation + j` (or
/// `rotation - j` when reflected, in which case the letters are read
/// inverted), all modulo the word length.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Witness {
    pub rotation: usize,
    pub reflected: bool,
}

impl Witness {
    pub const IDENTITY: Witness = Witness { rotation: 0, reflected: false };

    pub fn new(rotation: usize, reflected: bool) -> Witness {
        Witness { rotation, reflected }
    }

    pub fn position(self, j: usize, n: usize) -> usize {
        if self.reflected {
            (self.rotation % n + n - j % n) % n
        } else {
            (self.rotation + j) % n
        }
    }

    /// Where the corner before source letter `j` lands.
    pub fn corner(self, j: usize, n: usize) -> usize {
        if self.reflected {
            (self.rotation % n + n + 1 - j % n) % n
        } else {
            (self.rotation + j) % n
        }
    }

    /// `self` followed by `next`.
    pub fn then(self, next: Witness, n: usize) -> Witness {
        let (k1, k2) = (self.rotation % n, next.rotation % n);
        let rotation = if next.reflected { (k2 + n - k1) % n } else { (k2 + k1) % n };
        Witness { rotation, reflected: self.reflected != next.reflected }
    }

    pub fn inverse(self, n: usize) -> Witness {
        if self.reflected {
            Witness { rotation: self.rotation % n, reflected: true }
        } else {
            Witness { rotation: (n - self.rotation % n) % n, reflected: false }
        }
    }

    pub fn is_identity(self, n: usize) -> bool {
        !self.reflected && self.rotation.is_multiple_of(n)
    }

    pub(crate) fn normalized(self, n: usize) -> Witness {
        Witness { rotation: self.rotation % n, reflected: self.reflected }
    }
}

/// One occurrence of an edge in a face word.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Side {
    pub face: Id,
    pub position: usize,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.face, self.position)
    }
}

/// Two sides at the same source edge that land on the same target side.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fold {
    pub edge: Id,
    pub first: Side,
    pub second: Side,
    pub image: Side,
}

impl fmt::Display for Fold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sides {} and {} at edge {} both map to {}", self.first, self.second, self.edge, self.image)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("{0} has no image")]
    Unmapped(String),
    #[error("image of {0} is not a cell of the target")]
    UnknownImage(String),
    #[error("edge {0} does not respect endpoints")]
    Endpoints(Id),
    #[error("face {0}: word lengths differ")]
    FaceLength(Id),
    #[error("face {0}: witness does not carry the word onto the target word")]
    FaceWitness(Id),
    #[error("face {0}: no rotation or reflection carries the word onto the target word")]
    NoWitness(Id),
    #[error("target of the first map is not the source of the second")]
    SourceTargetMismatch,
    #[error("map is not invertible")]
    NotInvertible,
    #[error("{0}")]
    Invalid(String),
}

/// A combinatorial map carrying explicit edge signs and face witnesses.
#[derive(Clone, Debug)]
pub struct CellularMap {
    source: Arc<TwoComplex>,
    target: Arc<TwoComplex>,
    vertices: BTreeMap<Id, Id>,
    edges: BTreeMap<Id, (Id, Sign)>,
    faces: BTreeMap<Id, (Id, Witness)>,
}

impl PartialEq for CellularMap {
    fn eq(&self, other: &CellularMap) -> bool {
        self.same_cells(other)
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl CellularMap {
    pub fn new(
        source: Arc<TwoComplex>,
        target: Arc<TwoComplex>,
        vertices: BTreeMap<Id, Id>,
        edges: BTreeMap<Id, (Id, Sign)>,
        faces: BTreeMap<Id, (Id, Witness)>,
    ) -> Result<CellularMap, MapError> {
        let faces = faces
            .into_iter()
            .map(|(f, (g, w))| {
                let n = source.face(&f).map_or(1, |word| word.len().max(1));
                (f, (g, w.normalized(n)))
            })
            .collect();
        let map = CellularMap { source, target, vertices, edges, faces };
        map.check()?;
        Ok(map)
    }

    /// Builds a map from vertex and edge assignments and face targets,
    /// choosing for each face the least witness that fits (unreflected first).
    pub fn infer(
        source: Arc<TwoComplex>,
        target: Arc<TwoComplex>,
        vertices: BTreeMap<Id, Id>,
        edges: BTreeMap<Id, (Id, Sign)>,
        face_targets: BTreeMap<Id, Id>,
    ) -> Result<CellularMap, MapError> {
        let mut faces = BTreeMap::new();
        for (f, g) in face_targets {
            let word = source.face(&f).ok_or_else(|| MapError::Unmapped(format!("face {f}")))?;
            let target_word = target.face(&g).ok_or_else(|| MapError::UnknownImage(format!("face {f}")))?;
            let mut image = Vec::with_capacity(word.len());
            for l in word.letters() {
                let (e, s) = edges.get(&l.edge).ok_or_else(|| MapError::Unmapped(format!("edge {}", l.edge)))?;
                image.push(DirectedEdge::new(e.clone(), l.sign.times(*s)));
            }
            let w = find_witness(&image, target_word.letters()).ok_or_else(|| MapError::NoWitness(f.clone()))?;
            faces.insert(f, (g, w));
        }
        CellularMap::new(source, target, vertices, edges, faces)
    }

    /// Reads vertex/edge/face entries; faces without an explicit witness get
    /// the least fitting one.
    pub fn from_entries(
        source: Arc<TwoComplex>,
        target: Arc<TwoComplex>,
        entries: &MapEntries,
    ) -> Result<CellularMap, MapError> {
        let mut targets = BTreeMap::new();
        let mut explicit = BTreeMap::new();
        for (f, (g, w)) in &entries.faces {
            match w {
                Some(w) => {
                    explicit.insert(f.clone(), (g.clone(), *w));
                }
                None => {
                    targets.insert(f.clone(), g.clone());
                }
            }
        }
        let inferred = CellularMap::infer_unchecked(&source, &target, &entries.edges, targets)?;
        let mut faces = explicit;
        faces.extend(inferred);
        CellularMap::new(source, target, entries.vertices.clone(), entries.edges.clone(), faces)
    }

    fn infer_unchecked(
        source: &TwoComplex,
        target: &TwoComplex,
        edges: &BTreeMap<Id, (Id, Sign)>,
        face_targets: BTreeMap<Id, Id>,
    ) -> Result<BTreeMap<Id, (Id, Witness)>, MapError> {
        let mut faces = BTreeMap::new();
        for (f, g) in face_targets {
            let word = source.face(&f).ok_or_else(|| MapError::Unmapped(format!("face {f}")))?;
            let target_word = target.face(&g).ok_or_else(|| MapError::UnknownImage(format!("face {f}")))?;
            let image: Option<Vec<DirectedEdge>> = word
                .letters()
                .iter()
                .map(|l| edges.get(&l.edge).map(|(e, s)| DirectedEdge::new(e.clone(), l.sign.times(*s))))
                .collect();
            let image = image.ok_or_else(|| MapError::Unmapped(format!("an edge of face {f}")))?;
            let w = find_witness(&image, target_word.letters()).ok_or_else(|| MapError::NoWitness(f.clone()))?;
            faces.insert(f, (g, w));
        }
        Ok(faces)
    }

    pub fn identity(x: Arc<TwoComplex>) -> CellularMap {
        let vertices = x.vertices().map(|v| (v.clone(), v.clone())).collect();
        let edges = x.edge_ids().map(|e| (e.clone(), (e.clone(), Sign::Plus))).collect();
        let faces = x.face_ids().map(|f| (f.clone(), (f.clone(), Witness::IDENTITY))).collect();
        CellularMap { source: x.clone(), target: x, vertices, edges, faces }
    }

    /// Inclusion of a subcomplex.
    pub fn inclusion(sub: Arc<TwoComplex>, ambient: Arc<TwoComplex>) -> Result<CellularMap, MapError> {
        let vertices = sub.vertices().map(|v| (v.clone(), v.clone())).collect();
        let edges = sub.edge_ids().map(|e| (e.clone(), (e.clone(), Sign::Plus))).collect();
        let faces = sub.face_ids().map(|f| (f.clone(), (f.clone(), Witness::IDENTITY))).collect();
        CellularMap::new(sub, ambient, vertices, edges, faces)
    }

    pub fn source(&self) -> &Arc<TwoComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TwoComplex> {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<Id, Id> {
        &self.vertices
    }

    pub fn edge_map(&self) -> &BTreeMap<Id, (Id, Sign)> {
        &self.edges
    }

    pub fn face_map(&self) -> &BTreeMap<Id, (Id, Witness)> {
        &self.faces
    }

    pub fn vertex(&self, v: &Id) -> Option<&Id> {
        self.vertices.get(v)
    }

    pub fn edge(&self, e: &Id) -> Option<&(Id, Sign)> {
        self.edges.get(e)
    }

    pub fn face(&self, f: &Id) -> Option<&(Id, Witness)> {
        self.faces.get(f)
    }

    pub fn letter(&self, l: &DirectedEdge) -> Option<DirectedEdge> {
        let (e, s) = self.edges.get(&l.edge)?;
        Some(DirectedEdge::new(e.clone(), l.sign.times(*s)))
    }

    pub fn letters(&self, letters: &[DirectedEdge]) -> Option<Vec<DirectedEdge>> {
        letters.iter().map(|l| self.letter(l)).collect()
    }

    pub fn path(&self, p: &super::Path) -> Option<super::Path> {
        Some(super::Path::new(self.vertices.get(&p.start)?.clone(), self.letters(&p.letters)?))
    }

    pub fn cycle(&self, c: &super::Cycle) -> Option<super::Cycle> {
        Some(super::Cycle { path: self.path(&c.path)? })
    }

    /// Image of a cell, ignoring orientation data.
    pub fn cell(&self, c: &super::Cell) -> Option<super::Cell> {
        use super::Cell;
        Some(match c {
            Cell::Vertex(v) => Cell::Vertex(self.vertices.get(v)?.clone()),
            Cell::Edge(e) => Cell::Edge(self.edges.get(e)?.0.clone()),
            Cell::Face(f) => Cell::Face(self.faces.get(f)?.0.clone()),
        })
    }

    pub fn entries(&self) -> MapEntries {
        MapEntries {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            faces: self.faces.iter().map(|(f, (g, w))| (f.clone(), (g.clone(), Some(*w)))).collect(),
        }
    }

    /// Same cell assignments and witnesses, ignoring the complexes.
    pub fn same_cells(&self, other: &CellularMap) -> bool {
        self.vertices == other.vertices && self.edges == other.edges && self.faces == other.faces
    }

    /// Checks every map invariant against the stored source and target.
    pub fn check(&self) -> Result<(), MapError> {
        let (src, tgt) = (&*self.source, &*self.target);
        for v in src.vertices() {
            let w = self.vertices.get(v).ok_or_else(|| MapError::Unmapped(format!("vertex {v}")))?;
            if !tgt.has_vertex(w) {
                return Err(MapError::UnknownImage(format!("vertex {v}")));
            }
        }
        for (e, ends) in src.edges() {
            let (img, sign) = self.edges.get(e).ok_or_else(|| MapError::Unmapped(format!("edge {e}")))?;
            let img_ends = tgt.edge(img).ok_or_else(|| MapError::UnknownImage(format!("edge {e}")))?;
            let (t, h) = match sign {
                Sign::Plus => (&img_ends.tail, &img_ends.head),
                Sign::Minus => (&img_ends.head, &img_ends.tail),
            };
            if self.vertices.get(&ends.tail) != Some(t) || self.vertices.get(&ends.head) != Some(h) {
                return Err(MapError::Endpoints(e.clone()));
            }
        }
        for (f, word) in src.faces() {
            let (img, w) = self.faces.get(f).ok_or_else(|| MapError::Unmapped(format!("face {f}")))?;
            let target_word = tgt.face(img).ok_or_else(|| MapError::UnknownImage(format!("face {f}")))?;
            let n = word.len();
            if target_word.len() != n {
                return Err(MapError::FaceLength(f.clone()));
            }
            for (j, l) in word.letters().iter().enumerate() {
                let image = self.letter(l).ok_or_else(|| MapError::Unmapped(format!("edge {}", l.edge)))?;
                let expected = if w.reflected { image.inverse() } else { image };
                if target_word.letters()[w.position(j, n)] != expected {
                    return Err(MapError::FaceWitness(f.clone()));
                }
            }
        }
        let extra = self.vertices.keys().any(|v| !src.has_vertex(v))
            || self.edges.keys().any(|e| src.edge(e).is_none())
            || self.faces.keys().any(|f| src.face(f).is_none());
        if extra {
            return Err(MapError::Invalid("map mentions cells outside its source".into()));
        }
        Ok(())
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &CellularMap) -> Result<CellularMap, MapError> {
        compose(self, other)
    }

    pub fn is_bijective(&self) -> bool {
        let inj_v = self.vertices.values().collect::<BTreeSet<_>>().len() == self.vertices.len();
        let inj_e = self.edges.values().map(|(e, _)| e).collect::<BTreeSet<_>>().len() == self.edges.len();
        let inj_f = self.faces.values().map(|(f, _)| f).collect::<BTreeSet<_>>().len() == self.faces.len();
        inj_v
            && inj_e
            && inj_f
            && self.vertices.len() == self.target.num_vertices()
            && self.edges.len() == self.target.num_edges()
            && self.faces.len() == self.target.num_faces()
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().all(|(a, b)| a == b)
            && self.edges.iter().all(|(a, (b, s))| a == b && *s == Sign::Plus)
            && self.faces.iter().all(|(a, (b, w))| {
                let n = self.source.face(a).map_or(1, |w| w.len().max(1));
                a == b && w.is_identity(n)
            })
    }

    pub fn inverse(&self) -> Result<CellularMap, MapError> {
        if !self.is_bijective() {
            return Err(MapError::NotInvertible);
        }
        let vertices = self.vertices.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        let edges = self.edges.iter().map(|(a, (b, s))| (b.clone(), (a.clone(), *s))).collect();
        let faces = self
            .faces
            .iter()
            .map(|(a, (b, w))| {
                let n = self.source.face(a).map_or(1, |w| w.len().max(1));
                (b.clone(), (a.clone(), w.inverse(n)))
            })
            .collect();
        CellularMap::new(self.target.clone(), self.source.clone(), vertices, edges, faces)
    }

    /// The first fold, in sorted face/position order, or `None` for a
    /// near-immersion.
    pub fn find_fold(&self) -> Option<Fold> {
        let mut seen: BTreeMap<(&Id, Side), Side> = BTreeMap::new();
        for (f, word) in self.source.faces() {
            let (img, w) = &self.faces[f];
            let n = word.len();
            for (j, l) in word.letters().iter().enumerate() {
                let image = Side { face: img.clone(), position: w.position(j, n) };
                let here = Side { face: f.clone(), position: j };
                if let Some(first) = seen.get(&(&l.edge, image.clone())) {
                    return Some(Fold { edge: l.edge.clone(), first: first.clone(), second: here, image });
                }
                seen.insert((&l.edge, image), here);
            }
        }
        None
    }

    /// Locally injective away from vertices: distinct sides at each edge have
    /// distinct images.
    pub fn is_near_immersion(&self) -> bool {
        self.find_fold().is_none()
    }

    /// Near-immersion plus injectivity on every vertex link (edge ends and
    /// face corners).
    pub fn is_immersion(&self) -> bool {
        self.is_near_immersion() && self.link_collision().is_none()
    }

    /// A vertex whose link is not mapped injectively.
    pub fn link_collision(&self) -> Option<Id> {
        let mut ends: BTreeMap<&Id, BTreeMap<(Id, Sign), DirectedEdge>> = BTreeMap::new();
        for (e, ends_of) in self.source.edges() {
            let (img, s) = &self.edges[e];
            for (vertex, sign) in [(&ends_of.tail, Sign::Plus), (&ends_of.head, Sign::Minus)] {
                let key = (img.clone(), sign.times(*s));
                let slot = ends.entry(vertex).or_default();
                if slot.insert(key, DirectedEdge::new(e.clone(), sign)).is_some() {
                    return Some(vertex.clone());
                }
            }
        }
        let mut corners: BTreeMap<Id, BTreeSet<(Id, usize)>> = BTreeMap::new();
        for (f, word) in self.source.faces() {
            let (img, w) = &self.faces[f];
            let n = word.len();
            for (j, l) in word.letters().iter().enumerate() {
                let vertex = self.source.tail(l)?.clone();
                if !corners.entry(vertex.clone()).or_default().insert((img.clone(), w.corner(j, n))) {
                    return Some(vertex);
                }
            }
        }
        None
    }
}

/// `g ∘ f`: first `f`, then `g`. Signs multiply and face witnesses compose
/// in the dihedral group of each word.
pub fn compose(f: &CellularMap, g: &CellularMap) -> Result<CellularMap, MapError> {
    if !(Arc::ptr_eq(&f.target, &g.source) || f.target == g.source) {
        return Err(MapError::SourceTargetMismatch);
    }
    let mut vertices = BTreeMap::new();
    for (a, b) in &f.vertices {
        let c = g.vertices.get(b).ok_or_else(|| MapError::Unmapped(format!("vertex {b}")))?;
        vertices.insert(a.clone(), c.clone());
    }
    let mut edges = BTreeMap::new();
    for (a, (b, s1)) in &f.edges {
        let (c, s2) = g.edges.get(b).ok_or_else(|| MapError::Unmapped(format!("edge {b}")))?;
        edges.insert(a.clone(), (c.clone(), s1.times(*s2)));
    }
    let mut faces = BTreeMap::new();
    for (a, (b, w1)) in &f.faces {
        let (c, w2) = g.faces.get(b).ok_or_else(|| MapError::Unmapped(format!("face {b}")))?;
        let n = f.source.face(a).map_or(1, |w| w.len().max(1));
        faces.insert(a.clone(), (c.clone(), w1.then(*w2, n)));
    }
    CellularMap::new(f.source.clone(), g.target.clone(), vertices, edges, faces)
}

/// Least witness carrying `image` onto `target` (unreflected rotations first).
pub fn find_witness(image: &[DirectedEdge], target: &[DirectedEdge]) -> Option<Witness> {
    let n = image.len();
    if n != target.len() || n == 0 {
        return None;
    }
    for reflected in [false, true] {
        'rot: for rotation in 0..n {
            let w = Witness { rotation, reflected };
            for (j, l) in image.iter().enumerate() {
                let expected = if reflected { l.inverse() } else { l.clone() };
                if target[w.position(j, n)] != expected {
                    continue 'rot;
                }
            }
            return Some(w);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::text::parse_complex;

    fn triangle() -> Arc<TwoComplex> {
        Arc::new(
            parse_complex("vertex x\nvertex y\nvertex z\nedge e1 x y\nedge e2 y z\nedge e3 z x\nface f e1+ e2+ e3+\n")
                .unwrap(),
        )
    }

    fn rotation(t: &Arc<TwoComplex>, k: usize) -> CellularMap {
        let vs = ["x", "y", "z"];
        let es = ["e1", "e2", "e3"];
        let vertices = (0..3).map(|i| (Id::new(vs[i]), Id::new(vs[(i + k) % 3]))).collect();
        let edges = (0..3).map(|i| (Id::new(es[i]), (Id::new(es[(i + k) % 3]), Sign::Plus))).collect();
        let faces = BTreeMap::from([(Id::new("f"), Id::new("f"))]);
        CellularMap::infer(t.clone(), t.clone(), vertices, edges, faces).unwrap()
    }

    #[test]
    fn witness_algebra() {
        let n = 5;
        let all: Vec<Witness> =
            (0..n).flat_map(|k| [Witness::new(k, false), Witness::new(k, true)]).collect();
        for a in &all {
            assert!(a.then(a.inverse(n), n).is_identity(n));
            for b in &all {
                for c in &all {
                    assert_eq!(a.then(*b, n).then(*c, n), a.then(b.then(*c, n), n));
                }
                for j in 0..n {
                    assert_eq!(a.then(*b, n).position(j, n), b.position(a.position(j, n), n));
                    assert_eq!(a.then(*b, n).corner(j, n), b.corner(a.corner(j, n), n));
                }
            }
        }
    }

    #[test]
    fn rotation_composes() {
        let t = triangle();
        let r1 = rotation(&t, 1);
        let r2 = rotation(&t, 2);
        assert!(compose(&r1, &r1).unwrap().same_cells(&r2));
        let id = CellularMap::identity(t.clone());
        assert!(compose(&id, &r1).unwrap().same_cells(&r1));
        assert!(compose(&r1, &r1.inverse().unwrap()).unwrap().is_identity());
        assert_eq!(r1.face(&Id::new("f")).unwrap().1, Witness::new(1, false));
    }

    #[test]
    fn compose_rejects_mismatch() {
        let t = triangle();
        let other = Arc::new(parse_complex("vertex v\n").unwrap());
        let id_t = CellularMap::identity(t);
        let id_o = CellularMap::identity(other);
        assert_eq!(compose(&id_t, &id_o).unwrap_err(), MapError::SourceTargetMismatch);
    }

    #[test]
    fn witness_mismatch_detected() {
        let t = triangle();
        let mut faces = BTreeMap::new();
        faces.insert(Id::new("f"), (Id::new("f"), Witness::new(1, false)));
        let id = CellularMap::identity(t.clone());
        let r = CellularMap::new(t.clone(), t, id.vertices.clone(), id.edges.clone(), faces);
        assert_eq!(r.unwrap_err(), MapError::FaceWitness(Id::new("f")));
    }

    #[test]
    fn identity_is_immersion() {
        let b = Arc::new(
            parse_complex("vertex p\nvertex q\nedge e1 p q\nedge e2 p q\nface f1 e1+ e2-\nface f2 e1+ e2-\n").unwrap(),
        );
        let id = CellularMap::identity(b);
        assert!(id.is_near_immersion());
        assert!(id.is_immersion());
    }

    #[test]
    fn butterfly_fold() {
        // Two triangles sharing edge s, both mapped onto one triangle.
        let src = Arc::new(
            parse_complex(
                "vertex a\nvertex b\nvertex c\nvertex d\nedge s a b\nedge p b c\nedge q c a\nedge r b d\nedge t d a\n\
                 face f1 s+ p+ q+\nface f2 s+ r+ t+\n",
            )
            .unwrap(),
        );
        let tgt = triangle();
        let vertices = [("a", "x"), ("b", "y"), ("c", "z"), ("d", "z")]
            .iter()
            .map(|(a, b)| (Id::new(a), Id::new(b)))
            .collect();
        let edges = [("s", "e1"), ("p", "e2"), ("q", "e3"), ("r", "e2"), ("t", "e3")]
            .iter()
            .map(|(a, b)| (Id::new(a), (Id::new(b), Sign::Plus)))
            .collect();
        let faces = [("f1", "f"), ("f2", "f")].iter().map(|(a, b)| (Id::new(a), Id::new(b))).collect();
        let m = CellularMap::infer(src, tgt, vertices, edges, faces).unwrap();
        let fold = m.find_fold().unwrap();
        assert_eq!(fold.edge, Id::new("s"));
        assert_eq!(fold.first, Side { face: Id::new("f1"), position: 0 });
        assert_eq!(fold.second, Side { face: Id::new("f2"), position: 0 });
        assert!(!m.is_immersion());
    }

    #[test]
    fn fold_only_in_link() {
        let src = Arc::new(parse_complex("vertex v\nedge a1 v v\nedge a2 v v\n").unwrap());
        let tgt = Arc::new(parse_complex("vertex w\nedge a w w\n").unwrap());
        let vertices = BTreeMap::from([(Id::new("v"), Id::new("w"))]);
        let edges = BTreeMap::from([
            (Id::new("a1"), (Id::new("a"), Sign::Plus)),
            (Id::new("a2"), (Id::new("a"), Sign::Plus)),
        ]);
        let m = CellularMap::new(src, tgt, vertices, edges, BTreeMap::new()).unwrap();
        assert!(m.is_near_immersion());
        assert!(!m.is_immersion());
        assert_eq!(m.link_collision(), Some(Id::new("v")));
    }

    #[test]
    fn endpoints_checked() {
        let t = triangle();
        let mut vertices: BTreeMap<Id, Id> = t.vertices().map(|v| (v.clone(), v.clone())).collect();
        vertices.insert(Id::new("x"), Id::new("y"));
        let edges = t.edge_ids().map(|e| (e.clone(), (e.clone(), Sign::Plus))).collect();
        let err = CellularMap::new(t.clone(), t, vertices, edges, BTreeMap::new()).unwrap_err();
        assert!(matches!(err, MapError::Endpoints(_) | MapError::Unmapped(_)));
    }
}
