//! Finite combinatorial 2-complexes.
//!
//! A [`TwoComplex`] is a set of vertices, a set of oriented edges and a set of
//! faces, each face glued along a closed edge walk (its [`AttachingWord`]).
//! Ids are opaque strings and every iteration order is the sorted id order, so
//! all derived objects are reproducible.

mod index;
mod map;
mod paths;
mod subdivision;
pub mod text;

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use index::{IndexedComplex, Letter};
pub use map::{compose, find_witness, CellularMap, Fold, MapError, Side, Witness};
pub use paths::{embedded_cycles, embedded_paths, Cycle, Path};
pub use subdivision::{barycentric_subdivision, Provenance, Subdivision};

/// An opaque cell identifier. Well-formed ids match `[A-Za-z0-9_.]+`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Id(Arc<str>);

impl Id {
    pub fn new(s: impl AsRef<str>) -> Id {
        Id(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_well_formed(&self) -> bool {
        is_well_formed_id(&self.0)
    }
}

impl serde::Serialize for Id {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> serde::Deserialize<'de> for Id {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Id, D::Error> {
        String::deserialize(d).map(Id::from)
    }
}

pub(crate) fn is_well_formed_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for Id {
    fn from(s: &str) -> Id {
        Id::new(s)
    }
}

impl From<String> for Id {
    fn from(s: String) -> Id {
        Id(Arc::from(s))
    }
}

impl From<&String> for Id {
    fn from(s: &String) -> Id {
        Id::new(s)
    }
}

impl Borrow<str> for Id {
    fn borrow(&self) -> &str {
        &self.0
    }
}

/// Orientation of a traversal of an edge. `Plus` runs tail to head.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// An edge together with a direction of traversal.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedEdge {
    pub edge: Id,
    pub sign: Sign,
}

impl DirectedEdge {
    pub fn new(edge: impl Into<Id>, sign: Sign) -> DirectedEdge {
        DirectedEdge { edge: edge.into(), sign }
    }

    pub fn plus(edge: impl Into<Id>) -> DirectedEdge {
        DirectedEdge::new(edge, Sign::Plus)
    }

    pub fn minus(edge: impl Into<Id>) -> DirectedEdge {
        DirectedEdge::new(edge, Sign::Minus)
    }

    pub fn inverse(&self) -> DirectedEdge {
        DirectedEdge { edge: self.edge.clone(), sign: self.sign.flip() }
    }

    /// Parses `e1+` / `e1-`.
    pub fn parse(token: &str) -> Option<DirectedEdge> {
        let (body, last) = token.split_at(token.len().checked_sub(1)?);
        let sign = match last {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            _ => return None,
        };
        if !is_well_formed_id(body) {
            return None;
        }
        Some(DirectedEdge::new(body, sign))
    }
}

impl fmt::Display for DirectedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.edge, self.sign.symbol())
    }
}

impl fmt::Debug for DirectedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a whitespace separated letter sequence such as `a+ b+ a- b-`.
pub fn parse_letters(s: &str) -> Option<Vec<DirectedEdge>> {
    s.split_whitespace().map(DirectedEdge::parse).collect()
}

pub(crate) fn format_letters(letters: &[DirectedEdge]) -> String {
    letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// The cyclic word along which a face is attached. Position 0 is the
/// distinguished starting letter.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AttachingWord(Vec<DirectedEdge>);

impl AttachingWord {
    pub fn new(letters: Vec<DirectedEdge>) -> AttachingWord {
        AttachingWord(letters)
    }

    pub fn parse(s: &str) -> Option<AttachingWord> {
        parse_letters(s).map(AttachingWord)
    }

    pub fn letters(&self) -> &[DirectedEdge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of occurrences of `edge`, in either orientation.
    pub fn occurrences(&self, edge: &Id) -> usize {
        self.0.iter().filter(|l| &l.edge == edge).count()
    }
}

impl fmt::Display for AttachingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.0))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Endpoints {
    pub tail: Id,
    pub head: Id,
}

/// A cell of a complex, tagged by dimension.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Cell {
    Vertex(Id),
    Edge(Id),
    Face(Id),
}

impl Cell {
    pub fn id(&self) -> &Id {
        match self {
            Cell::Vertex(id) | Cell::Edge(id) | Cell::Face(id) => id,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Cell::Vertex(_) => 0,
            Cell::Edge(_) => 1,
            Cell::Face(_) => 2,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Vertex(id) => write!(f, "vertex {id}"),
            Cell::Edge(id) => write!(f, "edge {id}"),
            Cell::Face(id) => write!(f, "face {id}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("duplicate {0}")]
    DuplicateId(Cell),
    #[error("malformed id {0:?}")]
    MalformedId(String),
    #[error("({edge}, {face}) is not a free pair")]
    NotFree { edge: Id, face: Id },
    #[error("edge {edge} is not a leaf edge at {vertex}")]
    NotLeaf { edge: Id, vertex: Id },
    #[error("complex is invalid: {0}")]
    Invalid(String),
}

/// One violated invariant, naming the offending cell.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub cell: Option<Cell>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.cell {
            Some(cell) => write!(f, "{cell}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, cell: Option<Cell>, message: impl Into<String>) {
        self.violations.push(Violation { cell, message: message.into() });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A finite combinatorial 2-complex.
///
/// Construction through the `add_*` methods only rejects duplicate or
/// malformed ids; the remaining invariants (closed attaching walks, no
/// dangling references, non-emptiness) are checked by [`TwoComplex::validate`].
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct TwoComplex {
    vertices: BTreeSet<Id>,
    edges: BTreeMap<Id, Endpoints>,
    faces: BTreeMap<Id, AttachingWord>,
}

impl TwoComplex {
    pub fn new() -> TwoComplex {
        TwoComplex::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<Id>) -> Result<(), ComplexError> {
        let id = checked_id(id.into())?;
        if !self.vertices.insert(id.clone()) {
            return Err(ComplexError::DuplicateId(Cell::Vertex(id)));
        }
        Ok(())
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<Id>,
        tail: impl Into<Id>,
        head: impl Into<Id>,
    ) -> Result<(), ComplexError> {
        let id = checked_id(id.into())?;
        if self.edges.contains_key(&id) {
            return Err(ComplexError::DuplicateId(Cell::Edge(id)));
        }
        self.edges.insert(id, Endpoints { tail: tail.into(), head: head.into() });
        Ok(())
    }

    pub fn add_face(&mut self, id: impl Into<Id>, word: AttachingWord) -> Result<(), ComplexError> {
        let id = checked_id(id.into())?;
        if self.faces.contains_key(&id) {
            return Err(ComplexError::DuplicateId(Cell::Face(id)));
        }
        self.faces.insert(id, word);
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Id> + '_ {
        self.vertices.iter()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Id, &Endpoints)> + '_ {
        self.edges.iter()
    }

    pub fn faces(&self) -> impl Iterator<Item = (&Id, &AttachingWord)> + '_ {
        self.faces.iter()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &Id> + '_ {
        self.edges.keys()
    }

    pub fn face_ids(&self) -> impl Iterator<Item = &Id> + '_ {
        self.faces.keys()
    }

    pub fn has_vertex<Q: Ord + ?Sized>(&self, id: &Q) -> bool
    where
        Id: Borrow<Q>,
    {
        self.vertices.contains(id)
    }

    pub fn edge<Q: Ord + ?Sized>(&self, id: &Q) -> Option<&Endpoints>
    where
        Id: Borrow<Q>,
    {
        self.edges.get(id)
    }

    pub fn face<Q: Ord + ?Sized>(&self, id: &Q) -> Option<&AttachingWord>
    where
        Id: Borrow<Q>,
    {
        self.faces.get(id)
    }

    pub fn has_cell(&self, cell: &Cell) -> bool {
        match cell {
            Cell::Vertex(id) => self.vertices.contains(id),
            Cell::Edge(id) => self.edges.contains_key(id),
            Cell::Face(id) => self.faces.contains_key(id),
        }
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut out: Vec<Cell> = self.vertices.iter().cloned().map(Cell::Vertex).collect();
        out.extend(self.edges.keys().cloned().map(Cell::Edge));
        out.extend(self.faces.keys().cloned().map(Cell::Face));
        out
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty() && self.faces.is_empty()
    }

    pub fn dimension(&self) -> Option<usize> {
        if !self.faces.is_empty() {
            Some(2)
        } else if !self.edges.is_empty() {
            Some(1)
        } else if !self.vertices.is_empty() {
            Some(0)
        } else {
            None
        }
    }

    pub fn tail(&self, letter: &DirectedEdge) -> Option<&Id> {
        let ends = self.edges.get(&letter.edge)?;
        Some(match letter.sign {
            Sign::Plus => &ends.tail,
            Sign::Minus => &ends.head,
        })
    }

    pub fn head(&self, letter: &DirectedEdge) -> Option<&Id> {
        self.tail(&letter.inverse())
    }

    /// Checks every structural invariant; an empty report means valid.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if self.vertices.is_empty() {
            report.push(None, "complex is empty");
        }
        for v in &self.vertices {
            if !v.is_well_formed() {
                report.push(Some(Cell::Vertex(v.clone())), "malformed id");
            }
        }
        for (e, ends) in &self.edges {
            for end in [&ends.tail, &ends.head] {
                if !self.vertices.contains(end) {
                    report.push(
                        Some(Cell::Edge(e.clone())),
                        format!("dangling reference to vertex {end}"),
                    );
                }
            }
        }
        for (f, word) in &self.faces {
            let cell = Some(Cell::Face(f.clone()));
            if word.is_empty() {
                report.push(cell, "empty attaching word");
                continue;
            }
            let mut dangling = false;
            for letter in word.letters() {
                if !self.edges.contains_key(&letter.edge) {
                    report.push(cell.clone(), format!("dangling reference to edge {}", letter.edge));
                    dangling = true;
                }
            }
            if dangling {
                continue;
            }
            let n = word.len();
            for j in 1..=n {
                let prev = &word.letters()[j - 1];
                let next = &word.letters()[j % n];
                let (Some(h), Some(t)) = (self.head(prev), self.tail(next)) else { continue };
                if h != t {
                    report.push(cell.clone(), format!("word not closed at position {}", j % n));
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// `|V| - |E| + |F|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Occurrence count of every edge over all attaching words, ignoring orientation.
    pub fn edge_occurrences(&self) -> BTreeMap<&Id, usize> {
        let mut counts: BTreeMap<&Id, usize> = self.edges.keys().map(|e| (e, 0)).collect();
        for word in self.faces.values() {
            for letter in word.letters() {
                if let Some(c) = counts.get_mut(&letter.edge) {
                    *c += 1;
                }
            }
        }
        counts
    }

    /// All `(edge, face)` pairs where the edge occurs exactly once in the
    /// face's word and in no other word.
    pub fn free_edges(&self) -> Vec<(Id, Id)> {
        let counts = self.edge_occurrences();
        let mut out = Vec::new();
        for (f, word) in &self.faces {
            for letter in word.letters() {
                if counts.get(&letter.edge) == Some(&1) {
                    out.push((letter.edge.clone(), f.clone()));
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_free(&self, edge: &Id, face: &Id) -> bool {
        let Some(word) = self.faces.get(face) else { return false };
        if word.occurrences(edge) != 1 {
            return false;
        }
        self.faces.iter().all(|(g, w)| g == face || w.occurrences(edge) == 0)
    }

    /// Removes the open edge and the open face of a free pair.
    pub fn collapse(&self, edge: &Id, face: &Id) -> Result<TwoComplex, ComplexError> {
        if !self.edges.contains_key(edge) || !self.is_free(edge, face) {
            return Err(ComplexError::NotFree { edge: edge.clone(), face: face.clone() });
        }
        let mut out = self.clone();
        out.edges.remove(edge);
        out.faces.remove(face);
        Ok(out)
    }

    /// Number of edge ends at each vertex (a loop counts twice).
    pub fn degrees(&self) -> BTreeMap<&Id, usize> {
        let mut deg: BTreeMap<&Id, usize> = self.vertices.iter().map(|v| (v, 0)).collect();
        for ends in self.edges.values() {
            for end in [&ends.tail, &ends.head] {
                if let Some(d) = deg.get_mut(end) {
                    *d += 1;
                }
            }
        }
        deg
    }

    /// Removes a non-loop edge that lies in no face together with its
    /// endpoint `vertex`, which must have degree one.
    pub fn prune_leaf(&self, edge: &Id, vertex: &Id) -> Result<TwoComplex, ComplexError> {
        let not_leaf = || ComplexError::NotLeaf { edge: edge.clone(), vertex: vertex.clone() };
        let ends = self.edges.get(edge).ok_or_else(not_leaf)?;
        if ends.tail == ends.head || (&ends.tail != vertex && &ends.head != vertex) {
            return Err(not_leaf());
        }
        if self.degrees().get(vertex) != Some(&1) {
            return Err(not_leaf());
        }
        if self.faces.values().any(|w| w.occurrences(edge) > 0) {
            return Err(not_leaf());
        }
        let mut out = self.clone();
        out.edges.remove(edge);
        out.vertices.remove(vertex);
        Ok(out)
    }

    /// The 1-skeleton.
    pub fn one_skeleton(&self) -> TwoComplex {
        TwoComplex { vertices: self.vertices.clone(), edges: self.edges.clone(), faces: BTreeMap::new() }
    }

    /// The subcomplex consisting of the given faces, all edges and all vertices.
    pub fn with_faces<'a>(&self, keep: impl IntoIterator<Item = &'a Id>) -> TwoComplex {
        let keep: BTreeSet<&Id> = keep.into_iter().collect();
        TwoComplex {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            faces: self.faces.iter().filter(|(f, _)| keep.contains(f)).map(|(f, w)| (f.clone(), w.clone())).collect(),
        }
    }

    /// The subcomplex spanned by a set of cells; returns `None` if the set is
    /// not closed under taking boundaries or mentions unknown cells.
    pub fn subcomplex(&self, cells: &BTreeSet<Cell>) -> Option<TwoComplex> {
        let mut out = TwoComplex::new();
        for cell in cells {
            match cell {
                Cell::Vertex(v) => {
                    if !self.vertices.contains(v) {
                        return None;
                    }
                    out.vertices.insert(v.clone());
                }
                Cell::Edge(e) => {
                    let ends = self.edges.get(e)?;
                    if !cells.contains(&Cell::Vertex(ends.tail.clone()))
                        || !cells.contains(&Cell::Vertex(ends.head.clone()))
                    {
                        return None;
                    }
                    out.edges.insert(e.clone(), ends.clone());
                }
                Cell::Face(f) => {
                    let word = self.faces.get(f)?;
                    if word.letters().iter().any(|l| !cells.contains(&Cell::Edge(l.edge.clone()))) {
                        return None;
                    }
                    out.faces.insert(f.clone(), word.clone());
                }
            }
        }
        Some(out)
    }

    /// True when every cell of `self` is a cell of `other` with the same
    /// boundary data.
    pub fn is_subcomplex_of(&self, other: &TwoComplex) -> bool {
        self.vertices.iter().all(|v| other.vertices.contains(v))
            && self.edges.iter().all(|(e, ends)| other.edges.get(e) == Some(ends))
            && self.faces.iter().all(|(f, w)| other.faces.get(f) == Some(w))
    }

    /// Connected components of the 1-skeleton, each a sorted vertex list.
    pub fn components(&self) -> Vec<Vec<Id>> {
        let adjacency = self.adjacency();
        let mut seen: BTreeSet<&Id> = BTreeSet::new();
        let mut out = Vec::new();
        for start in &self.vertices {
            if seen.contains(start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                comp.push(v.clone());
                for (_, w) in adjacency.get(v).into_iter().flatten() {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// For each vertex the outgoing directed edges and their far endpoints,
    /// in sorted letter order.
    pub fn adjacency(&self) -> BTreeMap<&Id, Vec<(DirectedEdge, &Id)>> {
        let mut adj: BTreeMap<&Id, Vec<(DirectedEdge, &Id)>> =
            self.vertices.iter().map(|v| (v, Vec::new())).collect();
        for (e, ends) in &self.edges {
            if let Some(list) = adj.get_mut(&ends.tail) {
                list.push((DirectedEdge::plus(e.clone()), &ends.head));
            }
            if let Some(list) = adj.get_mut(&ends.head) {
                list.push((DirectedEdge::minus(e.clone()), &ends.tail));
            }
        }
        for list in adj.values_mut() {
            list.sort();
        }
        adj
    }

    /// Checks that a letter sequence is a walk starting at `start`; returns its end.
    pub fn walk_end(&self, start: &Id, letters: &[DirectedEdge]) -> Option<Id> {
        let mut at = start.clone();
        for l in letters {
            if self.tail(l)? != &at {
                return None;
            }
            at = self.head(l)?.clone();
        }
        Some(at)
    }

    /// True for a connected graph with `|E| = |V| - 1`.
    pub fn is_tree(&self) -> bool {
        self.faces.is_empty()
            && !self.vertices.is_empty()
            && self.edges.len() + 1 == self.vertices.len()
            && self.is_connected()
    }

    pub fn to_text(&self) -> String {
        text::write_complex(self)
    }

    pub fn from_text(s: &str) -> Result<TwoComplex, text::ParseError> {
        text::parse_complex(s)
    }

    pub(crate) fn insert_vertex_unchecked(&mut self, id: Id) {
        self.vertices.insert(id);
    }

    pub(crate) fn insert_edge_unchecked(&mut self, id: Id, tail: Id, head: Id) {
        self.edges.insert(id, Endpoints { tail, head });
    }

    pub(crate) fn insert_face_unchecked(&mut self, id: Id, word: AttachingWord) {
        self.faces.insert(id, word);
    }
}

fn checked_id(id: Id) -> Result<Id, ComplexError> {
    if id.is_well_formed() {
        Ok(id)
    } else {
        Err(ComplexError::MalformedId(id.as_str().to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn torus() -> TwoComplex {
        TwoComplex::from_text("vertex v\nedge a v v\nedge b v v\nface f a+ b+ a- b-\n").unwrap()
    }

    pub(crate) fn triangle() -> TwoComplex {
        TwoComplex::from_text(
            "vertex x\nvertex y\nvertex z\nedge e1 x y\nedge e2 y z\nedge e3 z x\nface f e1+ e2+ e3+\n",
        )
        .unwrap()
    }

    pub(crate) fn bigon_sphere() -> TwoComplex {
        TwoComplex::from_text(
            "vertex p\nvertex q\nedge e1 p q\nedge e2 p q\nface f1 e1+ e2-\nface f2 e1+ e2-\n",
        )
        .unwrap()
    }

    #[test]
    fn torus_is_valid() {
        assert!(torus().validate().is_valid());
        assert_eq!(torus().euler_characteristic(), 0);
    }

    #[test]
    fn broken_walk_is_reported_at_position() {
        let x = TwoComplex::from_text(
            "vertex x\nvertex y\nvertex z\nedge e1 x y\nedge e2 z x\nface f e1+ e2+\n",
        )
        .unwrap();
        let report = x.validate();
        assert!(!report.is_valid());
        let msgs: Vec<String> = report.violations.iter().map(|v| v.message.clone()).collect();
        assert!(msgs.contains(&"word not closed at position 1".to_string()), "{msgs:?}");
        assert_eq!(report.violations[0].cell, Some(Cell::Face(Id::new("f"))));
    }

    #[test]
    fn dangling_reference_is_reported() {
        let x = TwoComplex::from_text("vertex v\nedge a v v\nface f a+ zz+\n").unwrap();
        let report = x.validate();
        assert!(report.violations.iter().any(|v| v.message.starts_with("dangling reference")));
        let y = TwoComplex::from_text("vertex v\nedge a v w\n").unwrap();
        assert!(y.validate().violations.iter().any(|v| v.message.starts_with("dangling reference")));
    }

    #[test]
    fn empty_complex_is_invalid() {
        assert!(!TwoComplex::new().is_valid());
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(triangle().euler_characteristic(), 1);
        assert_eq!(bigon_sphere().euler_characteristic(), 2);
    }

    #[test]
    fn free_edges_examples() {
        assert_eq!(triangle().free_edges().len(), 3);
        assert!(torus().free_edges().is_empty());
        assert!(bigon_sphere().free_edges().is_empty());
    }

    #[test]
    fn collapse_triangle() {
        let t = triangle();
        let c = t.collapse(&Id::new("e1"), &Id::new("f")).unwrap();
        assert_eq!((c.num_vertices(), c.num_edges(), c.num_faces()), (3, 2, 0));
        assert_eq!(c.euler_characteristic(), 1);
        assert!(c.is_valid());
    }

    #[test]
    fn collapse_requires_free_pair() {
        let t = torus();
        for e in ["a", "b"] {
            assert!(matches!(t.collapse(&Id::new(e), &Id::new("f")), Err(ComplexError::NotFree { .. })));
        }
    }

    #[test]
    fn duplicate_ids_rejected() {
        let mut x = TwoComplex::new();
        x.add_vertex("v").unwrap();
        assert!(matches!(x.add_vertex("v"), Err(ComplexError::DuplicateId(_))));
        assert!(matches!(x.add_vertex("bad id"), Err(ComplexError::MalformedId(_))));
    }

    #[test]
    fn leaf_pruning() {
        let t = triangle().collapse(&Id::new("e1"), &Id::new("f")).unwrap();
        let p = t.prune_leaf(&Id::new("e2"), &Id::new("y")).unwrap();
        let q = p.prune_leaf(&Id::new("e3"), &Id::new("z")).unwrap();
        assert_eq!(q.num_vertices(), 1);
        assert_eq!(q.num_edges(), 0);
        assert!(t.prune_leaf(&Id::new("e2"), &Id::new("z")).is_err());
    }
}
